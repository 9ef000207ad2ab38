"""Crossed product of the Weyl algebra by a finite symplectic group.

Elements are finite sums ``sum_g a_g delta_g`` and multiply by
``(a delta_g)(b delta_h) = (a * g(b)) delta_gh``.
"""
from __future__ import annotations

import random
from functools import lru_cache
from typing import Mapping

from .cocycles import TwistedTraceData, tr_gamma
from .scalars import HbarSeries
from .symplectic import FiniteSubgroup, SymplecticMap, fixed_decomposition
from .weyl import WeylElement, moyal_star, random_element

__all__ = ["CrossedElement", "crossed_mul", "SectorWeights", "sector_trace",
           "twisted_trace", "SectorError", "random_crossed"]


class SectorError(ValueError):
    """A trace weight sits on a sector without a polynomial trace."""


class CrossedElement:
    __slots__ = ("group", "components")

    def __init__(self, group: FiniteSubgroup, components: Mapping[SymplecticMap, WeylElement] | None = None):
        self.group = group
        clean = {}
        for g, a in (components or {}).items():
            group.index(g)  # raises KeyError outside the group
            if a.space != group.space:
                raise ValueError("component lives on another space")
            if not a.is_zero():
                clean[g] = a
        self.components = clean

    @classmethod
    def delta(cls, group: FiniteSubgroup, g: SymplecticMap, a: WeylElement | None = None) -> "CrossedElement":
        a = WeylElement.const(group.space) if a is None else a
        return cls(group, {g: a})

    @classmethod
    def unit(cls, group: FiniteSubgroup) -> "CrossedElement":
        return cls.delta(group, SymplecticMap.identity(group.space))

    def __add__(self, other: "CrossedElement") -> "CrossedElement":
        _same_group(self, other)
        out = dict(self.components)
        for g, a in other.components.items():
            out[g] = out[g] + a if g in out else a
        return CrossedElement(self.group, out)

    def __neg__(self):
        return CrossedElement(self.group, {g: -a for g, a in self.components.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "CrossedElement") -> "CrossedElement":
        return crossed_mul(self, other)

    def __eq__(self, other):
        if not isinstance(other, CrossedElement):
            return NotImplemented
        return self.components == other.components

    def __repr__(self):
        parts = [f"({a})d[{self.group.index(g)}]" for g, a in
                 sorted(self.components.items(), key=lambda kv: self.group.index(kv[0]))]
        return " + ".join(parts) or "0"


def _same_group(x: CrossedElement, y: CrossedElement):
    if x.group is not y.group and x.group.elements != y.group.elements:
        raise ValueError("crossed elements over different groups")


def crossed_mul(x: CrossedElement, y: CrossedElement) -> CrossedElement:
    _same_group(x, y)
    out: dict = {}
    for g, a in x.components.items():
        for h, b in y.components.items():
            p = moyal_star(a, g(b))
            gh = g @ h
            out[gh] = out[gh] + p if gh in out else p
    return CrossedElement(x.group, out)


@lru_cache(maxsize=256)
def _trace_data(g: SymplecticMap):
    form = fixed_decomposition(g)
    if form.k:
        raise SectorError(
            f"sector has a {2 * form.k}-dimensional fixed space; no polynomial trace exists there")
    return form, TwistedTraceData.from_adapted(form)


def twisted_trace(g: SymplecticMap, a: WeylElement) -> HbarSeries:
    """``tr_g`` on the original coordinates, through the adapted frame of ``g``."""
    form, d = _trace_data(g)
    return tr_gamma(d, form.to_adapted(a))


class SectorWeights:
    """Weights on conjugacy classes, stored per class representative."""

    def __init__(self, group: FiniteSubgroup, weights: Mapping[SymplecticMap, object]):
        self.group = group
        classes = group.conjugacy_classes()
        self._class_of = {g: i for i, c in enumerate(classes) for g in c}
        self.classes = classes
        w: dict[int, HbarSeries] = {}
        for g, v in weights.items():
            v = v if isinstance(v, HbarSeries) else HbarSeries.const(v)
            ci = self._class_of[g]
            if ci in w and w[ci] != v:
                raise ValueError("weights must be constant on conjugacy classes")
            if not v.is_zero():
                w[ci] = v
        for ci in w:
            _trace_data(classes[ci][0])  # rejects sectors with k > 0
        self.by_class = w

    def weight(self, g: SymplecticMap) -> HbarSeries:
        return self.by_class.get(self._class_of[g], HbarSeries())


def sector_trace(w: SectorWeights, x: CrossedElement) -> HbarSeries:
    """``sum_g w(<g>) tr_{g^-1}(x_g)``.

    With the left action in :func:`crossed_mul`, the component at ``g`` pairs
    with the trace twisted by ``g^-1``; this makes the functional a trace.
    """
    total = HbarSeries()
    for g, a in x.components.items():
        wt = w.weight(g)
        if wt.is_zero():
            continue
        total = total + wt * twisted_trace(g.inverse(), a)
    return total


def random_crossed(group: FiniteSubgroup, rng: random.Random, max_degree: int = 3,
                   n_terms: int = 3, level: int = 1) -> CrossedElement:
    comps = {}
    for g in group.elements:
        if rng.random() < 0.7:
            comps[g] = random_element(group.space, rng, max_degree=max_degree,
                                      n_terms=n_terms, level=level)
    return CrossedElement(group, comps)
