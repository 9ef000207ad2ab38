"""Twisted Hochschild chains over the Weyl algebra and twisted Koszul homology."""
from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb
from typing import Callable, Iterable, Mapping, Sequence

from . import linalg as la
from .scalars import CycloScalar, HbarSeries, as_scalar
from .symplectic import SymplecticMap
from .weyl import (WeylElement, WeylSpace, count_monomials, monomials_of_degree,
                   moyal_star)

__all__ = [
    "HochschildChain", "boundary_twisted", "cycle_c2k", "permutation_sign",
    "koszul_twisted_hh", "koszul_boundaries", "hkr_oracle",
]

_ZERO = CycloScalar.from_rational(0)


def permutation_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


class HochschildChain:
    """Linear combination of tensors ``a_0 (x) ... (x) a_p`` of Weyl monomials.

    Stored in normal form: ``(monomial tuple, hbar power) -> scalar``, so
    equal chains have equal term maps.
    """

    __slots__ = ("space", "degree", "terms")

    def __init__(self, space: WeylSpace, degree: int, terms: Mapping | None = None):
        self.space = space
        self.degree = degree
        self.terms = {k: as_scalar(c) for k, c in (terms or {}).items() if not as_scalar(c).is_zero()}

    @classmethod
    def from_tensor(cls, slots: Sequence[WeylElement], scalar=1) -> "HochschildChain":
        """Multilinear expansion of a single tensor ``scalar * a_0 (x) ... (x) a_p``."""
        if not slots:
            raise ValueError("a chain needs at least one slot")
        space = slots[0].space
        for s in slots:
            if s.space != space:
                raise ValueError("slots live on different spaces")
        scalar = as_scalar(scalar)
        out: dict = {}
        for combo in itertools.product(*[list(s.terms.items()) for s in slots]):
            monos = tuple(k[0] for k, _ in combo)
            hp = sum(k[1] for k, _ in combo)
            c = scalar
            for _, x in combo:
                c = c * x
            key = (monos, hp)
            out[key] = out[key] + c if key in out else c
        return cls(space, len(slots) - 1, out)

    def __add__(self, other: "HochschildChain") -> "HochschildChain":
        if other.degree != self.degree or other.space != self.space:
            raise ValueError("chains of different degree or space")
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return HochschildChain(self.space, self.degree, out)

    def __neg__(self):
        return HochschildChain(self.space, self.degree, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "HochschildChain":
        c = as_scalar(c)
        return HochschildChain(self.space, self.degree, {k: x * c for k, x in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def normalized(self) -> "HochschildChain":
        """Image in the normalized complex: drop tensors with a constant slot ``a_i``, ``i >= 1``."""
        out = {k: c for k, c in self.terms.items() if all(any(m) for m in k[0][1:])}
        return HochschildChain(self.space, self.degree, out)

    def __eq__(self, other):
        if not isinstance(other, HochschildChain):
            return NotImplemented
        if self.degree != other.degree or self.terms.keys() != other.terms.keys():
            return False
        return all(self.terms[k] == other.terms[k] for k in self.terms)

    def __len__(self):
        return len(self.terms)

    def summands(self) -> Iterable[tuple[CycloScalar, int, tuple[WeylElement, ...]]]:
        """Yield ``(scalar, hbar power, slots)`` with monomial slots."""
        for (monos, hp), c in self.terms.items():
            yield c, hp, tuple(WeylElement.monomial(self.space, m) for m in monos)

    def evaluate(self, functional: Callable[[tuple[tuple[int, ...], ...]], HbarSeries]) -> HbarSeries:
        """Apply a multilinear functional given on monomial tuples."""
        total = HbarSeries()
        for (monos, hp), c in self.terms.items():
            v = functional(monos)
            if not v.is_zero():
                total = total + v.shift(hp) * c
        return total

    def __repr__(self):
        return f"HochschildChain(degree={self.degree}, terms={len(self.terms)})"


def boundary_twisted(c: HochschildChain, g: SymplecticMap | None = None,
                     normalized: bool = False) -> HochschildChain:
    """Twisted Hochschild boundary.

    ``b(a_0..a_p) = sum_{i<p} (-1)^i (.. a_i * a_{i+1} ..) + (-1)^p g(a_p) * a_0 (x) a_1 .. a_{p-1}``

    With ``normalized=True`` the result is reduced modulo degenerate tensors,
    which is where ``c_2k`` is a cycle.
    """
    p = c.degree
    space = c.space
    if p == 0:
        return HochschildChain(space, -1)
    if g is not None and g.space != space:
        raise ValueError("twist acts on a different space")
    out = HochschildChain(space, p - 1)
    acc: dict = {}
    for (monos, hp), coeff in c.terms.items():
        slots = [WeylElement.monomial(space, m) for m in monos]
        for i in range(p):
            prod = moyal_star(slots[i], slots[i + 1])
            new = slots[:i] + [prod] + slots[i + 2:]
            _accumulate(acc, new, coeff * (-1) ** i, hp)
        last = slots[p] if g is None else g(slots[p])
        new = [moyal_star(last, slots[0])] + slots[1:p]
        _accumulate(acc, new, coeff * (-1) ** p, hp)
    out.terms = {k: v for k, v in acc.items() if not v.is_zero()}
    return out.normalized() if normalized else out


def _accumulate(acc: dict, slots: list[WeylElement], coeff: CycloScalar, hp: int):
    if any(s.is_zero() for s in slots):
        return
    for combo in itertools.product(*[list(s.terms.items()) for s in slots]):
        monos = tuple(k[0] for k, _ in combo)
        h = hp + sum(k[1] for k, _ in combo)
        c = coeff
        for _, x in combo:
            c = c * x
        key = (monos, h)
        acc[key] = acc[key] + c if key in acc else c


def fixed_generators(space: WeylSpace, k: int) -> list[WeylElement]:
    """``y_1..y_2k = p_1, q_1, ..., p_k, q_k`` on the first ``k`` pairs."""
    n = space.n
    out = []
    for i in range(k):
        out.append(WeylElement.gen(space, i))
        out.append(WeylElement.gen(space, n + i))
    return out


def cycle_c2k(k: int, space: WeylSpace | None = None) -> HochschildChain:
    """``sum_sigma sgn(sigma) 1 (x) y_sigma(1) (x) ... (x) y_sigma(2k)``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    space = space or WeylSpace.real(k)
    ys = fixed_generators(space, k)
    one = WeylElement.const(space)
    out = HochschildChain(space, 2 * k)
    acc: dict = {}
    for perm in itertools.permutations(range(2 * k)):
        sgn = permutation_sign(perm)
        monos = (one,) + tuple(ys[j] for j in perm)
        key = (tuple(next(iter(s.terms))[0] for s in monos), 0)
        acc[key] = CycloScalar.from_rational(sgn)
    out.terms = acc
    return out


# ---------------------------------------------------------------------------
# twisted Koszul complex of the commutative polynomial algebra

def _koszul_basis(nvars: int, p: int, d: int):
    if p > nvars or d < p:
        return []
    return [(m, s) for m in monomials_of_degree(nvars, d - p)
            for s in itertools.combinations(range(nvars), p)]


def koszul_boundaries(g: SymplecticMap, p: int, d: int) -> tuple[list, list, list[dict]]:
    """Boundary from exterior degree ``p`` to ``p-1`` at internal degree ``d``.

    ``d(m e_S) = sum_j (-1)^j (y_{S_j} - g(y_{S_j})) m e_{S - S_j}``.
    Returns source basis, target basis and sparse rows (one per source).
    """
    nv = g.space.nvars
    src = _koszul_basis(nv, p, d)
    tgt = _koszul_basis(nv, p - 1, d) if p >= 1 else []
    index = {b: i for i, b in enumerate(tgt)}
    # linear form y_i - g(y_i): coefficients over generators
    lin = []
    for i in range(nv):
        form = {}
        for l in range(nv):
            c = (1 if l == i else 0) - g.matrix[l][i]
            if not as_scalar(c).is_zero():
                form[l] = as_scalar(c)
        lin.append(form)
    rows = []
    for mono, subset in src:
        row: dict[int, CycloScalar] = {}
        for j, i in enumerate(subset):
            rest = subset[:j] + subset[j + 1:]
            sign = -1 if j % 2 else 1
            for l, c in lin[i].items():
                m2 = list(mono)
                m2[l] += 1
                t = index[(tuple(m2), rest)]
                v = row.get(t, _ZERO) + c * sign
                if v.is_zero():
                    row.pop(t, None)
                else:
                    row[t] = v
        rows.append(row)
    return src, tgt, rows


def koszul_twisted_hh(g: SymplecticMap, degree_bound: int) -> dict[tuple[int, int], int]:
    """Homology dimensions ``(exterior degree p, internal degree d) -> dim``."""
    nv = g.space.nvars
    out = {}
    for d in range(degree_bound + 1):
        ranks = {}
        dims = {}
        for p in range(0, nv + 1):
            src, _, rows = koszul_boundaries(g, p, d)
            dims[p] = len(src)
            ranks[p] = la.sparse_rank(rows) if p >= 1 and rows else 0
        ranks[nv + 1] = 0
        for p in range(0, nv + 1):
            h = dims[p] - ranks[p] - ranks[p + 1]
            if h:
                out[(p, d)] = h
    return out


def hkr_oracle(k: int, degree_bound: int) -> dict[tuple[int, int], int]:
    """``dim Omega^p`` in internal degree ``d`` for polynomials in ``2k`` variables."""
    out = {}
    for d in range(degree_bound + 1):
        for p in range(0, min(2 * k, d) + 1):
            v = comb(2 * k, p) * count_monomials(2 * k, d - p)
            if v:
                out[(p, d)] = v
    return out
