"""The formal Weyl algebra with the Moyal star product.

Generators come in ``n`` pairs.  A REAL pair is ``(p_i, q_i)`` with
``{p_i, q_i} = 1``; a COMPLEX pair is ``(z_i, zb_i)`` with
``{z_i, zb_i} = 2i * r_i`` (``r_i = 1`` for ``z = q + ip``).  Slot ``i`` of a
monomial exponent tuple is the first member of pair ``i`` and slot ``n + i``
the second, so ``(p_1..p_n, q_1..q_n)`` in the all-real case.

The star product is ``a * b = m(exp(hbar * alpha)(a (x) b))`` where
``alpha = sum_i c_i (d_x_i (x) d_y_i - d_y_i (x) d_x_i)``, giving
``p * q - q * p = 2 hbar``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Mapping

from .scalars import (CycloScalar, HbarSeries, as_scalar, cyclo_embed_root,
                      join_terms, render_term)

__all__ = [
    "REAL", "COMPLEX", "WeylSpace", "WeylElement", "BasisMismatchError",
    "moyal_star", "commutator", "hbar_bracket", "sp_derivation",
    "apply_linear", "to_complex_basis", "to_real_basis", "random_element",
]

REAL = "R"
COMPLEX = "C"

_ZERO = CycloScalar.from_rational(0)
_ONE = CycloScalar.from_rational(1)


class BasisMismatchError(ValueError):
    """Operands live on different generator sets."""


@dataclass(frozen=True)
class WeylSpace:
    """Generator layout: ``kinds[i]`` is REAL or COMPLEX, ``scales[i]`` the ``r_i``."""

    kinds: tuple[str, ...]
    scales: tuple[CycloScalar, ...] = ()

    def __post_init__(self):
        if not self.scales:
            object.__setattr__(self, "scales", tuple(_ONE for _ in self.kinds))
        if len(self.scales) != len(self.kinds):
            raise ValueError("one scale per pair")
        for k in self.kinds:
            if k not in (REAL, COMPLEX):
                raise ValueError(f"unknown pair kind {k!r}")

    @classmethod
    def real(cls, n: int) -> "WeylSpace":
        return cls(tuple(REAL for _ in range(n)))

    @property
    def n(self) -> int:
        return len(self.kinds)

    @property
    def nvars(self) -> int:
        return 2 * len(self.kinds)

    def pair_constant(self, i: int) -> CycloScalar:
        """The Poisson bracket of the two generators of pair ``i``."""
        if self.kinds[i] == REAL:
            return self.scales[i]
        return cyclo_embed_root(4, 1) * 2 * self.scales[i]

    def poisson(self, a: int, b: int) -> CycloScalar:
        n = self.n
        if a < n and b == a + n:
            return self.pair_constant(a)
        if b < n and a == b + n:
            return -self.pair_constant(b)
        return _ZERO

    def var_name(self, v: int) -> str:
        n = self.n
        i = v % n
        second = v >= n
        if self.kinds[i] == REAL:
            return f"{'q' if second else 'p'}{i + 1}"
        return f"{'zb' if second else 'z'}{i + 1}"

    def var_index(self, name: str) -> int:
        for v in range(self.nvars):
            if self.var_name(v) == name:
                return v
        raise KeyError(name)

    def zero_mono(self) -> tuple[int, ...]:
        return (0,) * self.nvars

    def key(self):
        return (self.kinds, tuple(self.pair_constant(i) for i in range(self.n)))


def _sort_key(item):
    (mono, hp), _ = item
    n = len(mono)
    # descending graded-lex on exponents, then ascending hbar power
    return (-sum(mono), tuple(-e for e in mono), hp)


class WeylElement:
    """Finite sum of ``c * hbar^k * monomial`` over a :class:`WeylSpace`.

    ``terms`` maps ``(exponent tuple, hbar power)`` to a nonzero CycloScalar.
    """

    __slots__ = ("space", "terms", "_hash")

    def __init__(self, space: WeylSpace, terms: Mapping | None = None):
        self.space = space
        clean = {}
        for key, c in (terms or {}).items():
            if not isinstance(c, CycloScalar):
                c = as_scalar(c)
            if not c.is_zero():
                clean[key] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, space, terms):
        obj = object.__new__(cls)
        obj.space = space
        obj.terms = terms
        obj._hash = None
        return obj

    # -- constructors ---------------------------------------------------------
    @classmethod
    def const(cls, space: WeylSpace, c=1, hpow: int = 0) -> "WeylElement":
        return cls(space, {(space.zero_mono(), hpow): c})

    @classmethod
    def from_hbar(cls, space: WeylSpace, s: HbarSeries) -> "WeylElement":
        z = space.zero_mono()
        return cls(space, {(z, e): c for e, c in s.terms.items()})

    @classmethod
    def gen(cls, space: WeylSpace, v: int | str) -> "WeylElement":
        if isinstance(v, str):
            v = space.var_index(v)
        mono = [0] * space.nvars
        mono[v] = 1
        return cls(space, {(tuple(mono), 0): 1})

    @classmethod
    def monomial(cls, space: WeylSpace, mono: Iterable[int], c=1, hpow: int = 0):
        return cls(space, {(tuple(mono), hpow): c})

    # -- inspection -------------------------------------------------------------
    @property
    def n(self) -> int:
        return self.space.n

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        """Maximal polynomial degree (-1 for zero)."""
        return max((sum(m) for (m, _) in self.terms), default=-1)

    def homogeneous_part(self, d: int) -> "WeylElement":
        return WeylElement._raw(self.space, {k: c for k, c in self.terms.items() if sum(k[0]) == d})

    def hbar_free(self) -> bool:
        return all(h == 0 for (_, h) in self.terms)

    def constant_term(self) -> HbarSeries:
        z = self.space.zero_mono()
        return HbarSeries({h: c for (m, h), c in self.terms.items() if m == z})

    def coefficient(self, mono: tuple[int, ...]) -> HbarSeries:
        return HbarSeries({h: c for (m, h), c in self.terms.items() if m == mono})

    def by_monomial(self) -> dict[tuple[int, ...], HbarSeries]:
        out: dict[tuple[int, ...], dict[int, CycloScalar]] = {}
        for (m, h), c in self.terms.items():
            out.setdefault(m, {})[h] = c
        return {m: HbarSeries(t) for m, t in out.items()}

    def variables_used(self) -> set[int]:
        return {v for (m, _) in self.terms for v, e in enumerate(m) if e}

    def level(self) -> int:
        from math import lcm
        out = 1
        for c in self.terms.values():
            out = lcm(out, c.level)
        return out

    # -- linear structure -------------------------------------------------------
    def _check(self, other: "WeylElement"):
        if self.space != other.space:
            raise BasisMismatchError("elements live on different generator sets")

    def __add__(self, other):
        if not isinstance(other, WeylElement):
            other = _lift_scalar(self.space, other)
            if other is NotImplemented:
                return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            if k in terms:
                s = terms[k] + c
                if s.is_zero():
                    del terms[k]
                else:
                    terms[k] = s
            else:
                terms[k] = c
        return WeylElement._raw(self.space, terms)

    __radd__ = __add__

    def __neg__(self):
        return WeylElement._raw(self.space, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, WeylElement):
            other = _lift_scalar(self.space, other)
            if other is NotImplemented:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "WeylElement":
        if isinstance(c, HbarSeries):
            out = WeylElement(self.space)
            for e, ce in c.terms.items():
                out = out + WeylElement._raw(
                    self.space, {(m, h + e): x * ce for (m, h), x in self.terms.items()})
            return out
        c = as_scalar(c)
        if c.is_zero():
            return WeylElement(self.space)
        return WeylElement._raw(self.space, {k: x * c for k, x in self.terms.items()})

    def shift_hbar(self, k: int) -> "WeylElement":
        return WeylElement._raw(self.space, {(m, h + k): c for (m, h), c in self.terms.items()})

    def __mul__(self, other):
        """Commutative polynomial product; scalars act by scaling."""
        if isinstance(other, WeylElement):
            self._check(other)
            out: dict = {}
            for (m1, h1), c1 in self.terms.items():
                for (m2, h2), c2 in other.terms.items():
                    key = (tuple(a + b for a, b in zip(m1, m2)), h1 + h2)
                    _acc(out, key, c1 * c2)
            return WeylElement(self.space, out)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __pow__(self, k: int):
        out = WeylElement.const(self.space)
        for _ in range(k):
            out = out * self
        return out

    def derivative(self, v: int) -> "WeylElement":
        out = {}
        for (m, h), c in self.terms.items():
            e = m[v]
            if e:
                mm = list(m)
                mm[v] -= 1
                out[(tuple(mm), h)] = c * e
        return WeylElement._raw(self.space, out)

    def conj(self) -> "WeylElement":
        """Conjugate coefficients only."""
        return WeylElement._raw(self.space, {k: c.conj() for k, c in self.terms.items()})

    # -- comparison ----------------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, WeylElement):
            other = _lift_scalar(self.space, other)
            if other is NotImplemented:
                return NotImplemented
        if self.space != other.space or self.terms.keys() != other.terms.keys():
            return False
        return all(self.terms[k] == other.terms[k] for k in self.terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset((k, hash(c)) for k, c in self.terms.items()))
        return self._hash

    # -- rendering -----------------------------------------------------------------
    def render(self, root: str = "z") -> str:
        """Canonical text; ``root`` names the primitive root of the coefficient field."""
        if not self.terms:
            return "0"
        pieces = []
        for (mono, hp), c in sorted(self.terms.items(), key=_sort_key):
            factors = []
            if hp:
                factors.append("h" if hp == 1 else f"h^{hp}")
            for v in _print_order(self.space):
                e = mono[v]
                if e:
                    name = self.space.var_name(v)
                    factors.append(name if e == 1 else f"{name}^{e}")
            pieces.append(render_term(c, factors, root))
        return join_terms(pieces)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"WeylElement({self.render()!r})"


def _print_order(space: WeylSpace) -> range:
    return range(space.nvars)


def _acc(d: dict, key, c: CycloScalar):
    if key in d:
        s = d[key] + c
        if s.is_zero():
            del d[key]
        else:
            d[key] = s
    elif not c.is_zero():
        d[key] = c


def _lift_scalar(space, x):
    if isinstance(x, HbarSeries):
        return WeylElement.from_hbar(space, x)
    try:
        return WeylElement.const(space, as_scalar(x))
    except TypeError:
        return NotImplemented


# ---------------------------------------------------------------------------
# star product

def _falling(a: int, s: int) -> int:
    out = 1
    for j in range(s):
        out *= a - j
    return out


@lru_cache(maxsize=200_000)
def _pair_expansion(c: CycloScalar, a: int, b: int, x: int, y: int):
    """exp(hbar c (dx (x) dy - dy (x) dx)) on (X^a Y^b) (x) (X^x Y^y).

    Returns tuples (exp of X, exp of Y, hbar power, coefficient).
    """
    out = []
    for s in range(min(a, y) + 1):
        fs = _falling(a, s) * _falling(y, s)
        for t in range(min(b, x) + 1):
            num = fs * _falling(b, t) * _falling(x, t)
            coef = Fraction(num * (-1) ** t, factorial(s) * factorial(t))
            out.append((a - s + x - t, b - t + y - s, s + t, c ** (s + t) * coef))
    return tuple(out)


@lru_cache(maxsize=500_000)
def _mono_star(consts: tuple[CycloScalar, ...], m1: tuple[int, ...], m2: tuple[int, ...]):
    n = len(consts)
    partial = {((), 0): _ONE}
    firsts: list = []
    for i in range(n):
        exp = _pair_expansion(consts[i], m1[i], m1[n + i], m2[i], m2[n + i])
        nxt: dict = {}
        for (prefix, hp), c in partial.items():
            for ex, ey, dh, cc in exp:
                key = (prefix + ((ex, ey),), hp + dh)
                v = c * cc
                nxt[key] = nxt[key] + v if key in nxt else v
        partial = nxt
    out = []
    for (pairs, hp), c in partial.items():
        if c.is_zero():
            continue
        mono = tuple(p[0] for p in pairs) + tuple(p[1] for p in pairs)
        out.append((mono, hp, c))
    return tuple(out)


def moyal_star(a: WeylElement, b: WeylElement) -> WeylElement:
    """Exact Moyal product ``a * b``."""
    if a.space != b.space:
        raise BasisMismatchError("star product of elements on different generator sets")
    space = a.space
    consts = tuple(space.pair_constant(i) for i in range(space.n))
    out: dict = {}
    for (m1, h1), c1 in a.terms.items():
        for (m2, h2), c2 in b.terms.items():
            c12 = c1 * c2
            for mono, hp, c in _mono_star(consts, m1, m2):
                _acc(out, (mono, hp + h1 + h2), c12 * c)
    return WeylElement._raw(space, out)


def commutator(a: WeylElement, b: WeylElement) -> WeylElement:
    return moyal_star(a, b) - moyal_star(b, a)


def hbar_bracket(a: WeylElement, b: WeylElement) -> WeylElement:
    """``(a*b - b*a) / (2 hbar)``; equals the Poisson bracket on quadratics."""
    return commutator(a, b).shift_hbar(-1).scale(Fraction(1, 2))


def sp_derivation(h: WeylElement, a: WeylElement) -> WeylElement:
    """Action of a quadratic Hamiltonian by the normalized commutator."""
    if h.is_zero():
        return WeylElement(a.space)
    if not h.hbar_free() or any(sum(m) != 2 for (m, _) in h.terms):
        raise ValueError("sp_derivation needs an hbar-free homogeneous quadratic")
    return hbar_bracket(h, a)


# ---------------------------------------------------------------------------
# linear changes of generators

def apply_linear(a: WeylElement, images: list[WeylElement], target: WeylSpace | None = None) -> WeylElement:
    """Substitute generator ``v`` by the linear form ``images[v]``."""
    target = target or a.space
    if len(images) != a.space.nvars:
        raise ValueError("one image per generator")
    lin = []
    for im in images:
        if im.space != target:
            raise BasisMismatchError("images must live on the target space")
        lin.append(im)
    powers: dict[tuple[int, int], WeylElement] = {}

    def pw(v, e):
        if (v, e) not in powers:
            powers[(v, e)] = WeylElement.const(target) if e == 0 else pw(v, e - 1) * lin[v]
        return powers[(v, e)]

    out = WeylElement(target)
    for (m, h), c in a.terms.items():
        t = WeylElement.const(target, c, h)
        for v, e in enumerate(m):
            if e:
                t = t * pw(v, e)
        out = out + t
    return out


def to_complex_basis(a: WeylElement, pairs: Iterable[int]) -> WeylElement:
    """Rewrite real pairs ``i`` in ``pairs`` via ``z = q + ip``, ``zb = q - ip``."""
    pairs = set(pairs)
    sp = a.space
    for i in pairs:
        if sp.kinds[i] != REAL:
            raise ValueError(f"pair {i + 1} is not real")
        if sp.scales[i] != 1:
            raise ValueError("only unit-scale real pairs convert")
    kinds = tuple(COMPLEX if i in pairs else k for i, k in enumerate(sp.kinds))
    target = WeylSpace(kinds, sp.scales)
    n = sp.n
    i_ = cyclo_embed_root(4, 1)
    images = []
    for v in range(sp.nvars):
        j = v % n
        if j not in pairs:
            images.append(WeylElement.gen(target, v))
            continue
        z = WeylElement.gen(target, j)
        zb = WeylElement.gen(target, n + j)
        if v < n:  # p = (z - zb) / (2i)
            images.append((z - zb).scale((2 * i_).inverse()))
        else:  # q = (z + zb) / 2
            images.append((z + zb).scale(Fraction(1, 2)))
    return apply_linear(a, images, target)


def to_real_basis(a: WeylElement, pairs: Iterable[int]) -> WeylElement:
    """Inverse of :func:`to_complex_basis`."""
    pairs = set(pairs)
    sp = a.space
    for i in pairs:
        if sp.kinds[i] != COMPLEX or sp.scales[i] != 1:
            raise ValueError(f"pair {i + 1} is not a unit complex pair")
    kinds = tuple(REAL if i in pairs else k for i, k in enumerate(sp.kinds))
    target = WeylSpace(kinds, sp.scales)
    n = sp.n
    i_ = cyclo_embed_root(4, 1)
    images = []
    for v in range(sp.nvars):
        j = v % n
        if j not in pairs:
            images.append(WeylElement.gen(target, v))
            continue
        p = WeylElement.gen(target, j)
        q = WeylElement.gen(target, n + j)
        images.append(q + p.scale(i_) if v < n else q - p.scale(i_))
    return apply_linear(a, images, target)


# ---------------------------------------------------------------------------
# sampling

def monomials_of_degree(nvars: int, d: int):
    """All exponent tuples of total degree ``d`` in ``nvars`` variables."""
    if nvars == 0:
        if d == 0:
            yield ()
        return
    for e in range(d, -1, -1):
        for rest in monomials_of_degree(nvars - 1, d - e):
            yield (e,) + rest


def count_monomials(nvars: int, d: int) -> int:
    if nvars == 0:
        return 1 if d == 0 else 0
    return comb(d + nvars - 1, nvars - 1)


def random_element(space: WeylSpace, rng: random.Random, max_degree: int = 3,
                   n_terms: int = 4, level: int = 1, max_hbar: int = 1,
                   variables: Iterable[int] | None = None) -> WeylElement:
    """Sparse random element with small rational (or cyclotomic) coefficients."""
    vars_ = list(variables) if variables is not None else list(range(space.nvars))
    out = {}
    for _ in range(n_terms):
        d = rng.randint(0, max_degree)
        mono = [0] * space.nvars
        for _ in range(d):
            mono[rng.choice(vars_)] += 1
        hp = rng.randint(0, max_hbar)
        coeffs = {0: Fraction(rng.randint(-5, 5), rng.randint(1, 3))}
        if level > 1:
            coeffs[rng.randrange(level)] = Fraction(rng.randint(-3, 3))
        out[(tuple(mono), hp)] = CycloScalar(level, coeffs)
    return WeylElement(space, out)
