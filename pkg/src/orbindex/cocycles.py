"""The Hochschild cocycle on the Weyl algebra, twisted traces and their product.

Conventions
-----------
* Fixed-space generators are ordered ``y = (p_1, q_1, ..., p_k, q_k)``.
* ``alpha_ij`` carries a factor ``1/2``; the simplex is the ordered region
  ``0 <= u_1 <= ... <= u_2k <= 1`` with ``u_0 = 0``.
* ``tr_gamma`` lives on complex coordinates ``z_j`` with ``{z_j, zb_j} = 2i r_j``
  and ``gamma(z_j) = lam_j z_j``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, Iterable, Sequence

from .hochschild import HochschildChain, boundary_twisted, permutation_sign
from .scalars import CycloScalar, HbarSeries, as_scalar, cyclo_embed_root
from .symplectic import AdaptedForm, SymplecticMap
from .weyl import (COMPLEX, REAL, WeylElement, WeylSpace, hbar_bracket,
                   moyal_star)

__all__ = [
    "UPoly", "simplex_integrate", "simplex_monomial_oracle", "TensorSlot",
    "alpha_ij", "pi_2k", "tau_2k", "tau_2k_mono", "TwistedTraceData", "tr_gamma",
    "tau_twisted", "tau_twisted_mono", "TAU_HBAR_SCALE", "split_space",
    "h_quadratics", "cochain_coboundary",
]

#: Factor multiplying hbar inside the exponential of tau_2k.  It is pinned by
#: the cocycle condition against the star product of :mod:`orbindex.weyl`.
TAU_HBAR_SCALE = 2

_I = cyclo_embed_root(4, 1)
_ONE = CycloScalar.from_rational(1)


# ---------------------------------------------------------------------------
# polynomials in the simplex variables

class UPoly:
    """Polynomial in ``u_1..u_m`` with rational coefficients (``u_0 = 0``)."""

    __slots__ = ("m", "terms")

    def __init__(self, m: int, terms: dict | None = None):
        self.m = m
        self.terms = {k: Fraction(v) for k, v in (terms or {}).items() if v}

    @classmethod
    def const(cls, m: int, c) -> "UPoly":
        return cls(m, {(0,) * m: c})

    @classmethod
    def var(cls, m: int, i: int) -> "UPoly":
        """``u_i``; ``u_0`` is the zero polynomial."""
        if i == 0:
            return cls(m)
        e = [0] * m
        e[i - 1] = 1
        return cls(m, {tuple(e): 1})

    def __add__(self, other: "UPoly") -> "UPoly":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return UPoly(self.m, out)

    def __mul__(self, other):
        if not isinstance(other, UPoly):
            return UPoly(self.m, {k: v * other for k, v in self.terms.items()})
        out: dict = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                out[k] = out.get(k, 0) + v1 * v2
        return UPoly(self.m, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "UPoly":
        out = UPoly.const(self.m, 1)
        for _ in range(e):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, UPoly) and self.terms == other.terms

    def __repr__(self):
        return f"UPoly({self.terms})"


def simplex_integrate(poly: UPoly) -> Fraction:
    """Integral over ``0 <= u_1 <= ... <= u_m <= 1`` by nested antiderivatives.

    Integrating ``u_1`` from 0 to ``u_2``, then ``u_2`` from 0 to ``u_3`` and
    so on, each step substitutes the upper limit into the next variable.
    """
    m = poly.m
    cur = dict(poly.terms)
    for i in range(m):
        nxt: dict = {}
        for k, v in cur.items():
            e = k[i] + 1
            nk = list(k)
            nk[i] = 0
            if i + 1 < m:
                nk[i + 1] += e
            key = tuple(nk)
            nxt[key] = nxt.get(key, 0) + v / e
        cur = nxt
    return sum(cur.values(), Fraction(0))


def simplex_monomial_oracle(exponents: Sequence[int]) -> Fraction:
    """Closed form ``prod_j 1 / (j + a_1 + ... + a_j)``."""
    out = Fraction(1)
    s = 0
    for j, a in enumerate(exponents, start=1):
        s += a
        out /= j + s
    return out


# ---------------------------------------------------------------------------
# tensors with u-polynomial coefficients

def _mono_derivative(mono: tuple[int, ...], v: int):
    e = mono[v]
    if not e:
        return None, 0
    m = list(mono)
    m[v] -= 1
    return tuple(m), e


@dataclass
class TensorSlot:
    """``sum coeff(u) * hbar^h * m_0 (x) ... (x) m_{arity-1}`` over monomials."""

    space: WeylSpace
    arity: int
    terms: dict  # (monomial tuple, hbar power) -> UPoly

    @classmethod
    def from_chain(cls, c: HochschildChain, m: int) -> "TensorSlot":
        terms = {}
        for key, coeff in c.terms.items():
            if not coeff.is_rational():
                raise ValueError("tensor slots carry rational coefficients")
            terms[key] = UPoly.const(m, coeff.to_fraction())
        return cls(c.space, c.degree + 1, terms)

    @classmethod
    def from_tensor(cls, slots: Sequence[WeylElement], m: int) -> "TensorSlot":
        return cls.from_chain(HochschildChain.from_tensor(slots), m)

    def _add(self, out: dict, key, poly: UPoly):
        if key in out:
            s = out[key] + poly
            if s.is_zero():
                del out[key]
            else:
                out[key] = s
        elif not poly.is_zero():
            out[key] = poly

    def substitute(self, values: Sequence[Fraction]) -> HochschildChain:
        """Evaluate the u-coefficients at constants."""
        out = {}
        for key, poly in self.terms.items():
            v = Fraction(0)
            for k, c in poly.terms.items():
                t = c
                for x, e in zip(values, k):
                    t *= Fraction(x) ** e
                v += t
            if v:
                out[key] = v
        return HochschildChain(self.space, self.arity - 1, out)

    def is_zero(self) -> bool:
        return not self.terms


def _check_real_fixed(space: WeylSpace):
    if any(k != REAL for k in space.kinds) or any(s != 1 for s in space.scales):
        raise ValueError("expected a standard real space")


def alpha_ij(i: int, j: int, t: TensorSlot) -> TensorSlot:
    """``1/2 sum_l (d_{p_l} on slot i * d_{q_l} on slot j - d_{q_l} on i * d_{p_l} on j)``."""
    if i == j or not (0 <= i < t.arity and 0 <= j < t.arity):
        raise IndexError("slots must be distinct and within the arity")
    _check_real_fixed(t.space)
    n = t.space.n
    out: dict = {}
    half = Fraction(1, 2)
    for (monos, hp), poly in t.terms.items():
        for l in range(n):
            for vi, vj, sign in ((l, n + l, half), (n + l, l, -half)):
                mi, ei = _mono_derivative(monos[i], vi)
                if mi is None:
                    continue
                mj, ej = _mono_derivative(monos[j], vj)
                if mj is None:
                    continue
                new = list(monos)
                new[i] = mi
                new[j] = mj
                t._add(out, (tuple(new), hp), poly * (sign * ei * ej))
    return TensorSlot(t.space, t.arity, out)


def _y_index(space: WeylSpace, idx: int) -> int:
    """Generator slot of ``y_{idx+1}`` in the order ``p_1, q_1, p_2, q_2, ...``."""
    l, second = divmod(idx, 2)
    return space.n + l if second else l


def pi_2k(t: TensorSlot, k: int) -> TensorSlot:
    """Alternating sum of single derivatives ``d a_i / d y_sigma(i)``."""
    if t.arity != 2 * k + 1:
        raise ValueError("arity must be 2k + 1")
    _check_real_fixed(t.space)
    out: dict = {}
    for perm in itertools.permutations(range(2 * k)):
        sgn = permutation_sign(perm)
        for (monos, hp), poly in t.terms.items():
            new = [monos[0]]
            c = sgn
            for slot in range(1, 2 * k + 1):
                md, e = _mono_derivative(monos[slot], _y_index(t.space, perm[slot - 1]))
                if md is None:
                    break
                new.append(md)
                c *= e
            else:
                t._add(out, (tuple(new), hp), poly * c)
    return TensorSlot(t.space, t.arity, out)


# ---------------------------------------------------------------------------
# the cocycle tau_2k

@lru_cache(maxsize=None)
def _pair_weight(m: int, i: int, j: int) -> UPoly:
    """Coefficient ``A_ij`` of ``d_p(slot i) d_q(slot j)`` in ``sum w_ab alpha_ab``."""
    if i < j:
        w = UPoly.var(m, i) * 2 + UPoly.var(m, j) * (-2) + UPoly.const(m, 1)
        return w * Fraction(1, 2)
    w = UPoly.var(m, j) * 2 + UPoly.var(m, i) * (-2) + UPoly.const(m, 1)
    return w * Fraction(-1, 2)


@lru_cache(maxsize=None)
def _pair_weight_power(m: int, i: int, j: int, e: int) -> UPoly:
    return _pair_weight(m, i, j) ** e * Fraction(1, factorial(e))


def _contractions(m: int, a: tuple[int, ...], b: tuple[int, ...]) -> UPoly:
    """``sum_K prod A_ij^K_ij / K_ij!`` over tables with row sums a, column sums b, K_ii = 0."""
    slots = len(a)
    zero = UPoly(m)
    if sum(a) != sum(b):
        return zero
    result = [zero]

    def rec(i: int, remaining: list[int], acc: UPoly):
        if i == slots:
            if not any(remaining):
                result[0] = result[0] + acc
            return
        # distribute a[i] units of row i over columns j != i
        cols = [j for j in range(slots) if j != i and remaining[j]]

        def dist(ci: int, left: int, rem: list[int], acc2: UPoly):
            if left == 0:
                rec(i + 1, rem, acc2)
                return
            if ci == len(cols):
                return
            j = cols[ci]
            for t in range(min(left, rem[j]), -1, -1):
                if t:
                    rem2 = list(rem)
                    rem2[j] -= t
                    dist(ci + 1, left - t, rem2, acc2 * _pair_weight_power(m, i, j, t))
                else:
                    dist(ci + 1, left, rem, acc2)

        dist(0, a[i], remaining, acc)

    rec(0, list(b), UPoly.const(m, 1))
    return result[0]


@lru_cache(maxsize=200_000)
def tau_2k_mono(k: int, monos: tuple[tuple[int, ...], ...], scale: int = TAU_HBAR_SCALE
                ) -> tuple[Fraction, int]:
    """``tau_2k`` on a tensor of monomials over ``W_2k``: returns ``(c, M)`` meaning ``c hbar^M``."""
    if len(monos) != 2 * k + 1:
        raise ValueError("tau_2k needs 2k + 1 slots")
    total = sum(sum(m) for m in monos) - 2 * k
    if total < 0 or total % 2:
        return Fraction(0), 0
    M = total // 2
    m = 2 * k
    space = WeylSpace.real(k)
    t = pi_2k(TensorSlot(space, 2 * k + 1, {(monos, 0): UPoly.const(m, 1)}), k)
    integrand = UPoly(m)
    for (dm, _), poly in t.terms.items():
        prod = poly
        for l in range(k):
            a = tuple(x[l] for x in dm)
            b = tuple(x[k + l] for x in dm)
            fa = 1
            for e in a + b:
                fa *= factorial(e)
            c = _contractions(m, a, b)
            if c.is_zero():
                prod = UPoly(m)
                break
            prod = prod * c * fa
        integrand = integrand + prod
    return simplex_integrate(integrand) * Fraction(scale) ** M, M


def tau_2k(k: int, a: HochschildChain, scale: int = TAU_HBAR_SCALE) -> HbarSeries:
    """The Hochschild cocycle of degree ``2k`` on ``W_2k``."""
    _check_real_fixed(a.space)
    if a.space.n != k:
        raise ValueError("tau_2k takes chains over W_2k")
    if a.degree != 2 * k:
        raise ValueError("chain degree must be 2k")

    def f(monos):
        c, M = tau_2k_mono(k, monos, scale)
        return HbarSeries({M: c}) if c else HbarSeries()

    return a.evaluate(f)


# ---------------------------------------------------------------------------
# twisted trace

@dataclass(frozen=True)
class TwistedTraceData:
    """Normal eigenvalues ``lam_j`` (none equal to 1) and pair scales ``r_j``."""

    eigenvalues: tuple[CycloScalar, ...]
    scales: tuple[CycloScalar, ...] = ()

    def __post_init__(self):
        ev = tuple(as_scalar(x) for x in self.eigenvalues)
        object.__setattr__(self, "eigenvalues", ev)
        sc = tuple(as_scalar(x) for x in self.scales) if self.scales else tuple(_ONE for _ in ev)
        object.__setattr__(self, "scales", sc)
        if len(sc) != len(ev):
            raise ValueError("one scale per eigenvalue")
        for lam in ev:
            if lam == 1:
                raise ValueError("normal eigenvalue equal to 1")

    @classmethod
    def from_adapted(cls, form: AdaptedForm) -> "TwistedTraceData":
        return cls(tuple(form.normal_eigenvalues), tuple(form.scales))

    @property
    def cayley_diagonal(self) -> tuple[CycloScalar, ...]:
        return tuple((1 + lam.conj()) / (1 - lam.conj()) for lam in self.eigenvalues)

    @property
    def normalizer(self) -> CycloScalar:
        out = _ONE
        for lam in self.eigenvalues:
            out = out * (1 - lam.conj())
        return out.inverse()

    @property
    def exponent_constants(self) -> tuple[CycloScalar, ...]:
        """``c_j = -2i r_j kappa_j`` multiplying ``hbar d_z d_zb``."""
        return tuple(-2 * _I * r * kap for r, kap in zip(self.scales, self.cayley_diagonal))

    def normal_space(self) -> WeylSpace:
        return WeylSpace(tuple(COMPLEX for _ in self.eigenvalues), self.scales)

    def gamma(self, space: WeylSpace | None = None) -> SymplecticMap:
        """The twist on the normal space (or on a split space, identity on fixed pairs)."""
        space = space or self.normal_space()
        k = space.n - len(self.eigenvalues)
        return SymplecticMap.rotations(space, [None] * k + list(self.eigenvalues))


def _tr_mono(d: TwistedTraceData, consts: tuple, mono: tuple[int, ...]) -> tuple[CycloScalar, int]:
    m = len(consts)
    out = _ONE
    deg = 0
    for j in range(m):
        a, b = mono[j], mono[m + j]
        if a != b:
            return CycloScalar.from_rational(0), 0
        if a:
            out = out * consts[j] ** a * factorial(a)
            deg += a
    return out, deg


def tr_gamma(d: TwistedTraceData, a: WeylElement) -> HbarSeries:
    """``prod(1 - conj(lam_j))^-1 * const(exp(hbar sum c_j d_zj d_zbj) a)``."""
    sp = a.space
    if sp.kinds != tuple(COMPLEX for _ in d.eigenvalues):
        raise ValueError("tr_gamma takes elements in complex normal coordinates")
    if tuple(sp.scales) != tuple(d.scales):
        raise ValueError("pair scales do not match the trace data")
    consts = d.exponent_constants
    norm = d.normalizer
    out: dict[int, CycloScalar] = {}
    for (mono, hp), c in a.terms.items():
        v, deg = _tr_mono(d, consts, mono)
        if v.is_zero():
            continue
        e = hp + deg
        out[e] = out[e] + c * v if e in out else c * v
    return HbarSeries({e: c * norm for e, c in out.items()})


# ---------------------------------------------------------------------------
# external product

def split_space(k: int, d: TwistedTraceData) -> WeylSpace:
    """``W_2k (x) W_perp``: k real pairs then the complex normal pairs."""
    return WeylSpace(tuple([REAL] * k + [COMPLEX] * len(d.eigenvalues)),
                     tuple([_ONE] * k + list(d.scales)))


def _split_mono(mono: tuple[int, ...], n: int, k: int):
    fixed = mono[:k] + mono[n:n + k]
    normal = mono[k:n] + mono[n + k:]
    return fixed, normal


@lru_cache(maxsize=100_000)
def _normal_product_trace(d: TwistedTraceData, normals: tuple[tuple[int, ...], ...]) -> HbarSeries:
    sp = d.normal_space()
    prod = WeylElement.monomial(sp, normals[0])
    for m in normals[1:]:
        prod = moyal_star(prod, WeylElement.monomial(sp, m))
    return tr_gamma(d, prod)


def tau_twisted_mono(k: int, d: TwistedTraceData, monos: tuple[tuple[int, ...], ...],
                     scale: int = TAU_HBAR_SCALE) -> HbarSeries:
    n = k + len(d.eigenvalues)
    fixed, normal = zip(*(_split_mono(m, n, k) for m in monos))
    c, M = tau_2k_mono(k, tuple(fixed), scale)
    if not c:
        return HbarSeries()
    return _normal_product_trace(d, tuple(normal)) * HbarSeries({M: c})


def tau_twisted(k: int, d: TwistedTraceData, a: HochschildChain,
                scale: int = TAU_HBAR_SCALE) -> HbarSeries:
    """``tau_2k`` on fixed factors times ``tr_gamma`` of the star product of normal factors."""
    if a.space != split_space(k, d):
        raise ValueError("chain must live on the split space W_2k (x) W_perp")
    if a.degree != 2 * k:
        raise ValueError("chain degree must be 2k")
    return a.evaluate(lambda monos: tau_twisted_mono(k, d, monos, scale))


def cochain_coboundary(functional: Callable[[HochschildChain], HbarSeries],
                       slots: Sequence[WeylElement], g: SymplecticMap | None = None) -> HbarSeries:
    """``(b_g f)(a_0..a_{p+1}) = f(b_g(a_0..a_{p+1}))`` by duality with the chain boundary."""
    chain = HochschildChain.from_tensor(slots)
    return functional(boundary_twisted(chain, g))


def h_quadratics(k: int, d: TwistedTraceData) -> list[WeylElement]:
    """Monomial basis of the gamma-invariant quadratics on the split space."""
    sp = split_space(k, d)
    n = sp.n
    out = []
    fixed_vars = list(range(k)) + list(range(n, n + k))
    normal_vars = [v for v in range(2 * n) if v not in fixed_vars]

    def weight(v):
        j = v % n - k
        lam = d.eigenvalues[j]
        return lam if v < n else lam.conj()

    for a, b in itertools.combinations_with_replacement(fixed_vars, 2):
        mono = [0] * (2 * n)
        mono[a] += 1
        mono[b] += 1
        out.append(WeylElement.monomial(sp, mono))
    for a, b in itertools.combinations_with_replacement(normal_vars, 2):
        if weight(a) * weight(b) == 1:
            mono = [0] * (2 * n)
            mono[a] += 1
            mono[b] += 1
            out.append(WeylElement.monomial(sp, mono))
    return out
