"""Lie-algebra cochains built from the twisted cocycle, and Chern-Weil evaluation.

Matrix-valued Weyl elements are sparse ``(i, j) -> WeylElement`` maps over the
split space ``W_2k (x) W_perp`` of :func:`orbindex.cocycles.split_space`.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable, Mapping, Sequence

from .cocycles import (TwistedTraceData, split_space, tau_twisted, tr_gamma)
from .hochschild import HochschildChain, permutation_sign
from .scalars import (CycloScalar, HbarSeries, TruncSeries, as_scalar,
                      series_exp, series_log)
from .weyl import WeylElement, WeylSpace, commutator, hbar_bracket, moyal_star

__all__ = [
    "MatrixWeyl", "LieCochain", "CartanElement", "phi_N", "theta_cocycle", "theta_V",
    "projection_pr", "curvature_C", "chern_weil_chi", "generating_S", "invariant_P",
    "lie_coboundary", "verify_local_rr", "LocalRRReport", "UnsupportedError",
    "rr_arguments", "AHAT_EXPONENT",
]

#: Power applied to ``det(g(hbar X_1))`` with ``g(x) = (x/2)/sinh(x/2)``.
AHAT_EXPONENT = Fraction(1, 2)
#: ``X_1`` acts on fixed linear forms by ``y -> (X_1 * y - y * X_1) / hbar``,
#: i.e. twice the bracket ``[X_1, y]_hbar``.  Pinned by the k = 2 local
#: Riemann-Roch check.
AD_SCALE = 2

_ZERO = CycloScalar.from_rational(0)


class UnsupportedError(ValueError):
    """Requested size is outside the supported range."""


# ---------------------------------------------------------------------------
# matrices over the Weyl algebra

class MatrixWeyl:
    """An ``N x N`` matrix with Weyl-algebra entries."""

    __slots__ = ("space", "N", "entries")

    def __init__(self, space: WeylSpace, N: int, entries: Mapping | None = None):
        self.space = space
        self.N = N
        clean = {}
        for (i, j), a in (entries or {}).items():
            if not (0 <= i < N and 0 <= j < N):
                raise IndexError("matrix index out of range")
            if a.space != space:
                raise ValueError("entry lives on another space")
            if not a.is_zero():
                clean[(i, j)] = a
        self.entries = clean

    @classmethod
    def scalar(cls, a: WeylElement, N: int) -> "MatrixWeyl":
        """``a`` times the identity matrix."""
        return cls(a.space, N, {(i, i): a for i in range(N)})

    @classmethod
    def identity(cls, space: WeylSpace, N: int) -> "MatrixWeyl":
        return cls.scalar(WeylElement.const(space), N)

    @classmethod
    def unit(cls, a: WeylElement, N: int, i: int, j: int) -> "MatrixWeyl":
        """``a`` placed at entry ``(i, j)``; with ``i == j == r`` this is ``a (x) E_r``."""
        return cls(a.space, N, {(i, j): a})

    @classmethod
    def from_constant_matrix(cls, space: WeylSpace, m: Sequence[Sequence]) -> "MatrixWeyl":
        N = len(m)
        ent = {}
        for i in range(N):
            for j in range(N):
                c = m[i][j]
                e = WeylElement.from_hbar(space, c) if isinstance(c, HbarSeries) \
                    else WeylElement.const(space, as_scalar(c))
                ent[(i, j)] = e
        return cls(space, N, ent)

    def _check(self, other: "MatrixWeyl"):
        if self.N != other.N or self.space != other.space:
            raise ValueError("matrix size or space mismatch")

    def __add__(self, other: "MatrixWeyl") -> "MatrixWeyl":
        self._check(other)
        out = dict(self.entries)
        for k, a in other.entries.items():
            out[k] = out[k] + a if k in out else a
        return MatrixWeyl(self.space, self.N, out)

    def __neg__(self):
        return MatrixWeyl(self.space, self.N, {k: -a for k, a in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "MatrixWeyl":
        return MatrixWeyl(self.space, self.N, {k: a.scale(c) for k, a in self.entries.items()})

    def map_entries(self, f: Callable[[WeylElement], WeylElement]) -> "MatrixWeyl":
        return MatrixWeyl(self.space, self.N, {k: f(a) for k, a in self.entries.items()})

    def star(self, other: "MatrixWeyl") -> "MatrixWeyl":
        """Matrix product with star-multiplied entries."""
        self._check(other)
        out: dict = {}
        by_row: dict[int, list] = {}
        for (j, l), b in other.entries.items():
            by_row.setdefault(j, []).append((l, b))
        for (i, j), a in self.entries.items():
            for l, b in by_row.get(j, ()):
                p = moyal_star(a, b)
                out[(i, l)] = out[(i, l)] + p if (i, l) in out else p
        return MatrixWeyl(self.space, self.N, out)

    def commutator(self, other: "MatrixWeyl") -> "MatrixWeyl":
        return self.star(other) - other.star(self)

    def bracket(self, other: "MatrixWeyl") -> "MatrixWeyl":
        """``[x, y]_hbar = (x*y - y*x) / 2hbar``."""
        return self.commutator(other).map_entries(lambda a: a.shift_hbar(-1).scale(Fraction(1, 2)))

    def trace(self) -> WeylElement:
        out = WeylElement(self.space)
        for i in range(self.N):
            if (i, i) in self.entries:
                out = out + self.entries[(i, i)]
        return out

    def homogeneous_part(self, d: int) -> "MatrixWeyl":
        return self.map_entries(lambda a: a.homogeneous_part(d))

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other):
        if not isinstance(other, MatrixWeyl):
            return NotImplemented
        if self.N != other.N or self.entries.keys() != other.entries.keys():
            return False
        return all(self.entries[k] == other.entries[k] for k in self.entries)

    def __repr__(self):
        body = ", ".join(f"[{i + 1},{j + 1}]: {a}" for (i, j), a in sorted(self.entries.items()))
        return f"MatrixWeyl(N={self.N}; {body})"


# ---------------------------------------------------------------------------
# Lie cochains from Hochschild cochains

@dataclass
class LieCochain:
    """Alternating functional of ``degree`` matrix arguments with values in the dual module."""

    degree: int
    evaluator: Callable[[Sequence[MatrixWeyl], MatrixWeyl], HbarSeries]

    def __call__(self, args: Sequence[MatrixWeyl], x0: MatrixWeyl) -> HbarSeries:
        if len(args) != self.degree:
            raise ValueError(f"expected {self.degree} arguments")
        return self.evaluator(list(args), x0)

    def ev1(self, args: Sequence[MatrixWeyl]) -> HbarSeries:
        """Evaluation at the identity matrix."""
        x = args[0] if args else None
        if x is None:
            raise ValueError("ev1 needs the matrix size from an argument")
        return self(args, MatrixWeyl.identity(x.space, x.N))


def _trace_chains(mats: Sequence[MatrixWeyl]):
    """All ``(a_0, ..., a_m)`` with ``a_s = mats[s][i_s, i_{s+1}]`` and ``i_{m+1} = i_0``."""
    by_row = [dict() for _ in mats]
    for s, m in enumerate(mats):
        for (i, j), a in m.entries.items():
            by_row[s].setdefault(i, []).append((j, a))

    def rec(s, start, cur, acc):
        if s == len(mats):
            if cur == start:
                yield tuple(acc)
            return
        for j, a in by_row[s].get(cur, ()):
            yield from rec(s + 1, start, j, acc + [a])

    for (i, j), a in mats[0].entries.items():
        yield from rec(1, i, j, [a])


def phi_N(tau: Callable[[HochschildChain], HbarSeries], args: Sequence[MatrixWeyl],
          x0: MatrixWeyl) -> HbarSeries:
    """``sum_sigma sgn(sigma) tau(tr(x0 (x) x_sigma(1) (x) ...))`` with the matrix trace
    taken around the whole tensor (index chains ``x0[i0,i1] (x) x1[i1,i2] ...``)."""
    m = len(args)
    total = HbarSeries()
    for perm in itertools.permutations(range(m)):
        sgn = permutation_sign(perm)
        mats = [x0] + [args[j] for j in perm]
        chain = None
        for slots in _trace_chains(mats):
            c = HochschildChain.from_tensor(slots)
            chain = c if chain is None else chain + c
        if chain is None:
            continue
        v = tau(chain)
        if not v.is_zero():
            total = total + v * sgn
    return total


def theta_cocycle(k: int, d: TwistedTraceData, N: int) -> LieCochain:
    """``phi_N`` applied to the twisted cocycle of degree 2k."""
    space = split_space(k, d)

    def tau(chain):
        return tau_twisted(k, d, chain)

    def ev(args, x0):
        for a in list(args) + [x0]:
            if a.N != N or a.space != space:
                raise ValueError("argument size or space mismatch")
        return phi_N(tau, args, x0)

    return LieCochain(2 * k, ev)


def theta_V(k: int, d: TwistedTraceData, gamma_matrix: Sequence[Sequence]) -> LieCochain:
    """The cocycle twisted by a representation ``V``: the matrix trace becomes
    ``tr_V(G M_0 M_1 ...)`` for the action matrix ``G`` of the generator."""
    G = [[as_scalar(x) for x in row] for row in gamma_matrix]
    N = len(G)
    _check_finite_order(G)
    base = theta_cocycle(k, d, N)
    space = split_space(k, d)
    Gm = MatrixWeyl.from_constant_matrix(space, G)

    def ev(args, x0):
        return base.evaluator(args, Gm.star(x0))

    return LieCochain(2 * k, ev)


def _check_finite_order(G, limit: int = 720):
    from . import linalg as la
    ident = la.identity(len(G))
    cur = G
    for _ in range(limit):
        if la.mat_eq(cur, ident):
            return
        cur = la.mat_mul(cur, G)
    raise ValueError("representation matrix is not of finite order")


def module_action(x: MatrixWeyl, f_at: Callable[[MatrixWeyl], HbarSeries], x0: MatrixWeyl,
                  gamma: Callable[[WeylElement], WeylElement]) -> HbarSeries:
    """``(x . f)(x0) = f(x0 * x - gamma(x) * x0)`` on the twisted dual module."""
    return f_at(x0.star(x) - x.map_entries(gamma).star(x0))


def lie_coboundary(f: LieCochain, args: Sequence[MatrixWeyl], x0: MatrixWeyl,
                   gamma: Callable[[WeylElement], WeylElement]) -> HbarSeries:
    """Chevalley-Eilenberg coboundary with the plain commutator bracket."""
    m = len(args)
    total = HbarSeries()
    for i in range(m):
        rest = args[:i] + args[i + 1:]
        v = module_action(args[i], lambda y: f(rest, y), x0, gamma)
        total = total + v * (-1) ** i
    for i in range(m):
        for j in range(i + 1, m):
            br = args[i].commutator(args[j])
            rest = [br] + [a for t, a in enumerate(args) if t not in (i, j)]
            total = total + f(rest, x0) * (-1) ** (i + j)
    return total


# ---------------------------------------------------------------------------
# Chern-Weil data

def projection_pr(x: MatrixWeyl) -> MatrixWeyl:
    """``pr(M a) = tr(M)/N * a_2 + M a_0`` extended linearly."""
    quad = x.trace().homogeneous_part(2).scale(Fraction(1, x.N))
    return MatrixWeyl.scalar(quad, x.N) + x.homogeneous_part(0)


def curvature_C(u: MatrixWeyl, v: MatrixWeyl) -> MatrixWeyl:
    """``[pr u, pr v]_hbar - pr([u, v]_hbar)``."""
    return projection_pr(u).bracket(projection_pr(v)) - projection_pr(u.bracket(v))


def chern_weil_chi(P: Callable[..., HbarSeries], args: Sequence[MatrixWeyl]) -> HbarSeries:
    """``(1/q!) sum sgn(sigma) P(C(v_s1, v_s2), ...)`` over ``sigma(2i-1) < sigma(2i)``."""
    if len(args) % 2:
        raise ValueError("chi needs an even number of arguments")
    q = len(args) // 2
    cache: dict[tuple[int, int], MatrixWeyl] = {}

    def C(a, b):
        if (a, b) not in cache:
            cache[(a, b)] = curvature_C(args[a], args[b])
        return cache[(a, b)]

    total = HbarSeries()
    for perm in itertools.permutations(range(2 * q)):
        if any(perm[2 * i] > perm[2 * i + 1] for i in range(q)):
            continue
        curv = [C(perm[2 * i], perm[2 * i + 1]) for i in range(q)]
        if any(c.is_zero() for c in curv):
            continue
        v = P(*curv)
        if not v.is_zero():
            total = total + v * permutation_sign(perm)
    return total * Fraction(1, factorial(q))


@dataclass
class CartanElement:
    """``sum nu_i q_i p_i + sum tau_j z_j zb_j + sum sigma_r E_r``."""

    nu: Sequence
    tau: Sequence
    sigma: Sequence

    def to_matrix(self, k: int, d: TwistedTraceData) -> MatrixWeyl:
        space = split_space(k, d)
        n = space.n
        N = len(self.sigma)
        quad = WeylElement(space)
        for i, v in enumerate(self.nu):
            quad = quad + (WeylElement.gen(space, n + i) * WeylElement.gen(space, i)).scale(v)
        for j, t in enumerate(self.tau):
            quad = quad + (WeylElement.gen(space, k + j) * WeylElement.gen(space, n + k + j)).scale(t)
        out = MatrixWeyl.scalar(quad, N)
        for r, s in enumerate(self.sigma):
            out = out + MatrixWeyl.unit(WeylElement.const(space).scale(s), N, r, r)
        return out


def _h_components(x: MatrixWeyl, k: int):
    """Split an element of h into fixed quadratic, normal quadratic and constant matrix."""
    space = x.space
    n = space.n
    fixed_vars = set(range(k)) | set(range(n, n + k))
    for (i, j), a in x.entries.items():
        for (m, _h) in a.terms:
            deg = sum(m)
            if deg not in (0, 2):
                raise ValueError("argument is not in h (degree other than 0 or 2)")
            if deg == 2 and i != j:
                raise ValueError("argument is not in h (off-diagonal quadratic)")
    quads = [x.entries.get((i, i), WeylElement(space)).homogeneous_part(2) for i in range(x.N)]
    if any(q != quads[0] for q in quads[1:]):
        raise ValueError("argument is not in h (non-scalar quadratic part)")
    q = quads[0]
    fixed = WeylElement(space, {key: c for key, c in q.terms.items()
                                if all(v in fixed_vars for v, e in enumerate(key[0]) if e)})
    normal = q - fixed
    for (m, _h) in normal.terms:
        if any(e and v in fixed_vars for v, e in enumerate(m)):
            raise ValueError("argument is not in h (mixed fixed/normal quadratic)")
    consts = [[x.entries.get((i, j), WeylElement(space)).constant_term() for j in range(x.N)]
              for i in range(x.N)]
    return fixed, normal, consts


def _hmat_mul(a, b):
    n = len(a)
    return [[sum((a[i][l] * b[l][j] for l in range(n)), HbarSeries()) for j in range(n)]
            for i in range(n)]


def _hmat_trace(a) -> HbarSeries:
    return sum((a[i][i] for i in range(len(a))), HbarSeries())


def _ahat_log_coefficients(order: int) -> list[Fraction]:
    """Coefficients ``l_j`` of ``log((x/2)/sinh(x/2)) = sum_j l_j x^(2j)``."""
    O = 2 * order
    # sinh(x/2)/(x/2) = sum x^(2m) / (4^m (2m+1)!)
    s = TruncSeries(O, [Fraction(1, 4 ** (i // 2) * factorial(i + 1)) if i % 2 == 0 else 0
                        for i in range(O + 1)])
    lg = series_log(s)
    return [-lg[2 * j].coefficient(0).to_fraction() if not lg[2 * j].is_zero() else Fraction(0)
            for j in range(order + 1)]


def _ad_matrix(X1: WeylElement, k: int) -> list[list[HbarSeries]]:
    space = X1.space
    n = space.n
    gens = [WeylElement.gen(space, i) for i in range(k)] + \
           [WeylElement.gen(space, n + i) for i in range(k)]
    idx = {next(iter(g.terms))[0]: t for t, g in enumerate(gens)}
    mat = [[HbarSeries() for _ in gens] for _ in gens]
    for col, g in enumerate(gens):
        img = hbar_bracket(X1, g).scale(AD_SCALE)
        for (m, h), c in img.terms.items():
            mat[idx[m]][col] = mat[idx[m]][col] + HbarSeries({h: c})
    return mat


def generating_S(x: MatrixWeyl, k: int, d: TwistedTraceData, order: int,
                 ahat_exponent: Fraction = AHAT_EXPONENT) -> TruncSeries:
    """Taylor expansion of ``S(tX) = Ahat_hbar(X_1) Ch(X_3) Ch_gamma(X_2)`` in ``t``."""
    X1, X2, X3, = _h_components(x, k)
    O = order
    # Ahat: exp(e * sum_j l_j hbar^(2j) t^(2j) tr(ad^(2j))) with e the det power
    ad = _ad_matrix(X1, k)
    logs = _ahat_log_coefficients(O // 2 + 1)
    expo = [HbarSeries() for _ in range(O + 1)]
    power = ad
    for m in range(1, O + 1):
        if m > 1:
            power = _hmat_mul(power, ad)
        if m % 2 == 0:
            tr = _hmat_trace(power)
            expo[m] = (tr * logs[m // 2] * ahat_exponent).shift(m)
    ahat = series_exp(TruncSeries(O, expo))
    # Ch(X3) = tr exp(t X3)
    N = x.N
    ch = [HbarSeries() for _ in range(O + 1)]
    power = [[HbarSeries({0: 1}) if i == j else HbarSeries() for j in range(N)] for i in range(N)]
    for m in range(O + 1):
        if m:
            power = _hmat_mul(power, X3)
        ch[m] = _hmat_trace(power) * Fraction(1, factorial(m))
    # Ch_gamma(X2) = tr_gamma(exp_star(t X2)), evaluated on the normal factor
    nsp = d.normal_space()
    X2n = _restrict_normal(X2, k, nsp)
    chg = []
    cur = WeylElement.const(nsp)
    for m in range(O + 1):
        if m:
            cur = moyal_star(cur, X2n)
        chg.append(tr_gamma(d, cur) * Fraction(1, factorial(m)))
    return ahat * TruncSeries(O, ch) * TruncSeries(O, chg)


def _restrict_normal(a: WeylElement, k: int, nsp: WeylSpace) -> WeylElement:
    n = a.space.n
    out = {}
    for (m, h), c in a.terms.items():
        out[(m[k:n] + m[n + k:], h)] = c
    return WeylElement(nsp, out)


def invariant_P(k: int, d: TwistedTraceData, q: int,
                ahat_exponent: Fraction = AHAT_EXPONENT) -> Callable[..., HbarSeries]:
    """Symmetric q-linear form ``P_q`` with ``S(X) = sum_m P_m(X, ..., X) / m!``,
    obtained by polarizing ``q! [t^q] S(tX)``."""

    def F(x: MatrixWeyl) -> HbarSeries:
        return generating_S(x, k, d, q, ahat_exponent)[q] * factorial(q)

    def P(*xs: MatrixWeyl) -> HbarSeries:
        if len(xs) != q:
            raise ValueError(f"P takes {q} arguments")
        total = HbarSeries()
        for r in range(1, q + 1):
            for subset in itertools.combinations(range(q), r):
                s = xs[subset[0]]
                for t in subset[1:]:
                    s = s + xs[t]
                total = total + F(s) * (-1) ** (q - r)
        return total * Fraction(1, factorial(q))

    return P


# ---------------------------------------------------------------------------
# local Riemann-Roch

def rr_arguments(k: int, d: TwistedTraceData, N: int, choices: Sequence[tuple]) -> list[MatrixWeyl]:
    """The wedge ``p_1, x_1, ..., p_k, x_k`` for choices like ``("u", i, j)``,
    ``("v", i, r)`` or ``("w", i, s)`` (1-based indices)."""
    space = split_space(k, d)
    n = space.n
    P = lambda i: WeylElement.gen(space, i - 1)
    Q = lambda i: WeylElement.gen(space, n + i - 1)
    args = []
    for slot, ch in enumerate(choices, start=1):
        kind, i = ch[0], ch[1]
        args.append(MatrixWeyl.scalar(P(slot), N))
        if kind == "u":
            j = ch[2]
            x = (Q(i) * Q(i) * P(i)).scale(Fraction(1, 2)) if i == j else Q(i) * Q(j) * P(j)
            args.append(MatrixWeyl.scalar(x, N))
        elif kind == "v":
            args.append(MatrixWeyl.unit(Q(i), N, ch[2] - 1, ch[2] - 1))
        elif kind == "w":
            s = ch[2]
            z = WeylElement.gen(space, k + s - 1)
            zb = WeylElement.gen(space, n + k + s - 1)
            args.append(MatrixWeyl.scalar(Q(i) * z * zb, N))
        else:
            raise ValueError(f"unknown argument kind {kind!r}")
    return args


@dataclass
class LocalRRReport:
    k: int
    N: int
    choices: tuple
    lhs: HbarSeries
    rhs: HbarSeries

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs


def verify_local_rr(k: int, d: TwistedTraceData, N: int, choices: Sequence[tuple],
                    ahat_exponent: Fraction = AHAT_EXPONENT) -> LocalRRReport:
    """Compare ``ev_1 Theta(p_1, x_1, ...)`` with ``(-1)^k chi(P_k)(p_1, x_1, ...)``."""
    if k not in (1, 2):
        raise UnsupportedError("local Riemann-Roch verification supports k in {1, 2}")
    if len(choices) != k:
        raise ValueError("one choice per fixed pair")
    args = rr_arguments(k, d, N, choices)
    lhs = theta_cocycle(k, d, N).ev1(args)
    rhs = chern_weil_chi(invariant_P(k, d, k, ahat_exponent), args) * (-1) ** k
    return LocalRRReport(k, N, tuple(choices), lhs, rhs)
