"""Finite-order linear symplectomorphisms and their adapted coordinates.

A matrix ``M`` acts on generators by ``g(y_i) = sum_j M[j][i] y_j``: column
``i`` holds the image of generator ``i``.  Linear forms with coefficient
vector ``v`` therefore transform as ``v -> M v``, and ``g -> M`` is a
homomorphism for the matrix product.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg as la
from .scalars import CycloScalar, as_scalar, cyclo_embed_root
from .weyl import COMPLEX, REAL, WeylElement, WeylSpace, apply_linear

__all__ = [
    "SymplecticMap", "AdaptedForm", "FiniteSubgroup", "NotSymplecticError",
    "RaiseLevelError", "fixed_decomposition", "cayley_inverse", "l_p_census",
    "apply_symplectomorphism", "poisson_matrix",
]

MAX_ORDER = 720

_ZERO = CycloScalar.from_rational(0)
_ONE = CycloScalar.from_rational(1)
_I = cyclo_embed_root(4, 1)


class NotSymplecticError(ValueError):
    pass


class RaiseLevelError(ArithmeticError):
    """The cyclotomic level is too small to split the element."""


def poisson_matrix(space: WeylSpace) -> la.Matrix:
    return [[space.poisson(a, b) for b in range(space.nvars)] for a in range(space.nvars)]


def _bilinear(pi: la.Matrix, v, w) -> CycloScalar:
    s = _ZERO
    for a, va in enumerate(v):
        if va.is_zero():
            continue
        for b, wb in enumerate(w):
            if not wb.is_zero() and not pi[a][b].is_zero():
                s = s + va * pi[a][b] * wb
    return s


class SymplecticMap:
    """A finite-order linear symplectomorphism of a :class:`WeylSpace`."""

    __slots__ = ("space", "matrix", "_order", "_key")

    def __init__(self, space: WeylSpace, matrix: Sequence[Sequence], order: int | None = None,
                 check: bool = True):
        m = la.to_matrix(matrix)
        if len(m) != space.nvars or any(len(r) != space.nvars for r in m):
            raise ValueError("matrix size does not match the space")
        self.space = space
        self.matrix = m
        self._key = None
        if check:
            pi = poisson_matrix(space)
            if not la.mat_eq(la.mat_mul(la.transpose(m), la.mat_mul(pi, m)), pi):
                raise NotSymplecticError("matrix does not preserve the Poisson structure")
        self._order = order

    @property
    def order(self) -> int:
        """Multiplicative order; raises for elements of infinite order."""
        if self._order is None:
            self._order = self._find_order()
        return self._order

    def _find_order(self) -> int:
        ident = la.identity(len(self.matrix))
        cur = self.matrix
        for k in range(1, MAX_ORDER + 1):
            if la.mat_eq(cur, ident):
                return k
            cur = la.mat_mul(cur, self.matrix)
        raise ValueError("element has infinite (or very large) order")

    # -- constructors -------------------------------------------------------
    @classmethod
    def identity(cls, space: WeylSpace) -> "SymplecticMap":
        return cls(space, la.identity(space.nvars), 1, check=False)

    @classmethod
    def minus_one(cls, space: WeylSpace) -> "SymplecticMap":
        m = [[-x for x in r] for r in la.identity(space.nvars)]
        return cls(space, m, 2 if space.n else 1, check=False)

    @classmethod
    def rotations(cls, space: WeylSpace, eigenvalues: Sequence[CycloScalar | None]) -> "SymplecticMap":
        """Block rotation; ``eigenvalues[i]`` acts on pair ``i`` (``None`` = identity).

        On a REAL pair with ``lam = a + ib`` this is ``q -> aq - bp``,
        ``p -> bq + ap``, i.e. ``z = q + ip -> lam z``.  On a COMPLEX pair it
        is ``z -> lam z``, ``zb -> conj(lam) zb``.
        """
        n = space.n
        m = la.identity(2 * n)
        for i, lam in enumerate(eigenvalues):
            if lam is None:
                continue
            lam = as_scalar(lam)
            if space.kinds[i] == REAL:
                a = (lam + lam.conj()) * Fraction(1, 2)
                b = (lam - lam.conj()) * (2 * _I).inverse()
                m[i][i] = a
                m[n + i][i] = b
                m[i][n + i] = -b
                m[n + i][n + i] = a
            else:
                m[i][i] = lam
                m[n + i][n + i] = lam.conj()
        return cls(space, m)

    # -- group structure ---------------------------------------------------------
    def __matmul__(self, other: "SymplecticMap") -> "SymplecticMap":
        if self.space != other.space:
            raise ValueError("maps act on different spaces")
        return SymplecticMap(self.space, la.mat_mul(self.matrix, other.matrix), check=False)

    def inverse(self) -> "SymplecticMap":
        return SymplecticMap(self.space, la.inverse(self.matrix), self._order, check=False)

    def power(self, k: int) -> "SymplecticMap":
        if k < 0:
            return self.inverse().power(-k)
        return SymplecticMap(self.space, la.mat_pow(self.matrix, k), check=False)

    def conjugate_by(self, h: "SymplecticMap") -> "SymplecticMap":
        """``h g h^-1``."""
        return h @ self @ h.inverse()

    def key(self):
        if self._key is None:
            self._key = tuple(tuple(r) for r in self.matrix)
        return self._key

    def __eq__(self, other):
        return isinstance(other, SymplecticMap) and self.space == other.space and \
            la.mat_eq(self.matrix, other.matrix)

    def __hash__(self):
        return hash(self.key())

    def level(self) -> int:
        out = 1
        for r in self.matrix:
            for x in r:
                out = math.lcm(out, x.level)
        return out

    def fixed_dimension(self) -> int:
        d = la.mat_add(self.matrix, la.identity(len(self.matrix)), -1)
        return len(self.matrix) - la.rank(d)

    def __call__(self, a: WeylElement) -> WeylElement:
        return apply_symplectomorphism(self, a)

    def __repr__(self):
        return f"SymplecticMap(n={self.space.n}, order={self.order})"


def apply_symplectomorphism(g: SymplecticMap, a: WeylElement) -> WeylElement:
    """Linear substitution ``y_i -> sum_j M[j][i] y_j`` extended multiplicatively."""
    if g.space != a.space:
        raise ValueError("map and element live on different spaces")
    sp = a.space
    images = []
    for i in range(sp.nvars):
        terms = {}
        for j in range(sp.nvars):
            c = g.matrix[j][i]
            if not c.is_zero():
                mono = [0] * sp.nvars
                mono[j] = 1
                terms[(tuple(mono), 0)] = c
        images.append(WeylElement(sp, terms))
    return apply_linear(a, images, sp)


# ---------------------------------------------------------------------------
# adapted form

@dataclass
class AdaptedForm:
    """Fixed/normal splitting of a finite-order map.

    ``space`` has ``k`` REAL pairs spanning the fixed space followed by ``n-k``
    COMPLEX pairs (scale ``r_j``) on which the map is ``z_j -> lam_j z_j``.
    ``frame`` holds, per slot of ``space``, the coefficient vector of that
    coordinate as a linear form in the original generators.
    """

    g: SymplecticMap
    k: int
    level: int
    normal_eigenvalues: list[CycloScalar]
    scales: list[CycloScalar]
    frame: la.Matrix  # columns are new coordinates
    space: WeylSpace = field(init=False)

    def __post_init__(self):
        n = self.g.space.n
        kinds = tuple([REAL] * self.k + [COMPLEX] * (n - self.k))
        scales = tuple([_ONE] * self.k + list(self.scales))
        self.space = WeylSpace(kinds, scales)

    @property
    def n(self) -> int:
        return self.g.space.n

    @property
    def fixed_basis(self) -> list[list[CycloScalar]]:
        n = self.n
        cols = la.transpose(self.frame)
        return [cols[i] for i in range(self.k)] + [cols[n + i] for i in range(self.k)]

    @property
    def normal_basis(self) -> list[list[CycloScalar]]:
        n = self.n
        cols = la.transpose(self.frame)
        return [cols[i] for i in range(self.k, n)]

    @property
    def cayley_diagonal(self) -> list[CycloScalar]:
        return [(1 + lam.conj()) / (1 - lam.conj()) for lam in self.normal_eigenvalues]

    def to_adapted(self, a: WeylElement) -> WeylElement:
        """Rewrite an element of the original space in adapted coordinates."""
        inv = la.inverse(self.frame)
        sp = self.space
        images = []
        for i in range(sp.nvars):
            terms = {}
            for s in range(sp.nvars):
                c = inv[s][i]
                if not c.is_zero():
                    mono = [0] * sp.nvars
                    mono[s] = 1
                    terms[(tuple(mono), 0)] = c
            images.append(WeylElement(sp, terms))
        return apply_linear(a, images, sp)

    def from_adapted(self, a: WeylElement) -> WeylElement:
        sp = self.g.space
        images = []
        for s in range(sp.nvars):
            terms = {}
            for i in range(sp.nvars):
                c = self.frame[i][s]
                if not c.is_zero():
                    mono = [0] * sp.nvars
                    mono[i] = 1
                    terms[(tuple(mono), 0)] = c
            images.append(WeylElement(sp, terms))
        return apply_linear(a, images, sp)

    def adapted_map(self) -> SymplecticMap:
        """The map in adapted coordinates: identity on fixed pairs, diagonal on normal ones."""
        return SymplecticMap.rotations(self.space, [None] * self.k + list(self.normal_eigenvalues))


def _realify(vectors: list[list[CycloScalar]]) -> list[list[CycloScalar]]:
    cands = []
    for x in vectors:
        xb = [c.conj() for c in x]
        if all(a == b for a, b in zip(x, xb)):
            cands.append(x)
            continue
        cands.append([a + b for a, b in zip(x, xb)])
        cands.append([_I * (a - b) for a, b in zip(x, xb)])
    out = la.independent_subset(cands)
    if len(out) != len(vectors):
        raise RaiseLevelError("could not find a real basis")
    return out


def _symplectic_pairs(pi, vecs):
    """Symplectic Gram-Schmidt: pairs (e, f) with B(e, f) = 1."""
    vecs = [list(v) for v in vecs]
    pairs = []
    while vecs:
        e = vecs.pop(0)
        j = next((j for j, w in enumerate(vecs) if not _bilinear(pi, e, w).is_zero()), None)
        if j is None:
            raise ValueError("degenerate restriction of the symplectic form")
        f = vecs.pop(j)
        s = _bilinear(pi, e, f).inverse()
        f = [x * s for x in f]
        pairs.append((e, f))
        rest = []
        for w in vecs:
            alpha = _bilinear(pi, f, w)
            beta = -_bilinear(pi, e, w)
            rest.append([wa + alpha * ea + beta * fa for wa, ea, fa in zip(w, e, f)])
        vecs = rest
    return pairs


def _herm(pi, v, w) -> CycloScalar:
    return _bilinear(pi, v, [c.conj() for c in w]) * (2 * _I).inverse()


def _hermitian_diagonal(pi, vecs):
    """Orthogonal basis for the Hermitian form ``h(v, w) = B(v, conj w) / 2i``."""
    vecs = [list(v) for v in vecs]
    out = []
    while vecs:
        j = next((j for j, v in enumerate(vecs) if not _herm(pi, v, v).is_zero()), None)
        if j is None:
            # all isotropic: combine two vectors with nonzero pairing
            v0 = vecs[0]
            t = next((t for t in range(1, len(vecs)) if not _herm(pi, v0, vecs[t]).is_zero()), None)
            if t is None:
                raise ValueError("degenerate Hermitian form")
            for mult in (_ONE, _I):
                cand = [a + mult * b for a, b in zip(v0, vecs[t])]
                if not _herm(pi, cand, cand).is_zero():
                    vecs[0] = cand
                    break
            continue
        v = vecs.pop(j)
        hv = _herm(pi, v, v)
        out.append((v, hv))
        vecs = [[wa - (_herm(pi, w, v) / hv) * va for wa, va in zip(w, v)] for w in vecs]
    return out


def _is_positive(x: CycloScalar) -> bool:
    c = x.to_complex()
    if abs(c.imag) > 1e-9 * max(1.0, abs(c.real)):
        raise ValueError("expected a real value")
    if abs(c.real) < 1e-12:
        raise ValueError("expected a nonzero value")
    return c.real > 0


def fixed_decomposition(g: SymplecticMap) -> AdaptedForm:
    """Fixed space and complex eigen-coordinates of the normal space.

    The cyclotomic level is raised to ``lcm(4, order, entry levels)``.
    """
    sp = g.space
    if any(k != REAL for k in sp.kinds) or any(s != 1 for s in sp.scales):
        raise ValueError("fixed_decomposition expects a standard real space")
    n = sp.n
    L = math.lcm(4, g.order, g.level())
    pi = poisson_matrix(sp)
    ident = la.identity(2 * n)

    def eig_space(lam):
        a = la.mat_add(g.matrix, [[lam * x for x in r] for r in ident], -1)
        return la.kernel(a, 2 * n)

    fixed = eig_space(_ONE)
    fixed_pairs = _symplectic_pairs(pi, _realify(fixed)) if fixed else []
    k = len(fixed_pairs)

    normal: list[tuple[CycloScalar, list[CycloScalar], CycloScalar]] = []
    step = L // g.order
    seen = set()
    for e in range(1, g.order):
        lam = cyclo_embed_root(L, e * step)
        conj_e = (g.order - e) % g.order
        if e in seen:
            continue
        seen.add(e)
        seen.add(conj_e)
        vecs = eig_space(lam)
        if not vecs:
            continue
        if conj_e == e:  # lam = -1: real eigenspace, pair it symplectically
            for ev, fv in _symplectic_pairs(pi, _realify(vecs)):
                v = [fa + _I * ea for ea, fa in zip(ev, fv)]
                normal.append((lam, v, _ONE))
            continue
        for v, hv in _hermitian_diagonal(pi, vecs):
            if _is_positive(hv):
                normal.append((lam, v, hv))
            else:
                normal.append((lam.conj(), [c.conj() for c in v], -hv))

    if k + len(normal) != n:
        raise RaiseLevelError("eigenvectors do not span; raise the cyclotomic level")

    # frame columns: slots 0..n-1 first coordinates, n..2n-1 second
    cols: list = [None] * (2 * n)
    for i, (e, f) in enumerate(fixed_pairs):
        cols[i] = e
        cols[n + i] = f
    for j, (lam, v, r) in enumerate(normal):
        cols[k + j] = v
        cols[n + k + j] = [c.conj() for c in v]
    frame = la.transpose(cols)
    form = AdaptedForm(g, k, L, [x[0] for x in normal], [x[2] for x in normal], frame)
    # structural self-check: the frame realizes the adapted Poisson structure
    pi_new = poisson_matrix(form.space)
    if not la.mat_eq(la.mat_mul(la.transpose(frame), la.mat_mul(pi, frame)), pi_new):
        raise AssertionError("adapted frame is not canonical")
    return form


def cayley_inverse(matrix: Sequence[Sequence]) -> la.Matrix:
    """``(1 + g^-1)(1 - g^-1)^-1`` for a matrix without eigenvalue 1."""
    m = la.to_matrix(matrix)
    size = len(m)
    ident = la.identity(size)
    ginv = la.inverse(m)
    minus = la.mat_add(ident, ginv, -1)
    if la.rank(minus) < size:
        raise ValueError("eigenvalue 1 present; the normal part must be fixed-point free")
    return la.mat_mul(la.mat_add(ident, ginv), la.inverse(minus))


# ---------------------------------------------------------------------------
# finite subgroups

class FiniteSubgroup:
    """A finite group of symplectic maps, closed under products."""

    def __init__(self, elements: Iterable[SymplecticMap]):
        elems = list(dict.fromkeys(elements))
        if not elems:
            raise ValueError("empty group")
        self.space = elems[0].space
        index = {e: i for i, e in enumerate(elems)}
        for a in elems:
            for b in elems:
                if a @ b not in index:
                    raise ValueError("set is not closed under products")
        ident = SymplecticMap.identity(self.space)
        if ident not in index:
            raise ValueError("identity missing")
        self.elements = elems
        self._index = index

    @classmethod
    def generated_by(cls, gens: Sequence[SymplecticMap], limit: int = 5000) -> "FiniteSubgroup":
        space = gens[0].space
        ident = SymplecticMap.identity(space)
        elems = [ident]
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = x @ g
                    if y not in seen:
                        seen.add(y)
                        elems.append(y)
                        nxt.append(y)
                        if len(elems) > limit:
                            raise ValueError("group too large")
            frontier = nxt
        return cls(elems)

    @classmethod
    def cyclic(cls, g: SymplecticMap) -> "FiniteSubgroup":
        return cls([g.power(j) for j in range(g.order)])

    def __len__(self):
        return len(self.elements)

    def index(self, g: SymplecticMap) -> int:
        return self._index[g]

    def conjugacy_classes(self) -> list[list[SymplecticMap]]:
        done = set()
        classes = []
        for g in self.elements:
            if g in done:
                continue
            cls_ = list(dict.fromkeys(g.conjugate_by(h) for h in self.elements))
            done.update(cls_)
            classes.append(cls_)
        return classes

    def centralizer_order(self, g: SymplecticMap) -> int:
        return sum(1 for h in self.elements if h @ g == g @ h)

    def conjugate_all(self, h: SymplecticMap) -> "FiniteSubgroup":
        return FiniteSubgroup([g.conjugate_by(h) for g in self.elements])


def l_p_census(G: FiniteSubgroup) -> dict[int, int]:
    """Number of conjugacy classes per fixed-space dimension ``p``."""
    out = {p: 0 for p in range(0, G.space.nvars + 1, 2)}
    for cls_ in G.conjugacy_classes():
        out[cls_[0].fixed_dimension()] += 1
    return out
