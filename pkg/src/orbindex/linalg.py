"""Exact dense and sparse linear algebra over cyclotomic fields."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .scalars import CycloScalar, NonInvertibleError, as_scalar

Matrix = list[list[CycloScalar]]

_ZERO = CycloScalar.from_rational(0)
_ONE = CycloScalar.from_rational(1)


def to_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[as_scalar(x) for x in row] for row in rows]


def identity(n: int) -> Matrix:
    return [[_ONE if i == j else _ZERO for j in range(n)] for i in range(n)]


def zeros(r: int, c: int) -> Matrix:
    return [[_ZERO] * c for _ in range(r)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b)) if b else []
    out = []
    for row in a:
        out_row = []
        for col in cols:
            s = _ZERO
            for x, y in zip(row, col):
                if not x.is_zero() and not y.is_zero():
                    s = s + x * y
            out_row.append(s)
        out.append(out_row)
    return out


def mat_vec(a: Matrix, v: Sequence[CycloScalar]) -> list[CycloScalar]:
    out = []
    for row in a:
        s = _ZERO
        for x, y in zip(row, v):
            if not x.is_zero() and not y.is_zero():
                s = s + x * y
        out.append(s)
    return out


def transpose(a: Matrix) -> Matrix:
    return [list(r) for r in zip(*a)]


def mat_add(a: Matrix, b: Matrix, sb=1) -> Matrix:
    return [[x + y * sb for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_eq(a: Matrix, b: Matrix) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def conj_matrix(a: Matrix) -> Matrix:
    return [[x.conj() for x in r] for r in a]


def mat_pow(a: Matrix, k: int) -> Matrix:
    out = identity(len(a))
    for _ in range(k):
        out = mat_mul(out, a)
    return out


def rref(a: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [list(r) for r in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if not m[i][c].is_zero()), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(a: Matrix) -> int:
    if not a or not a[0]:
        return 0
    return len(rref(a)[1])


def kernel(a: Matrix, ncols: int | None = None) -> list[list[CycloScalar]]:
    """Basis of ``{v : a v = 0}``."""
    cols = ncols if ncols is not None else (len(a[0]) if a else 0)
    if not a:
        return [[_ONE if i == j else _ZERO for i in range(cols)] for j in range(cols)]
    m, pivots = rref(a)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [_ZERO] * cols
        v[f] = _ONE
        for r, pc in enumerate(pivots):
            v[pc] = -m[r][f]
        basis.append(v)
    return basis


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = [list(r) + [_ONE if i == j else _ZERO for j in range(n)] for i, r in enumerate(a)]
    m, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise NonInvertibleError("singular matrix")
    return [r[n:] for r in m]


def independent_subset(vectors: list[list[CycloScalar]]) -> list[list[CycloScalar]]:
    """Greedy maximal linearly independent subfamily, order preserved."""
    chosen: list[list[CycloScalar]] = []
    for v in vectors:
        if rank(chosen + [v]) > len(chosen):
            chosen.append(v)
    return chosen


# ---------------------------------------------------------------------------
# fraction-free rank for rational sparse matrices

def sparse_rank_rational(rows: list[dict[int, int]]) -> int:
    """Rank of an integer matrix given as sparse rows, by fraction-free elimination.

    Each pivot step replaces a row ``r`` by ``p*r - r[c]*pivot_row`` and divides
    out the row content, so entries stay integral.
    """
    from math import gcd
    pivots: dict[int, dict[int, int]] = {}
    rk = 0
    for row in rows:
        r = {c: v for c, v in row.items() if v}
        while r:
            c = min(r)
            if c not in pivots:
                g = 0
                for v in r.values():
                    g = gcd(g, v)
                pivots[c] = {k: v // g for k, v in r.items()}
                rk += 1
                break
            prow = pivots[c]
            a, b = prow[c], r[c]
            new = {k: a * v for k, v in r.items()}
            for k, v in prow.items():
                new[k] = new.get(k, 0) - b * v
            r = {k: v for k, v in new.items() if v}
            g = 0
            for v in r.values():
                g = gcd(g, v)
            if g > 1:
                r = {k: v // g for k, v in r.items()}
    return rk


def sparse_rank(rows: list[dict[int, CycloScalar]]) -> int:
    """Rank of a sparse matrix over a cyclotomic field."""
    if all(c.is_rational() for row in rows for c in row.values()):
        int_rows = []
        for row in rows:
            fr = {k: v.to_fraction() for k, v in row.items() if not v.is_zero()}
            den = 1
            for f in fr.values():
                den = den * f.denominator // _gcd(den, f.denominator)
            int_rows.append({k: int(f * den) for k, f in fr.items()})
        return sparse_rank_rational(int_rows)
    pivots: dict[int, dict[int, CycloScalar]] = {}
    rk = 0
    for row in rows:
        r = {c: v for c, v in row.items() if not v.is_zero()}
        while r:
            c = min(r)
            if c not in pivots:
                inv = r[c].inverse()
                pivots[c] = {k: v * inv for k, v in r.items()}
                rk += 1
                break
            f = r[c]
            for k, v in pivots[c].items():
                nv = r.get(k, _ZERO) - f * v
                if nv.is_zero():
                    r.pop(k, None)
                else:
                    r[k] = nv
    return rk


def _gcd(a: int, b: int) -> int:
    from math import gcd
    return gcd(a, b)
