"""Exact scalars: cyclotomic rationals, Laurent polynomials in hbar, and
truncated power series in an auxiliary nilpotent parameter.

A :class:`CycloScalar` of level ``L`` is stored as an integer vector over the
power basis ``1, z, ..., z^(phi(L)-1)`` of ``Q(zeta_L)`` together with a
common positive denominator.  Values of different levels combine by lifting
both operands to the lcm of the levels.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Mapping

__all__ = [
    "CycloScalar",
    "HbarSeries",
    "TruncSeries",
    "NonInvertibleError",
    "cyclo_embed_root",
    "series_exp",
    "series_invert",
    "series_log",
    "as_scalar",
]


class NonInvertibleError(ArithmeticError):
    """Raised when an inverse is requested for a non-unit."""


# ---------------------------------------------------------------------------
# cyclotomic polynomial tables

def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # exact division of integer polynomials, coefficient lists low -> high
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        if c % lead:
            raise ValueError("inexact polynomial division")
        c //= lead
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num[: len(den) - 1]):
        raise ValueError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients (low to high) of the n-th cyclotomic polynomial."""
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def _phi(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


@lru_cache(maxsize=None)
def _reduction_table(level: int) -> tuple[tuple[int, ...], ...]:
    """Row e holds x^e mod Phi_level, for e < max(level, 2*phi - 1)."""
    phi = cyclotomic_poly(level)
    d = len(phi) - 1
    size = max(level, 2 * d - 1, d + 1)
    rows = []
    cur = [0] * d
    cur[0] = 1
    for e in range(size):
        if e < d:
            row = [0] * d
            row[e] = 1
            rows.append(tuple(row))
            continue
        # multiply previous row by x, reduce with the monic Phi
        prev = rows[-1]
        top = prev[-1]
        row = [0] + list(prev[:-1])
        if top:
            for j in range(d):
                row[j] -= top * phi[j]
        rows.append(tuple(row))
    return tuple(rows)


@lru_cache(maxsize=None)
def _trace_vector(level: int) -> tuple[Fraction, ...]:
    # normalized field trace Tr(z^e)/phi(L) of each basis element
    d = _phi(level)
    out = []
    for e in range(d):
        g = math.gcd(e, level)
        m = level // g
        out.append(Fraction(_mobius(m), _phi(m)))
    return tuple(out)


def _mobius(n: int) -> int:
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


def _normalize(num: list[int], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        num = [-c for c in num]
        den = -den
    g = den
    for c in num:
        if c:
            g = math.gcd(g, c)
            if g == 1:
                break
    if g != 1:
        num = [c // g for c in num]
        den //= g
    if not any(num):
        den = 1
    return tuple(num), den


class CycloScalar:
    """Element of the cyclotomic field ``Q(zeta_L)``.

    ``coeffs`` maps exponents ``e < phi(L)`` of the power basis to nonzero
    rationals.  Instances are immutable.
    """

    __slots__ = ("level", "_num", "_den", "_hash")

    def __init__(self, level: int = 1, coeffs: Mapping[int, Rational] | None = None):
        if level < 1:
            raise ValueError("level must be positive")
        d = _phi(level)
        fr = [Fraction(0)] * d
        table = _reduction_table(level)
        for e, c in (coeffs or {}).items():
            c = Fraction(c)
            if not c:
                continue
            e = e % level
            row = table[e]
            for j in range(d):
                if row[j]:
                    fr[j] += c * row[j]
        den = 1
        for c in fr:
            den = den * c.denominator // math.gcd(den, c.denominator)
        num = [int(c * den) for c in fr]
        self.level = level
        self._num, self._den = _normalize(num, den)
        self._hash = None

    @classmethod
    def _raw(cls, level: int, num: tuple[int, ...], den: int) -> "CycloScalar":
        obj = object.__new__(cls)
        obj.level = level
        obj._num = num
        obj._den = den
        obj._hash = None
        return obj

    @classmethod
    def from_rational(cls, value: Rational, level: int = 1) -> "CycloScalar":
        value = Fraction(value)
        d = _phi(level)
        num = [0] * d
        num[0] = value.numerator
        return cls._raw(level, tuple(num), value.denominator)

    # -- structure ----------------------------------------------------------
    @property
    def coeffs(self) -> dict[int, Fraction]:
        return {e: Fraction(c, self._den) for e, c in enumerate(self._num) if c}

    def is_zero(self) -> bool:
        return not any(self._num)

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self._num[0], self._den)

    def lift(self, level: int) -> "CycloScalar":
        """Re-express this value in ``Q(zeta_level)``; ``self.level`` must divide ``level``."""
        if level == self.level:
            return self
        if level % self.level:
            raise ValueError(f"cannot lift level {self.level} to {level}")
        step = level // self.level
        d = _phi(level)
        table = _reduction_table(level)
        out = [0] * d
        for e, c in enumerate(self._num):
            if c:
                row = table[e * step]
                for j in range(d):
                    if row[j]:
                        out[j] += c * row[j]
        return CycloScalar._raw(level, tuple(out), self._den)

    def _common(self, other: "CycloScalar") -> tuple["CycloScalar", "CycloScalar"]:
        if self.level == other.level:
            return self, other
        if other.level == 1 or self.level % other.level == 0:
            return self, other.lift(self.level)
        if self.level == 1 or other.level % self.level == 0:
            return self.lift(other.level), other
        m = self.level * other.level // math.gcd(self.level, other.level)
        return self.lift(m), other.lift(m)

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._common(other)
        if a._den == b._den:
            num = [x + y for x, y in zip(a._num, b._num)]
            n, dd = _normalize(num, a._den)
        else:
            num = [x * b._den + y * a._den for x, y in zip(a._num, b._num)]
            n, dd = _normalize(num, a._den * b._den)
        return CycloScalar._raw(a.level, n, dd)

    __radd__ = __add__

    def __neg__(self):
        return CycloScalar._raw(self.level, tuple(-c for c in self._num), self._den)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.level == 1 and other._num[0] == other._den:
            return self
        if self.level == 1 and self._num[0] == self._den:
            return other
        a, b = self._common(other)
        d = len(a._num)
        if d == 1:
            n, dd = _normalize([a._num[0] * b._num[0]], a._den * b._den)
            return CycloScalar._raw(a.level, n, dd)
        if b.is_rational():
            c = b._num[0]
            n, dd = _normalize([x * c for x in a._num], a._den * b._den)
            return CycloScalar._raw(a.level, n, dd)
        if a.is_rational():
            c = a._num[0]
            n, dd = _normalize([x * c for x in b._num], a._den * b._den)
            return CycloScalar._raw(a.level, n, dd)
        conv = [0] * (2 * d - 1)
        for i, x in enumerate(a._num):
            if x:
                for j, y in enumerate(b._num):
                    if y:
                        conv[i + j] += x * y
        table = _reduction_table(a.level)
        out = conv[:d]
        for e in range(d, 2 * d - 1):
            c = conv[e]
            if c:
                row = table[e]
                for j in range(d):
                    if row[j]:
                        out[j] += c * row[j]
        n, dd = _normalize(out, a._den * b._den)
        return CycloScalar._raw(a.level, n, dd)

    __rmul__ = __mul__

    def inverse(self) -> "CycloScalar":
        if self.is_zero():
            raise NonInvertibleError("zero is not invertible")
        if self.is_rational():
            return CycloScalar._raw(self.level, *_normalize(
                [self._den] + [0] * (len(self._num) - 1), self._num[0]))
        d = len(self._num)
        table = _reduction_table(self.level)
        # columns: self * z^j reduced; solve M x = e_0
        cols = []
        for j in range(d):
            col = [0] * d
            for i, x in enumerate(self._num):
                if x:
                    row = table[i + j]
                    for t in range(d):
                        if row[t]:
                            col[t] += x * row[t]
            cols.append(col)
        mat = [[Fraction(cols[j][i]) for j in range(d)] + [Fraction(1 if i == 0 else 0)]
               for i in range(d)]
        sol = _solve_fraction(mat, d)
        sol = [s * self._den for s in sol]
        return CycloScalar(self.level, dict(enumerate(sol)))

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = CycloScalar.from_rational(1, self.level)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self) -> "CycloScalar":
        """Complex conjugate, ``zeta_L -> zeta_L^(L-1)``."""
        if self.is_rational():
            return self
        L = self.level
        d = len(self._num)
        table = _reduction_table(L)
        out = [0] * d
        for e, c in enumerate(self._num):
            if c:
                row = table[(L - e) % L]
                for j in range(d):
                    if row[j]:
                        out[j] += c * row[j]
        return CycloScalar._raw(L, tuple(out), self._den)

    def normalized_trace(self) -> Fraction:
        """Field trace divided by the field degree; independent of the level."""
        tv = _trace_vector(self.level)
        return sum((Fraction(c) * t for c, t in zip(self._num, tv) if c), Fraction(0)) / self._den

    def to_complex(self) -> complex:
        z = cmath.exp(2j * math.pi / self.level)
        return sum(c * z ** e for e, c in enumerate(self._num)) / self._den

    # -- comparison -----------------------------------------------------------
    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._common(other)
        return a._den == b._den and a._num == b._num

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.normalized_trace())
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    # -- rendering -------------------------------------------------------------
    def render(self, root: str = "z") -> str:
        """Canonical text ``a0 + a1*z + ...`` with rationals as ``p/q``."""
        parts = []
        for e, c in enumerate(self._num):
            if not c:
                continue
            q = Fraction(c, self._den)
            mag = abs(q)
            if e == 0:
                body = _frac_str(mag)
            else:
                pw = root if e == 1 else f"{root}^{e}"
                body = pw if mag == 1 else f"{_frac_str(mag)}*{pw}"
            parts.append(("-" if q < 0 else "+", body))
        if not parts:
            return "0"
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def is_compound(self) -> bool:
        return sum(1 for c in self._num if c) > 1

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"CycloScalar({self.level}, {self.render()!r})"


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _solve_fraction(mat: list[list[Fraction]], d: int) -> list[Fraction]:
    for col in range(d):
        piv = next(r for r in range(col, d) if mat[r][col] != 0)
        mat[col], mat[piv] = mat[piv], mat[col]
        inv = 1 / mat[col][col]
        mat[col] = [x * inv for x in mat[col]]
        for r in range(d):
            if r != col and mat[r][col]:
                f = mat[r][col]
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[col])]
    return [mat[r][d] for r in range(d)]


_ONE = CycloScalar.from_rational(1)
_ZERO = CycloScalar.from_rational(0)


def _coerce(x):
    if isinstance(x, CycloScalar):
        return x
    if isinstance(x, bool):
        return NotImplemented
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        return CycloScalar._raw(1, (x.numerator,), x.denominator)
    if isinstance(x, Rational):
        return _coerce(Fraction(x))
    return NotImplemented


def as_scalar(x) -> CycloScalar:
    """Coerce an int, Fraction or CycloScalar."""
    c = _coerce(x)
    if c is NotImplemented:
        raise TypeError(f"cannot interpret {x!r} as a cyclotomic scalar")
    return c


def cyclo_embed_root(L: int, e: int) -> CycloScalar:
    """The root of unity ``zeta_L^e`` in ``Q(zeta_L)``."""
    if L < 1:
        raise ValueError("level must be positive")
    row = _reduction_table(L)[e % L]
    return CycloScalar._raw(L, row, 1)


# ---------------------------------------------------------------------------
# Laurent polynomials in hbar

class HbarSeries:
    """Finite Laurent polynomial in hbar with cyclotomic coefficients.

    ``truncation_order`` caps the retained exponents; a value produced by
    dropping terms carries ``truncated=True`` and the flag propagates.
    """

    __slots__ = ("terms", "truncation_order", "truncated")

    def __init__(self, terms: Mapping[int, object] | None = None,
                 truncation_order: int | None = None, truncated: bool = False):
        clean: dict[int, CycloScalar] = {}
        for e, c in (terms or {}).items():
            c = as_scalar(c)
            if truncation_order is not None and e > truncation_order:
                truncated = True
                continue
            if not c.is_zero():
                clean[int(e)] = c
        self.terms = clean
        self.truncation_order = truncation_order
        self.truncated = truncated

    @classmethod
    def const(cls, c) -> "HbarSeries":
        return cls({0: c})

    @classmethod
    def hbar(cls, power: int = 1) -> "HbarSeries":
        return cls({power: 1})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, e: int) -> CycloScalar:
        return self.terms.get(e, _ZERO)

    def lowest(self) -> int:
        if not self.terms:
            raise ValueError("zero series has no lowest exponent")
        return min(self.terms)

    def highest(self) -> int:
        if not self.terms:
            raise ValueError("zero series has no highest exponent")
        return max(self.terms)

    def _merge_order(self, other: "HbarSeries") -> int | None:
        orders = [o for o in (self.truncation_order, other.truncation_order) if o is not None]
        return min(orders) if orders else None

    def __add__(self, other):
        other = _hcoerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms[e] + c if e in terms else c
        return HbarSeries(terms, self._merge_order(other), self.truncated or other.truncated)

    __radd__ = __add__

    def __neg__(self):
        return HbarSeries({e: -c for e, c in self.terms.items()},
                          self.truncation_order, self.truncated)

    def __sub__(self, other):
        other = _hcoerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _hcoerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _hcoerce(other)
        if other is NotImplemented:
            return NotImplemented
        order = self._merge_order(other)
        terms: dict[int, CycloScalar] = {}
        truncated = self.truncated or other.truncated
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                if order is not None and e > order:
                    truncated = True
                    continue
                p = c1 * c2
                terms[e] = terms[e] + p if e in terms else p
        return HbarSeries(terms, order, truncated)

    __rmul__ = __mul__

    def shift(self, k: int) -> "HbarSeries":
        """Multiply by ``hbar**k``."""
        order = None if self.truncation_order is None else self.truncation_order + k
        return HbarSeries({e + k: c for e, c in self.terms.items()}, order, self.truncated)

    def inverse(self, truncation_order: int | None = None) -> "HbarSeries":
        if not self.terms:
            raise NonInvertibleError("zero series is not invertible")
        low = self.lowest()
        lead = self.terms[low]
        if len(self.terms) == 1:
            return HbarSeries({-low: lead.inverse()}, truncation_order, self.truncated)
        order = truncation_order if truncation_order is not None else self.truncation_order
        if order is None:
            raise NonInvertibleError(
                "inverse of a non-monomial Laurent polynomial needs a truncation_order")
        # normalize x = lead*h^low*(1 + r), invert 1 + r up to the cap
        inv_lead = lead.inverse()
        r = {e - low: c * inv_lead for e, c in self.terms.items() if e != low}
        span = order + low
        out = {0: _ONE}
        for m in range(1, span + 1):
            acc = _ZERO
            for e, c in r.items():
                if e <= m and (m - e) in out:
                    acc = acc - c * out[m - e]
            if not acc.is_zero():
                out[m] = acc
        return HbarSeries({e - low: c * inv_lead for e, c in out.items()}, order, True)

    def __truediv__(self, other):
        other = _hcoerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = HbarSeries({0: 1}, self.truncation_order)
        for _ in range(k):
            result = result * self
        return result

    def conj(self) -> "HbarSeries":
        return HbarSeries({e: c.conj() for e, c in self.terms.items()},
                          self.truncation_order, self.truncated)

    def __eq__(self, other):
        other = _hcoerce(other)
        if other is NotImplemented:
            return NotImplemented
        if set(self.terms) != set(other.terms):
            return False
        return all(self.terms[e] == other.terms[e] for e in self.terms)

    def __hash__(self):
        return hash(tuple(sorted((e, hash(c)) for e, c in self.terms.items())))

    def render(self, root: str = "z") -> str:
        if not self.terms:
            return "0"
        pieces = []
        for e in sorted(self.terms):
            pieces.append(render_term(self.terms[e], [f"h^{e}" if e != 1 else "h"] if e else [], root))
        return join_terms(pieces)

    def __str__(self):
        return self.render()

    def __repr__(self):
        flag = ", truncated" if self.truncated else ""
        return f"HbarSeries({self.render()!r}{flag})"


def render_term(c: CycloScalar, factors: list[str], root: str = "z") -> str:
    """Render ``c * f1 * f2 ...`` with a leading ``-`` for negative rationals."""
    if not factors:
        return c.render(root)
    body = "*".join(factors)
    if c.is_rational():
        q = c.to_fraction()
        if q == 1:
            return body
        if q == -1:
            return "-" + body
        return f"{_frac_str(q)}*{body}"
    if not c.is_compound():
        return f"{c.render(root)}*{body}"
    return f"({c.render(root)})*{body}"


def join_terms(pieces: Iterable[str]) -> str:
    out = ""
    for i, p in enumerate(pieces):
        if i == 0:
            out = p
        elif p.startswith("-"):
            out += " - " + p[1:]
        else:
            out += " + " + p
    return out or "0"


def _hcoerce(x):
    if isinstance(x, HbarSeries):
        return x
    c = _coerce(x)
    if c is NotImplemented:
        return NotImplemented
    return HbarSeries({0: c})


# ---------------------------------------------------------------------------
# truncated series in an auxiliary parameter t, t^(order+1) = 0

class TruncSeries:
    """Power series ``c_0 + c_1 t + ... + c_O t^O`` with HbarSeries coefficients."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Iterable[object] = ()):
        if order < 0:
            raise ValueError("order must be non-negative")
        cs = [_hcoerce(c) if not isinstance(c, HbarSeries) else c for c in coeffs]
        if any(c is NotImplemented for c in cs):
            raise TypeError("coefficients must be scalars or HbarSeries")
        cs = cs[: order + 1]
        cs += [HbarSeries()] * (order + 1 - len(cs))
        self.order = order
        self.coeffs = tuple(cs)

    @classmethod
    def t(cls, order: int) -> "TruncSeries":
        return cls(order, [0, 1])

    def __getitem__(self, i: int) -> HbarSeries:
        return self.coeffs[i] if 0 <= i <= self.order else HbarSeries()

    def _binary_order(self, other: "TruncSeries") -> int:
        return min(self.order, other.order)

    def __add__(self, other):
        other = _tcoerce(other, self.order)
        o = self._binary_order(other)
        return TruncSeries(o, [self[i] + other[i] for i in range(o + 1)])

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries(self.order, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_tcoerce(other, self.order))

    def __rsub__(self, other):
        return _tcoerce(other, self.order) + (-self)

    def __mul__(self, other):
        other = _tcoerce(other, self.order)
        o = self._binary_order(other)
        out = [HbarSeries() for _ in range(o + 1)]
        for i in range(o + 1):
            if self[i].is_zero():
                continue
            for j in range(o + 1 - i):
                if not other[j].is_zero():
                    out[i + j] = out[i + j] + self[i] * other[j]
        return TruncSeries(o, out)

    __rmul__ = __mul__

    def scale_param(self, factor) -> "TruncSeries":
        """Substitute ``t -> factor * t``."""
        f = _hcoerce(factor)
        out, pw = [], HbarSeries.const(1)
        for c in self.coeffs:
            out.append(c * pw)
            pw = pw * f
        return TruncSeries(self.order, out)

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            other = _tcoerce(other, self.order)
        o = max(self.order, other.order)
        return all(self[i] == other[i] for i in range(o + 1))

    def __repr__(self):
        body = join_terms(
            f"({c.render()})*t^{i}" if i else c.render()
            for i, c in enumerate(self.coeffs) if not c.is_zero())
        return f"TruncSeries(O={self.order}: {body})"


def _tcoerce(x, order: int) -> TruncSeries:
    if isinstance(x, TruncSeries):
        return x
    return TruncSeries(order, [x])


def series_exp(x: TruncSeries) -> TruncSeries:
    """exp(x) modulo t^(O+1); x must have zero constant term."""
    if not x[0].is_zero():
        raise ValueError("series_exp needs a zero constant term")
    result = TruncSeries(x.order, [1])
    term = TruncSeries(x.order, [1])
    for m in range(1, x.order + 1):
        term = term * x
        term = TruncSeries(term.order, [c * Fraction(1, m) for c in term.coeffs])
        result = result + term
    return result


def series_invert(x: TruncSeries) -> TruncSeries:
    """Multiplicative inverse modulo t^(O+1)."""
    c0 = x[0]
    if c0.is_zero():
        raise NonInvertibleError("series with zero constant term is not invertible")
    inv0 = c0.inverse()
    out = [inv0]
    for m in range(1, x.order + 1):
        acc = HbarSeries()
        for j in range(1, m + 1):
            if not x[j].is_zero():
                acc = acc + x[j] * out[m - j]
        out.append(-(acc * inv0))
    return TruncSeries(x.order, out)


def series_log(x: TruncSeries) -> TruncSeries:
    """log(x) for x with constant term 1."""
    if x[0] != 1:
        raise ValueError("series_log needs constant term 1")
    y = x - 1
    result = TruncSeries(x.order)
    power = TruncSeries(x.order, [1])
    for m in range(1, x.order + 1):
        power = power * y
        sign = 1 if m % 2 else -1
        result = result + TruncSeries(x.order, [c * Fraction(sign, m) for c in power.coeffs])
    return result
