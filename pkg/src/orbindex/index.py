"""Characteristic classes on truncated cohomology rings and the orbifold index.

Every curvature input is a normalized class (curvature divided by ``2 pi i``),
so all arithmetic stays inside cyclotomic fields.  A sector contributes
``(1/m) int Ch_theta(E - F) * normal_factor * Ahat * exp(-omega/hbar)``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Mapping, Sequence

import jsonschema

from .parse import DomainError, ParseError, ScalarContext, parse, parse_scalar
from .scalars import CycloScalar, HbarSeries, as_scalar, cyclo_embed_root

__all__ = [
    "CohomologyModel", "RingElement", "SectorData", "BundleBlock", "OrbifoldModel",
    "ahat_coefficients", "a_hat", "twisted_chern", "normal_det", "normal_factor",
    "sector_contribution", "algebraic_index", "kawasaki_index", "lefschetz_oracle",
    "LefschetzData", "FixedPoint", "ModelError", "ModelInconsistencyError",
    "load_model", "model_from_dict", "MODEL_SCHEMA",
    "football_model", "t2_z2_model", "pt_zn_model", "gallery",
]

_ZERO = CycloScalar.from_rational(0)
_ONE = CycloScalar.from_rational(1)


class ModelError(ValueError):
    """Schema violation; ``path`` locates the offending field."""

    def __init__(self, message: str, path: str = "$"):
        super().__init__(f"{path}: {message}")
        self.path = path


class ModelInconsistencyError(ArithmeticError):
    """A geometric model produced a non-integral index."""


# ---------------------------------------------------------------------------
# truncated rings

@dataclass(frozen=True)
class CohomologyModel:
    """Polynomial ring on even-degree generators, truncated above ``top_degree``.

    ``integrals`` assigns a value to top-degree monomials; unlisted ones
    integrate to zero.
    """

    names: tuple[str, ...]
    degrees: tuple[int, ...]
    top_degree: int
    integrals: Mapping[tuple[int, ...], CycloScalar] = field(default_factory=dict)

    def __post_init__(self):
        if len(self.names) != len(self.degrees):
            raise ValueError("one degree per generator")
        for d in self.degrees:
            if d <= 0 or d % 2:
                raise ValueError("generators must have positive even degree")
        for mono in self.integrals:
            if self.mono_degree(mono) != self.top_degree:
                raise ValueError("integrals are only given on top-degree monomials")

    def __hash__(self):
        return hash((self.names, self.degrees, self.top_degree))

    def mono_degree(self, mono: tuple[int, ...]) -> int:
        return sum(e * d for e, d in zip(mono, self.degrees))

    def one(self) -> "RingElement":
        return RingElement(self, {self.zero_mono(): _ONE})

    def zero(self) -> "RingElement":
        return RingElement(self, {})

    def zero_mono(self) -> tuple[int, ...]:
        return (0,) * len(self.names)

    def gen(self, name: str) -> "RingElement":
        i = self.names.index(name)
        mono = [0] * len(self.names)
        mono[i] = 1
        return RingElement(self, {tuple(mono): _ONE})

    def scalar(self, c) -> "RingElement":
        return RingElement(self, {self.zero_mono(): as_scalar(c)})


class RingElement:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: CohomologyModel, terms: Mapping[tuple[int, ...], object]):
        self.ring = ring
        clean = {}
        for m, c in terms.items():
            c = as_scalar(c)
            if not c.is_zero() and ring.mono_degree(m) <= ring.top_degree:
                clean[m] = c
        self.terms = clean

    def _coerce(self, other) -> "RingElement":
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise ValueError("elements of different rings")
            return other
        return self.ring.scalar(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] + c if m in out else c
        return RingElement(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return RingElement(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, RingElement):
            c = as_scalar(other)
            return RingElement(self.ring, {m: x * c for m, x in self.terms.items()})
        other = self._coerce(other)
        out: dict = {}
        top = self.ring.top_degree
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                if self.ring.mono_degree(m) > top:
                    continue
                out[m] = out[m] + c1 * c2 if m in out else c1 * c2
        return RingElement(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def constant(self) -> CycloScalar:
        return self.terms.get(self.ring.zero_mono(), _ZERO)

    def degree_part(self, d: int) -> "RingElement":
        return RingElement(self.ring, {m: c for m, c in self.terms.items()
                                       if self.ring.mono_degree(m) == d})

    def nilpotent_part(self) -> "RingElement":
        return self - self.constant()

    def is_zero(self) -> bool:
        return not self.terms

    def integral(self) -> CycloScalar:
        out = _ZERO
        for m, c in self.terms.items():
            if m in self.ring.integrals:
                out = out + c * self.ring.integrals[m]
        return out

    def apply_series(self, coeffs: Sequence) -> "RingElement":
        """``sum_j coeffs[j] x^j`` for nilpotent ``x`` (enough terms must be supplied)."""
        if not self.constant().is_zero():
            raise ValueError("series argument must be nilpotent")
        out = self.ring.zero()
        power = self.ring.one()
        for c in coeffs:
            if power.is_zero():
                break
            out = out + power * c
            power = power * self
        return out

    def inverse(self) -> "RingElement":
        c0 = self.constant()
        if c0.is_zero():
            raise ZeroDivisionError("constant term is zero")
        inv0 = c0.inverse()
        u = self.nilpotent_part() * inv0
        steps = self.ring.top_degree // 2 + 1
        return u.apply_series([(-1) ** j for j in range(steps + 1)]) * inv0

    def __eq__(self, other):
        other = self._coerce(other)
        return self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items()):
            f = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(self.ring.names, m) if e)
            parts.append(f"({c})*{f}" if f else f"({c})")
        return " + ".join(parts)


def _exp_coeffs(n: int) -> list[Fraction]:
    return [Fraction(1, math.factorial(j)) for j in range(n + 1)]


@lru_cache(maxsize=None)
def ahat_coefficients(order: int) -> tuple[Fraction, ...]:
    """Taylor coefficients of ``x / (e^(x/2) - e^(-x/2))`` through ``x^order``."""
    # denominator / x = sum_j (1/2)^(2j) / (2j+1)! x^(2j)
    den = [Fraction(1, 2 ** j * math.factorial(j + 1)) if j % 2 == 0 else Fraction(0)
           for j in range(order + 1)]
    out: list[Fraction] = []
    for m in range(order + 1):
        s = Fraction(1 if m == 0 else 0) - sum((den[j] * out[m - j] for j in range(1, m + 1)),
                                               Fraction(0))
        out.append(s / den[0])
    return tuple(out)


# ---------------------------------------------------------------------------
# sector data

@dataclass
class BundleBlock:
    """A theta-eigenbundle: eigenvalue ``mu`` and Chern roots."""

    mu: CycloScalar
    roots: list[RingElement]


@dataclass
class SectorData:
    name: str
    k: int
    m: int
    ring: CohomologyModel
    tangent_roots: list[RingElement] = field(default_factory=list)
    normal_blocks: list[tuple[CycloScalar, RingElement]] = field(default_factory=list)
    omega: RingElement | None = None
    E: list[BundleBlock] = field(default_factory=list)
    F: list[BundleBlock] = field(default_factory=list)

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be a positive integer")
        if self.ring.top_degree != 2 * self.k:
            raise ValueError("top degree must equal 2k")
        if len(self.tangent_roots) != self.k:
            raise ValueError("one tangent Chern root per complex dimension")
        for lam, _ in self.normal_blocks:
            if lam == 1:
                raise DomainError(f"sector {self.name}: normal eigenvalue equal to 1")


@dataclass
class OrbifoldModel:
    sectors: list[SectorData]
    name: str = ""
    geometric: bool = True
    oracle: "LefschetzData | None" = None

    def levels(self) -> int:
        """``lcm`` of the cyclotomic levels appearing in the data."""
        L = 1
        for s in self.sectors:
            for lam, _ in s.normal_blocks:
                L = math.lcm(L, lam.level)
            for b in s.E + s.F:
                L = math.lcm(L, b.mu.level)
        return L


def _check_degree2(x: RingElement, what: str):
    for m in x.terms:
        if x.ring.mono_degree(m) != 2:
            raise ValueError(f"{what} must be a degree-2 class")


def a_hat(sector: SectorData) -> RingElement:
    """``prod_i x_i / (e^(x_i/2) - e^(-x_i/2))``."""
    ring = sector.ring
    coeffs = ahat_coefficients(ring.top_degree // 2 + 1)
    out = ring.one()
    for x in sector.tangent_roots:
        _check_degree2(x, "tangent root")
        out = out * x.apply_series(coeffs)
    return out


def twisted_chern(blocks: Sequence[BundleBlock], ring: CohomologyModel) -> RingElement:
    """``sum_b mu_b sum_roots e^root``."""
    out = ring.zero()
    coeffs = _exp_coeffs(ring.top_degree // 2 + 1)
    for b in blocks:
        for r in b.roots:
            if not r.is_zero():
                _check_degree2(r, "Chern root")
            out = out + r.apply_series(coeffs) * b.mu
    return out


def normal_det(sector: SectorData) -> RingElement:
    """``prod_j (1 - lam_j^-1 e^(-n_j))``."""
    ring = sector.ring
    coeffs = _exp_coeffs(ring.top_degree // 2 + 1)
    out = ring.one()
    for lam, n in sector.normal_blocks:
        if lam == 1:
            raise DomainError("normal eigenvalue equal to 1")
        if not n.is_zero():
            _check_degree2(n, "normal root")
        out = out * (ring.one() - (-n).apply_series(coeffs) * lam.inverse())
    return out


def normal_factor(sector: SectorData) -> RingElement:
    """Inverse of :func:`normal_det` in the truncated ring."""
    return normal_det(sector).inverse()


def sector_contribution(sector: SectorData, E=None, F=None, with_omega: bool = True) -> HbarSeries:
    """``(1/m) int Ch_theta(E - F) normal_factor Ahat exp(-omega/hbar)`` as a series in hbar."""
    ring = sector.ring
    E = sector.E if E is None else E
    F = sector.F if F is None else F
    base = (twisted_chern(E, ring) - twisted_chern(F, ring)) * normal_factor(sector) * a_hat(sector)
    wm = Fraction(1, sector.m)
    if not with_omega or sector.omega is None or sector.omega.is_zero():
        return HbarSeries.const(base.integral() * wm)
    om = sector.omega
    if not om.constant().is_zero():
        raise ValueError("omega class must be nilpotent")
    terms = {}
    power = ring.one()
    for j in range(ring.top_degree // 2 + 1):
        v = (base * power).integral() * Fraction((-1) ** j, math.factorial(j)) * wm
        if not v.is_zero():
            terms[-j] = v
        power = power * om
    return HbarSeries(terms)


def algebraic_index(model: OrbifoldModel) -> HbarSeries:
    total = HbarSeries()
    for s in model.sectors:
        total = total + sector_contribution(s)
    return total


def kawasaki_index(model: OrbifoldModel, check_integral: bool = True) -> CycloScalar:
    """The index with the symplectic class ignored.

    On a model flagged geometric a non-integral value raises
    :class:`ModelInconsistencyError`.
    """
    total = _ZERO
    for s in model.sectors:
        total = total + sector_contribution(s, with_omega=False).coefficient(0)
    if check_integral and model.geometric:
        if not total.is_rational() or total.to_fraction().denominator != 1:
            raise ModelInconsistencyError(f"index {total} of a geometric model is not an integer")
    return total


# ---------------------------------------------------------------------------
# fixed-point oracle

@dataclass
class FixedPoint:
    """Isolated fixed point: rotation eigenvalues of ``d gamma`` and fibre character."""

    eigenvalues: list[CycloScalar]
    mu: CycloScalar


@dataclass
class LefschetzData:
    """Group order, the identity term ``chi(X, E)`` and fixed points per non-identity element."""

    order: int
    identity_term: CycloScalar
    fixed_points: list[list[FixedPoint]]  # one list per non-identity element


def lefschetz_oracle(data: LefschetzData) -> CycloScalar:
    """``(1/|G|) [chi(X, E) + sum_{g != e} sum_p mu_p(g) / det(1 - dg_p^-1)]``."""
    if len(data.fixed_points) != data.order - 1:
        raise ValueError("one fixed-point list per non-identity element")
    total = as_scalar(data.identity_term)
    for pts in data.fixed_points:
        for p in pts:
            den = _ONE
            for lam in p.eigenvalues:
                if lam == 1:
                    raise DomainError("fixed set is not isolated")
                den = den * (1 - lam.inverse())
            total = total + p.mu * den.inverse()
    return total * Fraction(1, data.order)


# ---------------------------------------------------------------------------
# model files

_BLOCK = {
    "type": "object",
    "required": ["mu", "roots"],
    "additionalProperties": False,
    "properties": {"mu": {"type": "string"},
                   "roots": {"type": "array", "items": {"type": "string"}}},
}

MODEL_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": ["sectors"],
    "additionalProperties": False,
    "properties": {
        "name": {"type": "string"},
        "description": {"type": "string"},
        "geometric": {"type": "boolean"},
        "sectors": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "k", "m", "top_degree", "generators", "integrals", "bundles"],
                "additionalProperties": False,
                "properties": {
                    "name": {"type": "string"},
                    "k": {"type": "integer", "minimum": 0},
                    "m": {"type": "integer", "minimum": 1},
                    "top_degree": {"type": "integer", "minimum": 0},
                    "generators": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["name", "degree"],
                            "additionalProperties": False,
                            "properties": {
                                "name": {"type": "string", "pattern": "^[A-Za-z_][A-Za-z_0-9]*$"},
                                "degree": {"type": "integer", "minimum": 2, "multipleOf": 2},
                            },
                        },
                    },
                    "integrals": {"type": "object", "additionalProperties": {"type": "string"}},
                    "tangent_roots": {"type": "array", "items": {"type": "string"}},
                    "normal_blocks": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["lambda", "root"],
                            "additionalProperties": False,
                            "properties": {"lambda": {"type": "string"}, "root": {"type": "string"}},
                        },
                    },
                    "omega": {"type": "string"},
                    "bundles": {
                        "type": "object",
                        "required": ["E"],
                        "additionalProperties": False,
                        "properties": {"E": {"type": "array", "items": _BLOCK},
                                       "F": {"type": "array", "items": _BLOCK}},
                    },
                },
            },
        },
        "oracle": {
            "type": "object",
            "required": ["order", "identity_term", "fixed_points"],
            "additionalProperties": False,
            "properties": {
                "order": {"type": "integer", "minimum": 1},
                "identity_term": {"type": "string"},
                "fixed_points": {
                    "type": "array",
                    "items": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["eigenvalues", "mu"],
                            "additionalProperties": False,
                            "properties": {
                                "eigenvalues": {"type": "array", "items": {"type": "string"}},
                                "mu": {"type": "string"},
                            },
                        },
                    },
                },
            },
        },
    },
}


def _json_path(parts) -> str:
    out = "$"
    for p in parts:
        out += f"[{p}]" if isinstance(p, int) else f".{p}"
    return out


class _RingContext(ScalarContext):
    def __init__(self, ring: CohomologyModel):
        self.ring = ring

    def _lift(self, v):
        return v if isinstance(v, RingElement) else self.ring.scalar(v)

    def as_scalar(self, v):
        if isinstance(v, CycloScalar):
            return v
        if isinstance(v, RingElement) and set(v.terms) <= {self.ring.zero_mono()}:
            return v.constant()
        return None

    def add(self, a, b):
        if isinstance(a, CycloScalar) and isinstance(b, CycloScalar):
            return a + b
        return self._lift(a) + self._lift(b)

    def mul(self, a, b):
        if isinstance(a, CycloScalar) and isinstance(b, CycloScalar):
            return a * b
        return self._lift(a) * self._lift(b)

    def pow(self, a, k):
        return a ** k

    def name(self, s):
        if s in self.ring.names:
            return self.ring.gen(s)
        raise KeyError(f"unknown generator {s!r}")


def _parse_at(text: str, ctx, path: str):
    try:
        return parse(text, ctx)
    except ParseError as e:
        raise ModelError(f"{e.message} at position {e.position} in {text!r}", path) from None


def _ring_el(text: str, ring: CohomologyModel, path: str) -> RingElement:
    v = _parse_at(text, _RingContext(ring), path)
    return v if isinstance(v, RingElement) else ring.scalar(v)


def _scalar(text: str, path: str) -> CycloScalar:
    return _parse_at(text, ScalarContext(), path)


def _mono(text: str, ring: CohomologyModel, path: str) -> tuple[int, ...]:
    x = _ring_el(text, ring, path)
    if len(x.terms) != 1 or next(iter(x.terms.values())) != 1:
        raise ModelError(f"{text!r} is not a monomial", path)
    return next(iter(x.terms))


def model_from_dict(data: dict) -> OrbifoldModel:
    """Validate against :data:`MODEL_SCHEMA` and build the model."""
    v = jsonschema.Draft7Validator(MODEL_SCHEMA)
    errors = sorted(v.iter_errors(data), key=lambda e: list(e.absolute_path))
    if errors:
        e = errors[0]
        raise ModelError(e.message, _json_path(e.absolute_path))
    sectors = []
    for i, s in enumerate(data["sectors"]):
        base = f"$.sectors[{i}]"
        names = tuple(g["name"] for g in s["generators"])
        if len(set(names)) != len(names) or any(n in ("h", "zeta") for n in names):
            raise ModelError("generator names must be distinct and not reserved", base + ".generators")
        degrees = tuple(g["degree"] for g in s["generators"])
        if s["top_degree"] != 2 * s["k"]:
            raise ModelError("top_degree must equal 2k", base + ".top_degree")
        ring0 = CohomologyModel(names, degrees, s["top_degree"])
        integrals = {}
        for key, val in s["integrals"].items():
            p = f"{base}.integrals.{key}"
            mono = ring0.zero_mono() if key.strip() == "1" else _mono(key, ring0, p)
            if ring0.mono_degree(mono) != s["top_degree"]:
                raise ModelError("integral given on a monomial that is not of top degree", p)
            integrals[mono] = _scalar(val, p)
        ring = CohomologyModel(names, degrees, s["top_degree"], integrals)
        tangent = [_ring_el(t, ring, f"{base}.tangent_roots[{j}]")
                   for j, t in enumerate(s.get("tangent_roots", []))]
        if len(tangent) != s["k"]:
            raise ModelError("need exactly k tangent roots", base + ".tangent_roots")
        normals = []
        for j, nb in enumerate(s.get("normal_blocks", [])):
            p = f"{base}.normal_blocks[{j}]"
            lam = _scalar(nb["lambda"], p + ".lambda")
            if lam == 1:
                raise DomainError(f"{p}.lambda: normal eigenvalue equal to 1")
            normals.append((lam, _ring_el(nb["root"], ring, p + ".root")))
        omega = _ring_el(s["omega"], ring, base + ".omega") if "omega" in s else None

        def blocks(key):
            out = []
            for j, b in enumerate(s["bundles"].get(key, [])):
                p = f"{base}.bundles.{key}[{j}]"
                out.append(BundleBlock(_scalar(b["mu"], p + ".mu"),
                                       [_ring_el(r, ring, f"{p}.roots[{t}]")
                                        for t, r in enumerate(b["roots"])]))
            return out

        try:
            sectors.append(SectorData(s["name"], s["k"], s["m"], ring, tangent, normals, omega,
                                      blocks("E"), blocks("F")))
        except DomainError:
            raise
        except ValueError as exc:
            raise ModelError(str(exc), base) from None
    oracle = None
    if "oracle" in data:
        o = data["oracle"]
        pts = [[FixedPoint([_scalar(x, f"$.oracle.fixed_points[{i}][{j}].eigenvalues")
                            for x in fp["eigenvalues"]],
                           _scalar(fp["mu"], f"$.oracle.fixed_points[{i}][{j}].mu"))
                for j, fp in enumerate(lst)]
               for i, lst in enumerate(o["fixed_points"])]
        if len(pts) != o["order"] - 1:
            raise ModelError("one fixed-point list per non-identity element", "$.oracle.fixed_points")
        oracle = LefschetzData(o["order"], _scalar(o["identity_term"], "$.oracle.identity_term"), pts)
    return OrbifoldModel(sectors, data.get("name", ""), data.get("geometric", True), oracle)


def load_model(path: str | Path) -> OrbifoldModel:
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ModelError(f"invalid JSON: {e.msg} (line {e.lineno}, column {e.colno})") from None
    return model_from_dict(data)


# ---------------------------------------------------------------------------
# surface models built from explicit group actions

def _zeta_text(n: int, e: int) -> str:
    e %= n
    if e == 0:
        return "1"
    return f"zeta({n})" if e == 1 else f"zeta({n})^{e}"


def _point_sector(name: str, m: int, lams: list[str], mus: list[str]) -> dict:
    return {
        "name": name, "k": 0, "m": m, "top_degree": 0, "generators": [],
        "integrals": {"1": "1"}, "tangent_roots": [],
        "normal_blocks": [{"lambda": lam, "root": "0"} for lam in lams],
        "bundles": {"E": [{"mu": mu, "roots": ["0"]} for mu in mus]},
    }


def football_model(m: int, c: Fraction | int = 0) -> dict:
    """``S^2 / Z_m`` by rotation, structure sheaf, symplectic class ``c * w``.

    The main sector carries ``c1`` with ``int c1 = 2/m`` (orbifold integral) and
    ``E = K^(-1/2)`` so that ``Ch(E) Ahat`` is the Todd class.  Each pole is a
    point with isotropy ``Z_m`` and one sector per non-trivial element.
    """
    if m < 2:
        raise ValueError("m >= 2")
    c = Fraction(c)
    main = {
        "name": "main", "k": 1, "m": 1, "top_degree": 2,
        "generators": [{"name": "c1", "degree": 2}],
        "integrals": {"c1": str(Fraction(2, m))},
        "tangent_roots": ["c1"], "normal_blocks": [],
        "bundles": {"E": [{"mu": "1", "roots": ["c1/2"]}]},
    }
    if c:
        main["omega"] = f"{c}*c1/2"
    sectors = [main]
    fixed = []
    for j in range(1, m):
        # isotropy of a pole is all of Z_m, so m equals the centralizer order
        sectors.append(_point_sector(f"north_{j}", m, [_zeta_text(m, j)], ["1"]))
        sectors.append(_point_sector(f"south_{j}", m, [_zeta_text(m, -j)], ["1"]))
        fixed.append([{"eigenvalues": [_zeta_text(m, j)], "mu": "1"},
                      {"eigenvalues": [_zeta_text(m, -j)], "mu": "1"}])
    return {
        "name": f"football_z{m}", "geometric": True,
        "description": f"S^2/Z_{m} by rotation, structure sheaf",
        "sectors": sectors,
        "oracle": {"order": m, "identity_term": "1", "fixed_points": fixed},
    }


def t2_z2_model() -> dict:
    """``T^2 / Z_2`` by ``z -> -z``: four fixed points, structure sheaf."""
    main = {
        "name": "main", "k": 1, "m": 1, "top_degree": 2,
        "generators": [{"name": "w", "degree": 2}],
        "integrals": {"w": "1/2"},
        "tangent_roots": ["0"], "normal_blocks": [],
        "bundles": {"E": [{"mu": "1", "roots": ["0"]}]},
    }
    sectors = [main] + [_point_sector(f"fixed_{p}", 2, ["-1"], ["1"]) for p in range(4)]
    return {
        "name": "t2_z2", "geometric": True,
        "description": "T^2/Z_2 by the elliptic involution, structure sheaf",
        "sectors": sectors,
        "oracle": {"order": 2, "identity_term": "0",
                   "fixed_points": [[{"eigenvalues": ["-1"], "mu": "1"} for _ in range(4)]]},
    }


def pt_zn_model(N: int, weights: Sequence[int] | None = None, name: str | None = None) -> dict:
    """``[pt / Z_N]`` with ``E`` the sum of characters ``g -> zeta^a`` for ``a`` in ``weights``."""
    weights = [0] if weights is None else list(weights)
    sectors = []
    for j in range(N):
        mus = [_zeta_text(N, a * j) for a in weights]
        sectors.append(_point_sector(f"g{j}", N, [], mus))
    fixed = [[{"eigenvalues": [], "mu": _sum_text([_zeta_text(N, a * j) for a in weights])}]
             for j in range(1, N)]
    return {
        "name": name or f"pt_z{N}_" + "_".join(map(str, weights)), "geometric": True,
        "description": f"[pt/Z_{N}] with characters {weights}",
        "sectors": sectors,
        "oracle": {"order": N, "identity_term": str(len(weights)), "fixed_points": fixed},
    }


def _sum_text(items: list[str]) -> str:
    return " + ".join(items) if items else "0"


def gallery() -> dict[str, dict]:
    """The shipped model files, keyed by file stem."""
    out = {}
    for N in range(1, 9):
        for a in range(N):
            out[f"pt_z{N}_chi{a}"] = pt_zn_model(N, [a], f"pt_z{N}_chi{a}")
    out["pt_z3_regular"] = pt_zn_model(3, [0, 1, 2], "pt_z3_regular")
    for m in (2, 3, 4):
        out[f"football_z{m}"] = football_model(m)
    out["t2_z2"] = t2_z2_model()
    out["empty"] = {"name": "empty", "geometric": True, "sectors": []}
    return out
