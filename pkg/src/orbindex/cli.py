"""Command-line front end.

Exit codes: 0 ok, 1 a verification failed, 2 parse or schema error,
3 domain error, 4 unsupported range.  Results go to stdout, diagnostics
to stderr.
"""
from __future__ import annotations

import argparse
import json
import math
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Sequence

from . import linalg as la
from .cocycles import (TwistedTraceData, cochain_coboundary, split_space, tau_twisted)
from .hochschild import hkr_oracle, koszul_twisted_hh
from .index import (ModelError, ModelInconsistencyError, algebraic_index, kawasaki_index,
                    lefschetz_oracle, load_model)
from .lie import UnsupportedError, curvature_C, rr_arguments, verify_local_rr
from .parse import DomainError, ParseError, parse_scalar, parse_weyl, weyl_space_for
from .scalars import CycloScalar, HbarSeries, cyclo_embed_root
from .cocycles import tr_gamma
from .symplectic import SymplecticMap
from .weyl import WeylElement, WeylSpace, moyal_star, random_element

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_DOMAIN, EXIT_UNSUPPORTED = 0, 1, 2, 3, 4

MODELS_DIR = Path(__file__).parent / "models"


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


# ---------------------------------------------------------------------------
# rendering at a fixed cyclotomic level

def at_level(c: CycloScalar, L: int) -> CycloScalar:
    """``c`` written in ``Q(zeta_L)``; descends through ``gcd(L, level)`` when needed."""
    if L % c.level == 0:
        return c.lift(L)
    M = math.gcd(L, c.level)
    # solve c = sum_j x_j zeta_M^j over Q, comparing at level c.level
    basis = [cyclo_embed_root(M, j).lift(c.level) for j in range(_phi(M))]
    n = _phi(c.level)
    cols = [[b.coeffs.get(i, Fraction(0)) for i in range(n)] for b in basis]
    target = [c.coeffs.get(i, Fraction(0)) for i in range(n)]
    aug = la.to_matrix([[cols[j][i] for j in range(len(basis))] + [target[i]] for i in range(n)])
    m, piv = la.rref(aug)
    if len(basis) in piv:
        raise DomainError(f"value {c} does not lie in Q(zeta_{L})")
    x = [CycloScalar.from_rational(0)] * len(basis)
    for r, pc in enumerate(piv):
        x[pc] = m[r][len(basis)]
    out = CycloScalar.from_rational(0)
    for j, xj in enumerate(x):
        out = out + cyclo_embed_root(M, j) * xj
    return out.lift(L)


def _phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


@dataclass
class Renderer:
    level: int

    @property
    def root(self) -> str:
        return f"zeta({self.level})"

    def scalar(self, c: CycloScalar) -> str:
        return at_level(c, self.level).render(self.root)

    def series(self, s: HbarSeries) -> str:
        return HbarSeries({e: at_level(c, self.level) for e, c in s.terms.items()}).render(self.root)

    def weyl(self, a: WeylElement) -> str:
        lifted = WeylElement(a.space, {k: at_level(c, self.level) for k, c in a.terms.items()})
        return lifted.render(self.root)


def _levels_of(values) -> int:
    L = 1
    for v in values:
        if isinstance(v, CycloScalar):
            L = math.lcm(L, v.level)
        elif isinstance(v, HbarSeries):
            L = math.lcm(L, _levels_of(v.terms.values()))
        elif isinstance(v, WeylElement):
            L = math.lcm(L, _levels_of(v.terms.values()))
    return L


def _renderer(args, *values, base: int = 1) -> Renderer:
    if args.level is not None:
        if args.level < 1:
            raise CliError(EXIT_DOMAIN, "--level must be positive")
        return Renderer(args.level)
    return Renderer(math.lcm(base, _levels_of(values)))


# ---------------------------------------------------------------------------
# output

@dataclass
class Item:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class Report:
    suite: str
    items: list[Item] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(i.passed for i in self.items)


def _emit(args, payload: dict, text_lines: Sequence[str]):
    if args.format == "structured":
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        for line in text_lines:
            sys.stdout.write(line + "\n")


def _emit_report(args, rep: Report) -> int:
    lines = []
    for it in rep.items:
        line = f"{'PASS' if it.passed else 'FAIL'} {it.name}"
        if it.detail:
            line += f": {it.detail}"
        lines.append(line)
    n_ok = sum(i.passed for i in rep.items)
    lines.append(f"{rep.suite}: {n_ok}/{len(rep.items)} passed")
    payload = {"suite": rep.suite, "passed": rep.passed,
               "items": [{"name": i.name, "passed": i.passed, "detail": i.detail} for i in rep.items]}
    _emit(args, payload, lines)
    return EXIT_OK if rep.passed else EXIT_FAIL


def _run_items(args, jobs: Sequence[Callable[[], Item]]) -> list[Item]:
    """Run independent checks, keeping input order whatever the thread count."""
    n = max(1, args.jobs)
    if n == 1:
        return [j() for j in jobs]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(lambda f: f(), jobs))


# ---------------------------------------------------------------------------
# commands

def cmd_star(args) -> int:
    try:
        space = weyl_space_for(args.exprs, args.n)
    except DomainError as e:
        raise CliError(EXIT_DOMAIN, str(e))
    elems = []
    for text in args.exprs:
        try:
            elems.append(parse_weyl(text, space))
        except ParseError as e:
            raise CliError(EXIT_PARSE, f"{e}\n{e.pointer()}")
    out = elems[0]
    for e in elems[1:]:
        out = moyal_star(out, e)
    if args.order is not None:
        out = WeylElement(space, {k: c for k, c in out.terms.items() if k[1] <= args.order})
    r = _renderer(args, out)
    text = r.weyl(out)
    _emit(args, {"command": "star", "level": r.level, "result": text}, [text])
    return EXIT_OK


def _parse_lambdas(texts: Sequence[str] | None) -> list[CycloScalar]:
    out = []
    for t in texts or []:
        for piece in _split_top(t):
            try:
                lam = parse_scalar(piece)
            except ParseError as e:
                raise CliError(EXIT_PARSE, f"{e}\n{e.pointer()}")
            if lam == 1:
                raise CliError(EXIT_DOMAIN, "normal eigenvalue equal to 1")
            if not _is_root_of_unity(lam):
                raise CliError(EXIT_DOMAIN, f"{piece} is not a root of unity")
            out.append(lam)
    return out


def _split_top(text: str) -> list[str]:
    """Split on commas outside parentheses."""
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            out.append(cur.strip())
            cur = ""
        else:
            cur += ch
    out.append(cur.strip())
    return [p for p in out if p]


def _is_root_of_unity(c: CycloScalar) -> bool:
    L = math.lcm(2, c.level)
    for e in range(L):
        if cyclo_embed_root(L, e) == c:
            return True
    return False


def _lam_text(lams) -> str:
    if not lams:
        return "none"
    return ",".join(Renderer(math.lcm(*[l.level for l in lams])).scalar(l) if not l.is_rational()
                    else str(l) for l in lams)


def _verify_cocycle(args) -> Report:
    k = args.k if args.k is not None else 1
    if k not in (1, 2):
        raise CliError(EXIT_UNSUPPORTED, "cocycle suite supports k in {1, 2}")
    lams = _parse_lambdas(args.lam) if args.lam else [CycloScalar.from_rational(-1)]
    if len(lams) > 2:
        raise CliError(EXIT_UNSUPPORTED, "cocycle suite supports at most 2 normal pairs")
    d = TwistedTraceData(tuple(lams))
    space = split_space(k, d)
    g = d.gamma(space)
    count = args.count if args.count is not None else (10 if k == 1 else 3)
    degree = 3 if k == 1 else 2
    rng = random.Random(args.seed)
    tuples = [[random_element(space, rng, max_degree=degree, n_terms=2) for _ in range(2 * k + 2)]
              for _ in range(count)]

    def job(i, slots):
        def run():
            v = cochain_coboundary(lambda c: tau_twisted(k, d, c), slots, g)
            detail = ""
            if not v.is_zero():
                r = Renderer(math.lcm(4, d_level(d)))
                detail = "b tau = " + r.series(v) + " on (" + ", ".join(r.weyl(s) for s in slots) + ")"
            return Item(f"cocycle k={k} lambda={_lam_text(lams)} tuple {i + 1}", v.is_zero(), detail)
        return run

    return Report("cocycle", _run_items(args, [job(i, s) for i, s in enumerate(tuples)]))


def d_level(d: TwistedTraceData) -> int:
    L = 1
    for x in d.eigenvalues + d.scales:
        L = math.lcm(L, x.level)
    return L


def _verify_trace(args) -> Report:
    lams = _parse_lambdas(args.lam) if args.lam else [CycloScalar.from_rational(-1)]
    if len(lams) > 3:
        raise CliError(EXIT_UNSUPPORTED, "trace suite supports at most 3 normal pairs")
    d = TwistedTraceData(tuple(lams))
    sp = d.normal_space()
    g = d.gamma()
    count = args.count if args.count is not None else 20
    rng = random.Random(args.seed)
    pairs = [(random_element(sp, rng, max_degree=4, n_terms=3),
              random_element(sp, rng, max_degree=4, n_terms=3)) for _ in range(count)]
    r = Renderer(math.lcm(4, d_level(d)))

    def unit():
        v = tr_gamma(d, WeylElement.const(sp))
        ok = v == HbarSeries.const(d.normalizer)
        return Item(f"trace lambda={_lam_text(lams)} tr(1) = det(1 - conj(gamma))^-1", ok,
                    "" if ok else f"tr(1) = {r.series(v)}")

    def job(i, a, b):
        def run():
            lhs = tr_gamma(d, moyal_star(a, b))
            rhs = tr_gamma(d, moyal_star(g(b), a))
            ok = lhs == rhs
            detail = "" if ok else f"{r.series(lhs)} != {r.series(rhs)} for ({r.weyl(a)}, {r.weyl(b)})"
            return Item(f"trace lambda={_lam_text(lams)} pair {i + 1}", ok, detail)
        return run

    return Report("trace", _run_items(args, [unit] + [job(i, a, b) for i, (a, b) in enumerate(pairs)]))


def _rr_choices(k: int, N: int, has_normal: int) -> list[list[tuple]]:
    per_slot = []
    for i in range(1, k + 1):
        opts = [("u", i, j) for j in range(1, k + 1)]
        opts += [("v", i, r) for r in range(1, N + 1)]
        opts += [("w", i, s) for s in range(1, has_normal + 1)]
        per_slot.append(opts)
    out = []
    for combo in _product(per_slot):
        out.append(list(combo))
    return out


def _product(lists):
    if not lists:
        yield ()
        return
    for x in lists[0]:
        for rest in _product(lists[1:]):
            yield (x,) + rest


def _choice_text(c) -> str:
    return f"{c[0]}{c[1]}{c[2]}"


def _verify_local_rr(args) -> Report:
    k = args.k if args.k is not None else 1
    if k not in (1, 2):
        raise CliError(EXIT_UNSUPPORTED, "local Riemann-Roch verification supports k in {1, 2}")
    N = args.N if args.N is not None else 1
    if not 1 <= N <= 3:
        raise CliError(EXIT_UNSUPPORTED, "local Riemann-Roch verification supports N in {1, 2, 3}")
    lams = _parse_lambdas(args.lam)
    if len(lams) > 2:
        raise CliError(EXIT_UNSUPPORTED, "at most 2 normal pairs")
    d = TwistedTraceData(tuple(lams))
    r = Renderer(math.lcm(4, d_level(d)))
    choices = _rr_choices(k, N, len(lams))
    if args.count is not None:
        choices = choices[: args.count]

    def job(ch):
        def run():
            rep = verify_local_rr(k, d, N, ch)
            name = (f"local-rr k={k} N={N} lambda={_lam_text(lams)} "
                    + " ".join(f"x{i + 1}={_choice_text(c)}" for i, c in enumerate(ch)))
            detail = f"{r.series(rep.lhs)}"
            if not rep.passed:
                detail = f"lhs {r.series(rep.lhs)} != rhs {r.series(rep.rhs)}"
            return Item(name, rep.passed, detail)
        return run

    jobs = [job(ch) for ch in choices]
    if k == 1:
        # the curvature values named in the theorem, reproduced verbatim
        def curv(kind, expect):
            def run():
                args_ = rr_arguments(1, d, N, [(kind, 1, 1)])
                C = curvature_C(args_[0], args_[1])
                text = ", ".join(f"[{i + 1},{j + 1}] {r.weyl(a)}" for (i, j), a in sorted(C.entries.items()))
                return Item(f"curvature C(p1, {kind}11)", text == expect, text)
            return run
        jobs.append(curv("u", ", ".join(f"[{i},{i}] -p1*q1" for i in range(1, N + 1))))
        jobs.append(curv("v", "[1,1] -1"))
    return Report("local-rr", _run_items(args, jobs))


def _verify_homology(args) -> Report:
    n = args.n if args.n is not None else 1
    if not 1 <= n <= 2:
        raise CliError(EXIT_UNSUPPORTED, "homology suite supports n in {1, 2}")
    degree = args.degree if args.degree is not None else 4
    if not 0 <= degree <= 6:
        raise CliError(EXIT_UNSUPPORTED, "homology suite supports internal degree <= 6")
    gammas = args.gamma or ["1", "-1", "zeta(3)"]
    space = WeylSpace.real(n)
    items = []
    for gt in gammas:
        try:
            lam = parse_scalar(gt)
        except ParseError as e:
            raise CliError(EXIT_PARSE, f"{e}\n{e.pointer()}")
        if not _is_root_of_unity(lam):
            raise CliError(EXIT_DOMAIN, f"{gt} is not a root of unity")
        fixed = args.fixed if args.fixed is not None else (n if lam == 1 else 0)
        if lam == 1 and fixed != n:
            raise CliError(EXIT_DOMAIN, "the identity fixes every pair")
        if not 0 <= fixed <= n:
            raise CliError(EXIT_DOMAIN, "--fixed must lie between 0 and n")
        eig = [None] * fixed + [None if lam == 1 else lam] * (n - fixed)
        g = SymplecticMap.rotations(space, eig)
        items.append((gt, fixed, g))

    def job(gt, fixed, g):
        def run():
            got = koszul_twisted_hh(g, degree)
            want = hkr_oracle(fixed, degree)
            ok = got == want
            detail = "" if ok else f"koszul {sorted(got.items())} != hkr {sorted(want.items())}"
            return Item(f"homology n={n} gamma={gt} fixed={fixed} degree<={degree}", ok, detail)
        return run

    return Report("homology", _run_items(args, [job(*it) for it in items]))


def cmd_verify(args) -> int:
    suites = {"cocycle": _verify_cocycle, "trace": _verify_trace,
              "local-rr": _verify_local_rr, "homology": _verify_homology}
    return _emit_report(args, suites[args.suite](args))


def _resolve_model(path: str) -> Path:
    p = Path(path)
    if p.exists():
        return p
    q = MODELS_DIR / path
    if q.exists():
        return q
    raise CliError(EXIT_PARSE, f"model file {path} not found")


def cmd_index(args) -> int:
    try:
        model = load_model(_resolve_model(args.model))
    except ModelError as e:
        raise CliError(EXIT_PARSE, f"schema error: {e}")
    except DomainError as e:
        raise CliError(EXIT_DOMAIN, str(e))
    try:
        if args.kawasaki:
            value = kawasaki_index(model)
            result = None
        else:
            value = None
            result = algebraic_index(model)
            if model.geometric and model.sectors:
                kawasaki_index(model)  # integrality check
    except ModelInconsistencyError as e:
        raise CliError(EXIT_DOMAIN, f"model inconsistency: {e}")
    except DomainError as e:
        raise CliError(EXIT_DOMAIN, str(e))
    r = _renderer(args, value if value is not None else result, base=model.levels())
    text = r.scalar(value) if value is not None else r.series(result)
    payload = {"command": "index", "model": model.name, "level": r.level,
               "mode": "kawasaki" if args.kawasaki else "hbar", "result": text}
    lines = [text]
    code = EXIT_OK
    if args.oracle:
        if model.oracle is None:
            raise CliError(EXIT_UNSUPPORTED, "model carries no fixed-point data for the oracle")
        o = lefschetz_oracle(model.oracle)
        k = kawasaki_index(model, check_integral=False)
        agree = o == k
        payload["oracle"] = {"value": r.scalar(o), "agrees": agree}
        lines.append(f"oracle {r.scalar(o)} {'agrees' if agree else 'DISAGREES'}")
        code = EXIT_OK if agree else EXIT_FAIL
    _emit(args, payload, lines)
    return code


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--level", type=int, help="render scalars in Q(zeta_L)")
    common.add_argument("--order", type=int, help="truncation order in hbar")
    common.add_argument("--seed", type=int, default=0, help="seed for random test data")
    common.add_argument("--format", choices=["text", "structured"], default="text")
    common.add_argument("--jobs", type=int, default=1, help="worker threads for suite items")

    p = argparse.ArgumentParser(prog="orbindex", description="Exact twisted traces, cocycles "
                                "and orbifold index computations.", parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("star", parents=[common], help="star product of expressions")
    s.add_argument("exprs", nargs="+")
    s.add_argument("--n", type=int, help="number of variable pairs")
    s.set_defaults(func=cmd_star)

    v = sub.add_parser("verify", parents=[common], help="run an identity suite")
    v.add_argument("suite", choices=["cocycle", "trace", "local-rr", "homology"])
    v.add_argument("--k", type=int)
    v.add_argument("--N", type=int)
    v.add_argument("--n", type=int)
    v.add_argument("--lambda", dest="lam", action="append",
                   help="normal eigenvalue(s), e.g. \"zeta(3)\" or \"-1,zeta(4)\"")
    v.add_argument("--gamma", action="append", help="homology: eigenvalue on twisted pairs")
    v.add_argument("--fixed", type=int, help="homology: number of fixed pairs")
    v.add_argument("--degree", type=int, help="homology: internal degree bound")
    v.add_argument("--count", type=int, help="number of random samples")
    v.set_defaults(func=cmd_verify)

    i = sub.add_parser("index", parents=[common], help="evaluate the index of a model file")
    i.add_argument("model")
    mode = i.add_mutually_exclusive_group()
    mode.add_argument("--kawasaki", action="store_true", help="the index without hbar")
    mode.add_argument("--hbar", action="store_true", help="the hbar-graded algebraic index (default)")
    i.add_argument("--oracle", action="store_true", help="cross-check with the fixed-point formula")
    i.set_defaults(func=cmd_index)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0) and EXIT_PARSE
    try:
        return args.func(args)
    except CliError as e:
        sys.stderr.write(f"orbindex: {e}\n")
        return e.code
    except UnsupportedError as e:
        sys.stderr.write(f"orbindex: unsupported: {e}\n")
        return EXIT_UNSUPPORTED
    except DomainError as e:
        sys.stderr.write(f"orbindex: {e}\n")
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
