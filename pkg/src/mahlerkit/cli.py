"""Command-line entry point.

Exit codes: 0 affirmative result, 1 negative or inconclusive, 2 usage or
input error. Results go to stdout, diagnostics to stderr. With --json the
result is wrapped together with a run manifest.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction

from . import __version__
from .automatic import (
    DFAO,
    LinearRepresentation,
    becker_automatize_mod_p,
    eventual_periodicity,
    kernel_closure,
    representation_product,
    unit_product_automatize,
)
from .bases import base_pair
from .corpus import (
    SERIES_NAMES,
    ZagierConvention,
    standard_series,
    thue_morse_dfao,
    zagier_identity_check,
    zagier_sequence,
    zagier_system_check,
)
from .decompose import becker_decompose, shift_decompose
from .discovery import find_equation
from .equation import MahlerEquation, normalize, solve_series, verify_equation
from .errors import MahlerError
from .fields import GF, QQ
from .pipeline import PipelineParams, pipeline_rationality
from .poly import Polynomial
from .rationality import cyclotomic_split, fixed_root_check, hankel_rationality
from .series import TruncatedSeries, cartier_section, series_invert
from .verifiers import (
    GroupInstance,
    check_sum_inequality,
    companion_nilpotent,
    divergence_probe,
    equispaced,
    group_search,
    product_growth,
)

SCHEMA = "mahlerkit/1"


class UsageError(Exception):
    pass


class Run:
    """Collects input digests and the result of one command."""

    def __init__(self, args, argv):
        self.args = args
        self.argv = argv
        self.inputs = {}
        self.start = time.perf_counter()

    def read(self, path):
        try:
            with open(path, "rb") as fh:
                data = fh.read()
        except OSError as e:
            raise UsageError(f"cannot read {path}: {e.strerror}") from None
        self.inputs[path] = hashlib.sha256(data).hexdigest()
        return data.decode()

    def manifest(self):
        params = {k: v for k, v in vars(self.args).items() if k not in ("func", "json") and v is not None}
        return {
            "schema": SCHEMA,
            "command": self.argv,
            "inputs": self.inputs,
            "parameters": {k: (v if isinstance(v, (int, float, str, bool, list)) else str(v)) for k, v in params.items()},
            "version": __version__,
            "wall_time": round(time.perf_counter() - self.start, 6),
        }


def _poly(text, field=QQ):
    return Polynomial.parse(field, text)


def _series(run, path):
    return TruncatedSeries.loads(run.read(path))


def _equation(run, path):
    return MahlerEquation.loads(run.read(path))


# series


def cmd_series_gen(run):
    a = run.args
    F = standard_series(a.name, a.param, a.terms)
    return 0, F.dumps(), {"name": a.name, "terms": a.terms, "coefficients": [str(c) for c in F.coeffs]}


def cmd_series_invert(run):
    F = series_invert(_series(run, run.args.series))
    return 0, F.dumps(), {"precision": F.precision, "coefficients": [str(c) for c in F.coeffs]}


def cmd_series_cartier(run):
    a = run.args
    F = cartier_section(_series(run, a.series), a.base, a.digit)
    return 0, F.dumps(), {"precision": F.precision, "coefficients": [str(c) for c in F.coeffs]}


# eq


def cmd_eq_verify(run):
    eq = _equation(run, run.args.eq)
    F = _series(run, run.args.series)
    res = verify_equation(eq, F)
    if res.holds:
        return 0, f"holds_to: {res.holds_to}\n", {"holds": True, "holds_to": res.holds_to}
    return 1, f"fails_at: {res.fails_at}\n", {"holds": False, "fails_at": res.fails_at}


def cmd_eq_normalize(run):
    eq = normalize(_equation(run, run.args.eq))
    return 0, eq.dumps(), {"equation": eq.pretty()}


def cmd_eq_solve(run):
    eq = _equation(run, run.args.eq)
    initial = [eq.field.parse(t) for t in run.args.initial.replace(",", " ").split()]
    F = solve_series(eq, initial, run.args.terms)
    return 0, F.dumps(), {"coefficients": [str(c) for c in F.coeffs]}


def cmd_eq_find(run):
    a = run.args
    F = _series(run, a.series)
    eq = find_equation(F, a.base, a.order, a.degree, inhomogeneous=a.inhomogeneous)
    if eq is None:
        return 1, "none\n", {"found": False}
    return 0, eq.dumps(), {"found": True, "equation": eq.pretty(), "certified_to": eq.certified_to}


def cmd_eq_shift(run):
    eq = _equation(run, run.args.eq)
    F = _series(run, run.args.series)
    d = shift_decompose(eq, F, run.args.a)
    text = f"a: {d.a}\nhead: {d.head}\n" + d.tail_equation.dumps()
    return 0, text, {"a": d.a, "head": str(d.head), "tail_equation": d.tail_equation.pretty()}


def cmd_eq_becker(run):
    eq = _equation(run, run.args.eq)
    F = _series(run, run.args.series)
    d = becker_decompose(eq, F)
    return 0, d.becker_equation.dumps(), {"becker_equation": d.becker_equation.pretty()}


# base


def cmd_base_pair(run):
    bp = base_pair(run.args.k, run.args.l)
    text = f"k': {bp.k}\nl': {bp.l}\np: {bp.p}\nq: {bp.q}\n"
    return 0, text, {"k": bp.k, "l": bp.l, "p": bp.p, "q": bp.q, "check": bp.check()}


# auto


def _load_dfao(run, path):
    text = run.read(path)
    return DFAO.loads(text, parse_output=str)


def cmd_auto_becker(run):
    a = run.args
    eq = _equation(run, a.eq)
    M = _poly(a.multiplier, eq.field) if a.multiplier else None
    A = becker_automatize_mod_p(eq, eq.field.parse(a.g0), M, validate=a.validate)
    return 0, A.dumps(), {"states": A.states, "dfao": A.dumps()}


def cmd_auto_unit_product(run):
    a = run.args
    F = GF(a.p)
    up = unit_product_automatize(F(a.a), a.base, validate=a.validate)
    text = f"N: {up.N}\nQ: {up.Q}\nS: {up.S}\n" + up.dfao.dumps()
    return 0, text, {"N": up.N, "Q": str(up.Q), "S": str(up.S), "states": up.dfao.states}


def cmd_auto_periodicity(run):
    a = run.args
    A = _load_dfao(run, a.dfao)
    v = eventual_periodicity(A, a.max_period, a.max_preperiod)
    data = {"periodic": v.periodic, "preperiod": v.preperiod, "period": v.period, "verdict": str(v)}
    return (0 if v.periodic else 1), f"{v}\n", data


def cmd_auto_eval(run):
    A = _load_dfao(run, run.args.dfao)
    seq = A.sequence(run.args.terms)
    return 0, " ".join(map(str, seq)) + "\n", {"values": [str(v) for v in seq]}


def cmd_auto_kernel(run):
    rep = LinearRepresentation.loads(run.read(run.args.linrep))
    A = kernel_closure(rep)
    return 0, A.dumps(), {"states": A.states}


def cmd_auto_product(run):
    r1 = LinearRepresentation.loads(run.read(run.args.left))
    r2 = LinearRepresentation.loads(run.read(run.args.right))
    rep = representation_product(r1, r2)
    return 0, rep.dumps(), {"dim": rep.dim, "representation": rep.dumps()}


# rat


def cmd_rat_hankel(run):
    F = _series(run, run.args.series)
    res = hankel_rationality(F, run.args.deg, details=True)
    if res is None:
        return 1, "none\n", {"rational": False, "certified_to": F.precision}
    R = res.fraction
    data = {"rational": True, "numerator": str(R.numerator), "denominator": str(R.denominator),
            "rank": res.rank, "window_columns": res.window_columns, "certified_to": res.certified_to}
    return 0, f"numerator: {R.numerator}\ndenominator: {R.denominator}\n", data


def cmd_rat_split(run):
    s = cyclotomic_split(_poly(run.args.poly))
    data = {"unit_part": str(s.unit_part), "free_part": str(s.free_part), "indices": [list(i) for i in s.indices]}
    return 0, f"{s}\n", data


def cmd_rat_fixed_check(run):
    s = cyclotomic_split(_poly(run.args.poly))
    v = fixed_root_check(s.indices, run.args.base)
    return (0 if v.ok else 1), f"{v}\n", {"ok": v.ok, "index": v.index}


# pipeline


def cmd_pipeline_run(run):
    a = run.args
    F = _series(run, a.series)
    ek = _equation(run, a.eqk)
    el = _equation(run, a.eql) if a.eql else None
    params = PipelineParams(p_max=a.pmax, n_max=a.nmax, min_primes=a.min_primes)
    rep = pipeline_rationality(F, ek, el, params)
    code = 0 if rep.verdict.kind == "rational" else 1
    return code, f"{rep}\n", rep.as_dict()


# asym


def _alpha(text):
    if not text:
        return None
    j, _, n = text.partition("/")
    return int(j), int(n)


def cmd_asym_product(run):
    a = run.args
    P = [Fraction(t) for t in a.poly.replace(",", " ").split()]
    if a.csv:
        ts = [1 - Fraction(1, 2 ** j) for j in range(1, a.samples + 1)]
        rows = [(float(t), product_growth(P, a.base, t.numerator / t.denominator, _alpha(a.alpha))) for t in ts]
        text = "t,value\n" + "".join(f"{t!r},{v}\n" for t, v in rows)
        return 0, text, {"rows": [[t, str(v)] for t, v in rows]}
    v = product_growth(P, a.base, a.t, _alpha(a.alpha))
    return 0, f"{v}\n", {"value": str(v)}


def cmd_asym_probe(run):
    a = run.args
    hit = divergence_probe(a.base, a.A, a.threshold)
    if hit is None:
        return 1, "none\n", {"found": False}
    j, t, v = hit
    return 0, f"j: {j}\nt: {t}\nvalue: {v}\n", {"found": True, "j": j, "t": str(t), "value": str(v)}


def cmd_asym_sum_check(run):
    a = run.args
    rep = check_sum_inequality(a.base, equispaced(a.samples))
    if a.csv:
        text = "t,lhs,rhs,margin\n" + "".join(f"{t},{l},{r},{m}\n" for t, l, r, m in rep.rows)
    else:
        text = f"{rep}\n"
    return (0 if rep.holds else 1), text, {"holds": rep.holds, "min_margin": str(rep.min_margin)}


def cmd_asym_nilpotent(run):
    row = [Fraction(t) for t in run.args.row.replace(",", " ").split()]
    v = companion_nilpotent(row, len(row))
    return (0 if v else 1), f"{'nilpotent' if v else 'not nilpotent'}\n", {"nilpotent": v}


def cmd_asym_group_search(run):
    a = run.args
    moduli = tuple(int(t) for t in a.moduli.replace(",", " ").split())
    gens = tuple(tuple(int(t) for t in g.replace(",", " ").split()) for g in a.gens.split(";"))
    if len(gens) != len(moduli) or any(len(g) != len(moduli) for g in gens):
        raise UsageError("need one generator per modulus, each with one entry per modulus")
    w = group_search(GroupInstance(moduli, gens))
    if w is None:
        return 1, "none\n", {"found": False}
    text = f"coefficients: {' '.join(map(str, w.coefficients))}\nelement: {' '.join(map(str, w.element))}\n"
    return 0, text, {"found": True, "coefficients": list(w.coefficients), "element": list(w.element)}


# corpus


def cmd_corpus_zagier(run):
    a = run.args
    checks = {c: zagier_identity_check(a.terms, c) for c in ZagierConvention}
    if a.convention == "auto":
        valid = [c for c in ZagierConvention if checks[c].holds]
        conv = valid[0] if valid else None
    else:
        conv = ZagierConvention(a.convention)
    lines = [str(checks[c]) for c in ZagierConvention]
    data = {"checks": {c.value: list(checks[c].failures[:20]) for c in ZagierConvention}}
    if conv is None:
        lines.append("no convention validates the identity")
        return 1, "\n".join(lines) + "\n", data
    lines.append(f"convention: sum to {conv.value}")
    seq = zagier_sequence(a.terms, conv)
    lines.append(" ".join(map(str, seq[: min(len(seq), 64)])))
    data["convention"] = conv.value
    data["holds"] = checks[conv].holds
    return (0 if checks[conv].holds else 1), "\n".join(lines) + "\n", data


def cmd_corpus_system(run):
    rep = zagier_system_check(run.args.precision)
    data = {
        "validated": rep.validated.value if rep.validated else None,
        "rows": {c.value: rep.rows[c] for c in ZagierConvention},
        "scalar": {c.value: {"first_nonzero": rep.scalar[c][0], "order": rep.scalar[c][1]} for c in ZagierConvention},
    }
    return (0 if rep.validated else 1), f"{rep}\n", data


def cmd_corpus_series(run):
    return cmd_series_gen(run)


def cmd_corpus_thue_morse(run):
    A = thue_morse_dfao()
    text = A.dumps()
    if run.args.terms:
        text += " ".join(map(str, A.sequence(run.args.terms))) + "\n"
    return 0, text, {"dfao": A.dumps()}


def build_parser():
    p = argparse.ArgumentParser(prog="mahlerkit", description="Mahler equations, automata and rationality tests.")
    p.add_argument("--version", action="version", version=f"mahlerkit {__version__}")
    p.add_argument("--json", action="store_true", help="emit JSON with a run manifest")
    top = p.add_subparsers(dest="group", required=True)

    def group(name, help):
        g = top.add_parser(name, help=help)
        g.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        return g.add_subparsers(dest="command", required=True)

    def cmd(sub, name, func, help, aliases=()):
        c = sub.add_parser(name, help=help, aliases=list(aliases))
        c.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        c.set_defaults(func=func)
        return c

    s = group("series", "truncated power series")
    c = cmd(s, "gen", cmd_series_gen, "generate a named series")
    c.add_argument("--name", required=True, choices=SERIES_NAMES)
    c.add_argument("--param", default="2")
    c.add_argument("--terms", type=int, required=True)
    c = cmd(s, "invert", cmd_series_invert, "multiplicative inverse")
    c.add_argument("--series", required=True)
    c = cmd(s, "cartier", cmd_series_cartier, "coefficients f(k n + b)")
    c.add_argument("--series", required=True)
    c.add_argument("--base", type=int, required=True)
    c.add_argument("--digit", type=int, required=True)

    s = group("eq", "Mahler equations")
    c = cmd(s, "verify", cmd_eq_verify, "check an equation against a series")
    c.add_argument("--eq", required=True)
    c.add_argument("--series", required=True)
    c = cmd(s, "normalize", cmd_eq_normalize, "homogeneous normal form")
    c.add_argument("--eq", required=True)
    c = cmd(s, "solve", cmd_eq_solve, "expand the solution from initial terms")
    c.add_argument("--eq", required=True)
    c.add_argument("--initial", required=True)
    c.add_argument("--terms", type=int, required=True)
    c = cmd(s, "find", cmd_eq_find, "search for an equation satisfied by a series")
    c.add_argument("--series", required=True)
    c.add_argument("--base", type=int, required=True)
    c.add_argument("--order", type=int, required=True)
    c.add_argument("--degree", type=int, required=True)
    c.add_argument("--inhomogeneous", action="store_true")
    c = cmd(s, "shift", cmd_eq_shift, "split off a head so that P0(0) = 1")
    c.add_argument("--eq", required=True)
    c.add_argument("--series", required=True)
    c.add_argument("--a", type=int)
    c = cmd(s, "becker", cmd_eq_becker, "Becker decomposition")
    c.add_argument("--eq", required=True)
    c.add_argument("--series", required=True)

    s = group("base", "base pairs")
    c = cmd(s, "pair", cmd_base_pair, "separating pair for independent bases")
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--l", type=int, required=True)

    s = group("auto", "automata")
    c = cmd(s, "from-becker", cmd_auto_becker, "DFAO for a Becker series over F_p", ["becker"])
    c.add_argument("--eq", required=True)
    c.add_argument("--g0", default="1")
    c.add_argument("--multiplier")
    c.add_argument("--validate", type=int, default=2048)
    c = cmd(s, "unit-product", cmd_auto_unit_product, "DFAO for prod (1 - a x^(k^j))^(-1) over F_p")
    c.add_argument("--a", type=int, required=True)
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--base", type=int, required=True)
    c.add_argument("--validate", type=int, default=2048)
    c = cmd(s, "periodic", cmd_auto_periodicity, "decide eventual periodicity", ["periodicity"])
    c.add_argument("--dfao", required=True)
    c.add_argument("--max-period", type=int, default=64)
    c.add_argument("--max-preperiod", type=int, default=1024)
    c = cmd(s, "eval", cmd_auto_eval, "first terms of a DFAO")
    c.add_argument("--dfao", required=True)
    c.add_argument("--terms", type=int, default=32)
    c = cmd(s, "closure", cmd_auto_kernel, "DFAO from a linear representation over F_p", ["kernel"])
    c.add_argument("--linrep", required=True)
    c = cmd(s, "product", cmd_auto_product, "representation of the Cauchy product")
    c.add_argument("--left", required=True)
    c.add_argument("--right", required=True)

    s = group("rat", "rationality")
    c = cmd(s, "hankel", cmd_rat_hankel, "rational reconstruction")
    c.add_argument("--series", required=True)
    c.add_argument("--deg", type=int, required=True)
    c = cmd(s, "split", cmd_rat_split, "cyclotomic split of a polynomial")
    c.add_argument("--poly", required=True)
    c = cmd(s, "fixed-check", cmd_rat_fixed_check, "roots of unity fixed by x -> x^(k^j)")
    c.add_argument("--poly", required=True)
    c.add_argument("--base", type=int, required=True)

    s = group("pipeline", "end-to-end rationality")
    c = cmd(s, "run", cmd_pipeline_run, "run every stage")
    c.add_argument("--series", required=True)
    c.add_argument("--eqk", required=True)
    c.add_argument("--eql")
    c.add_argument("--pmax", type=int, default=500)
    c.add_argument("--nmax", type=int, default=8)
    c.add_argument("--min-primes", type=int, default=3)

    s = group("asym", "numeric checks of growth estimates")
    c = cmd(s, "product", cmd_asym_product, "|prod P((t alpha)^(k^j))|^(-1)")
    c.add_argument("--poly", required=True)
    c.add_argument("--base", type=int, required=True)
    c.add_argument("--t", default="0.5")
    c.add_argument("--alpha", help="root of unity as j/n")
    c.add_argument("--csv", action="store_true", help="sample t = 1 - 2^-j instead")
    c.add_argument("--samples", type=int, default=20)
    c = cmd(s, "probe", cmd_asym_probe, "least t = 1 - 2^-j with (1-t)^A prod > threshold")
    c.add_argument("--base", type=int, default=2)
    c.add_argument("--A", type=int, default=1)
    c.add_argument("--threshold", type=float, default=1000.0)
    c = cmd(s, "sum-check", cmd_asym_sum_check, "-log(1-t) >= (1-1/k) sum t^(k^i)")
    c.add_argument("--base", type=int, required=True)
    c.add_argument("--samples", type=int, default=200)
    c.add_argument("--csv", action="store_true")
    c = cmd(s, "nilpotent", cmd_asym_nilpotent, "companion-shaped nilpotency")
    c.add_argument("--row", required=True)
    c = cmd(s, "group-search", cmd_asym_group_search, "element with no zero coordinate")
    c.add_argument("--moduli", required=True)
    c.add_argument("--gens", required=True, help="generators separated by ';'")

    s = group("corpus", "example series")
    c = cmd(s, "zagier", cmd_corpus_zagier, "3-adic valuations of central binomial partial sums")
    c.add_argument("--terms", type=int, default=5000)
    c.add_argument("--convention", choices=("auto", "n", "n-1"), default="auto")
    c = cmd(s, "system", cmd_corpus_system, "check the 3x3 system and the scalar relation")
    c.add_argument("--precision", type=int, default=300)
    c = cmd(s, "series", cmd_corpus_series, "named series")
    c.add_argument("--name", required=True, choices=SERIES_NAMES)
    c.add_argument("--param", default="2")
    c.add_argument("--terms", type=int, required=True)
    c = cmd(s, "thue-morse", cmd_corpus_thue_morse, "the two-state Thue-Morse automaton")
    c.add_argument("--terms", type=int, default=0)
    return p


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    run = Run(args, argv)
    try:
        code, text, data = args.func(run)
    except (UsageError, MahlerError, ValueError, ArithmeticError) as e:
        reason = str(e).splitlines()[0] if str(e) else type(e).__name__
        print(f"mahlerkit: error: {reason}", file=sys.stderr)
        return 2
    if getattr(args, "json", False):
        out = {"manifest": run.manifest(), "exit_code": code, "result": data}
        sys.stdout.write(json.dumps(out, indent=2, sort_keys=True, default=str) + "\n")
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
