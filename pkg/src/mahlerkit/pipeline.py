"""End-to-end rationality pipeline for a series that is both k- and l-Mahler.

The series is reduced modulo primes where the roots of the non-cyclotomic
part of P0 are controlled, each reduction is turned into an automaton and
shown to be eventually periodic, and only then is a fraction reconstructed
over Q and substituted exactly into both equations.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .automatic.becker import becker_automatize_mod_p
from .automatic.periodicity import eventual_periodicity
from .automatic.unitprod import unit_product_root_of_unity
from .bases import base_pair
from .decompose import becker_decompose, shift_decompose, shift_index
from .discovery import find_equation
from .equation import MahlerEquation, normalize, verify_equation
from .errors import InsufficientPrecision, MahlerError
from .fields import QQ
from .modp import linear_factors, prime_search, reduce_mod_p
from .poly import Polynomial
from .rationality import cyclotomic_split, fixed_root_check, hankel_rationality


@dataclass(frozen=True)
class PipelineParams:
    p_max: int = 500
    n_max: int = 8
    min_primes: int = 3
    max_period: int = 8192
    max_preperiod: int = 1024
    validate: int = 2048
    max_states: int = 100000
    search_order: int = 2
    search_degree: int = 8
    hankel_degree: int = None


@dataclass(frozen=True)
class StageRecord:
    name: str
    status: str
    detail: str
    # "exact" for proofs, "to N" for checks on N coefficients, "" otherwise
    certified: str = ""

    def as_dict(self):
        return {"name": self.name, "status": self.status, "detail": self.detail, "certified": self.certified}


@dataclass(frozen=True)
class Verdict:
    kind: str
    detail: str = ""
    fraction: object = None

    def __str__(self):
        if self.kind == "rational":
            return f"rational({self.fraction})"
        return f"{self.kind}({self.detail})"


@dataclass
class PipelineReport:
    stages: list = dc_field(default_factory=list)
    verdict: Verdict = None
    primes: list = dc_field(default_factory=list)

    def add(self, name, status, detail, certified=""):
        self.stages.append(StageRecord(name, status, detail, certified))

    def as_dict(self):
        out = {
            "stages": [s.as_dict() for s in self.stages],
            "primes": [p.as_dict() for p in self.primes],
            "verdict": {"kind": self.verdict.kind, "detail": self.verdict.detail},
        }
        if self.verdict.fraction is not None:
            out["verdict"]["numerator"] = str(self.verdict.fraction.numerator)
            out["verdict"]["denominator"] = str(self.verdict.fraction.denominator)
        return out

    def __str__(self):
        lines = []
        for s in self.stages:
            cert = f" [{s.certified}]" if s.certified else ""
            lines.append(f"{s.name}: {s.status}: {s.detail}{cert}")
        lines.append(f"verdict: {self.verdict}")
        return "\n".join(lines)


def substitutes_to_zero(eq, R):
    """Exact test that A/B solves eq: sum P_i A(x^(k^i)) prod_(j!=i) B(x^(k^j)) + E prod B(x^(k^j)) = 0."""
    A, B = R.numerator, R.denominator
    k = eq.base
    n = len(eq.coeffs)
    As = [A.compose_power(k ** i) for i in range(n)]
    Bs = [B.compose_power(k ** i) for i in range(n)]
    total = Polynomial.zero(eq.field)
    for i, P in enumerate(eq.coeffs):
        term = P * As[i]
        for j in range(n):
            if j != i:
                term = term * Bs[j]
        total = total + term
    if not eq.inhomogeneous.is_zero():
        prod = eq.inhomogeneous
        for Bj in Bs:
            prod = prod * Bj
        total = total + prod
    return total.is_zero()


@dataclass(frozen=True)
class _Side:
    base: int
    equation: MahlerEquation
    free: Polynomial
    indices: tuple
    becker: object


def _modular_parts(side, p):
    """Becker equation, multiplier and unit factors for the series mod p.

    F0 = M(x) U(x) H(x) where U = prod_a prod_j (1 - a x^(k^j))^(-e) runs
    over the factors of the non-cyclotomic part and each cyclotomic index n
    contributes Q_n to M and its Becker factor G_n to H.
    """
    k = side.base
    B = side.becker.becker_coefficients()
    M = Polynomial.one(QQ)
    for n, mult in side.indices:
        up = unit_product_root_of_unity(n, k)
        M = M * up.Q ** mult
        acc = Polynomial.one(QQ)
        for i in range(len(B)):
            acc = acc * up.S.compose_power(k ** i) ** mult
            B[i] = B[i] * acc
    eq = MahlerEquation(QQ, k, tuple([Polynomial.one(QQ)] + [-b for b in B]))
    eq_p = reduce_mod_p(eq, p)
    units = linear_factors(reduce_mod_p(side.free, p))
    if units is None:
        raise MahlerError(f"non-cyclotomic part does not split modulo {p}")
    return eq_p, reduce_mod_p(M, p), [(eq_p.field(a), e) for a, e in units]


def _automatize(sides, F0, p, params):
    """DFAO for F0 mod p from the first side that succeeds, validated on F0."""
    target = reduce_mod_p(F0, p)
    n = min(params.validate, target.precision)
    errors = []
    for side in sides:
        try:
            eq_p, M, units = _modular_parts(side, p)
            g0 = target.coeffs[0]
            A = becker_automatize_mod_p(eq_p, g0, M, validate=0, units=units, max_states=params.max_states)
        except (MahlerError, ArithmeticError) as e:
            errors.append(f"base {side.base}: {e}")
            continue
        if A.sequence(n) != list(target.coeffs[:n]):
            errors.append(f"base {side.base}: automaton disagrees with the reduced series")
            continue
        return side.base, A, n
    raise MahlerError("; ".join(errors))


def pipeline_rationality(F, eq_k, eq_l=None, params=None, l=None):
    """Run every stage and return a PipelineReport; stage errors end in the verdict."""
    params = params or PipelineParams()
    report = PipelineReport()
    try:
        _run(F, eq_k, eq_l, params, l, report)
    except MahlerError as e:
        report.add("error", "failed", f"{type(e).__name__}: {e}")
        report.verdict = Verdict("inconclusive", f"{type(e).__name__}: {e}")
    return report


def _run(F, eq_k, eq_l, params, l, report):
    if F.field != QQ:
        raise MahlerError("the pipeline works over Q")
    originals = [eq for eq in (eq_k, eq_l) if eq is not None]

    # normalize
    normalized = []
    for eq in originals:
        ne = normalize(eq)
        res = verify_equation(ne, F)
        if not res.holds:
            report.add("normalize", "failed", f"base {eq.base} equation fails at index {res.fails_at}")
            report.verdict = Verdict("inconclusive", f"base {eq.base} equation does not hold on the series")
            return
        report.add("normalize", "ok", f"base {ne.base}: {ne.pretty()}", f"to {res.holds_to}")
        normalized.append(ne)
        # cyclotomic factors of P0 / x^v survive into P0 after any shift, so a
        # violation here is final
        P0 = ne.coeffs[0]
        check = fixed_root_check(cyclotomic_split(P0.shift(-P0.valuation())).indices, ne.base)
        if not check.ok:
            report.add("fixed-check", "failed", f"base {ne.base}: {check}", "exact")
            report.verdict = Verdict("hypothesis-violated", f"fixed_root_check: index {check.index}")
            return

    if eq_l is None:
        if l is None:
            l = 3 if eq_k.base % 3 else 5
        found = find_equation(F, l, params.search_order, params.search_degree)
        if found is None:
            report.add("normalize", "failed", f"no base-{l} equation of order <= {params.search_order} "
                       f"and degree <= {params.search_degree}")
            report.verdict = Verdict("inconclusive", "missing l-equation")
            return
        ne = normalize(found)
        report.add("normalize", "ok", f"base {l} (found): {ne.pretty()}", f"to {found.certified_to}")
        normalized.append(ne)
        originals.append(found)
    ek, el = normalized
    k, l = ek.base, el.base

    # bases
    pair = base_pair(k, l)
    report.add("bases", "ok", f"k={k}, l={l}; separating pair k'={pair.k}, l'={pair.l} (p={pair.p}, q={pair.q})")

    # shift
    F0 = F
    need = [eq for eq in normalized if eq.coeffs[0][0] == 0]
    if need:
        a = shift_index(ek, F, above=max(eq.coeffs[0].valuation() for eq in normalized))
        if a is None:
            report.add("shift", "failed", "no nonzero coefficient to shift past")
            report.verdict = Verdict("inconclusive", "series looks polynomial within precision")
            return
        shifted = [shift_decompose(eq, F, a) for eq in normalized]
        F0 = shifted[0].tail_series
        ek, el = shifted[0].tail_equation, shifted[1].tail_equation
        report.add("shift", "ok", f"a={a}", f"to {F0.precision}")
    else:
        report.add("shift", "skipped", "P0(0) = 1 on both sides")

    # split and fixed-root check
    sides = []
    for eq in (ek, el):
        split = cyclotomic_split(eq.coeffs[0])
        report.add("split", "ok", f"base {eq.base}: {split}", "exact")
        check = fixed_root_check(split.indices, eq.base)
        if not check.ok:
            report.add("fixed-check", "failed", f"base {eq.base}: {check}", "exact")
            report.verdict = Verdict("hypothesis-violated", f"fixed_root_check: index {check.index}")
            return
        report.add("fixed-check", "ok", f"base {eq.base}", "exact")
        sides.append((eq, split))

    # Becker decomposition
    built = []
    for eq, split in sides:
        dec = becker_decompose(eq, F0)
        report.add("becker", "ok", f"base {eq.base}: {dec.becker_equation.pretty()}", f"to {F0.precision}")
        built.append(_Side(eq.base, eq, split.free_part, split.indices, dec))

    # primes
    reports = prime_search(built[0].free, built[1].free, k, l, params.p_max, params.n_max)
    report.primes = reports
    passing = [r.p for r in reports if r.passed]
    report.add("primes", "ok" if len(passing) >= params.min_primes else "failed",
               f"{len(passing)} of {len(reports)} tested primes pass: {', '.join(map(str, passing))}")
    if len(passing) < params.min_primes:
        report.verdict = Verdict("inconclusive", f"only {len(passing)} primes pass, need {params.min_primes}")
        return

    # per-prime automata and periodicity
    certified = []
    for p in passing:
        try:
            base, A, n = _automatize(built, F0, p, params)
        except MahlerError as e:
            report.add("automaton", "failed", f"p={p}: {e}")
            continue
        report.add("automaton", "ok", f"p={p}: base {base}, {A.states} states", f"to {n}")
        verdict = eventual_periodicity(A, params.max_period, params.max_preperiod)
        report.add("periodicity", "ok" if verdict.periodic else "failed", f"p={p}: {verdict}", "exact")
        if verdict.periodic:
            certified.append(p)
    if len(certified) != len(passing):
        missing = [p for p in passing if p not in certified]
        report.verdict = Verdict("inconclusive", f"primes not certified periodic: {', '.join(map(str, missing))}")
        return

    # Hankel reconstruction over Q on the original series
    d0 = params.hankel_degree or max(eq.max_degree() for eq in normalized) + 1
    cap = (F.precision - 16) // 4
    R = None
    d = d0
    while d <= cap:
        R = hankel_rationality(F, d)
        if R is not None or params.hankel_degree:
            break
        d *= 2
    if d0 > cap:
        raise InsufficientPrecision(f"Hankel degree {d0} needs {4 * d0 + 16} terms; have {F.precision}")
    if R is None:
        report.add("hankel", "failed", f"no fraction with degrees <= {min(d, cap)}", f"to {F.precision}")
        report.verdict = Verdict("inconclusive", "Hankel reconstruction failed")
        return
    report.add("hankel", "ok", f"d={d}: {R}", f"to {F.precision}")

    # exact substitution into both original equations
    for eq in originals:
        if not substitutes_to_zero(eq, R):
            report.add("final", "failed", f"A/B does not solve the base {eq.base} equation", "exact")
            report.verdict = Verdict("inconclusive", "final substitution check failed")
            return
    report.add("final", "ok", "A/B solves both equations", "exact")
    report.verdict = Verdict("rational", "", R)
