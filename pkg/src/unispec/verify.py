"""The verification suite: exact identities, brute-force oracles, sampler checks.

Each check records both sides as text, a verdict, and a reference string
naming the result it exercises.  Findings are observations that are reported
but do not fail the suite.
"""

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
import json
import math

from . import arcs, lines, measures, samplers
from .partitions import Partition, enumerate_partitions, enumerate_syt
from .pgroups import AbelianPGroup
from .qseries import hl_principal

SCHEMA = 1

GL_CENSUS = [(2, 2), (2, 3), (3, 2), (3, 3)]
TRIANGULAR_CENSUS = [(2, 2), (3, 2), (4, 2), (5, 2), (2, 3), (3, 3), (4, 3)]
THETAS = (Fraction(1, 3), Fraction(1, 2), Fraction(7, 10))

REF_GL_LAW = "unipotent GL class probability"
REF_TRI_LAW = "triangular Jordan-type law"
REF_TRI_ROUTES = "triangular law: tableau route vs chain route"
REF_TRI_TABLEAU = "triangular law: tableau sum"
REF_TRI_FLAGS = "triangular law: fixed-flag route"
REF_CHAINS = "maximal subgroup chains"
REF_CYCLIC = "cyclic subgroup count"
REF_DIVISION = "division algorithm"
REF_COINS = "coin algorithm limit law"
REF_GL_MEAN = "GL mean of X_r"
REF_TRI_MEAN = "triangular mean of X_r"
REF_SECOND_MOMENT = "GL second moment"
REF_GL_ARC = "GL arc-mean bounds"
REF_TRI_ARC = "triangular arc-mean bounds"
REF_ORBITS = "line orbit profile"

LINES_NOTE = (
    "Orbit profile: the displayed count for size p^r is the number of LINES in such orbits; "
    "orbit counts are lines/p^r. Only this reading sums to (p^n-1)/(p-1)."
)
ARC_NOTE = (
    "GL arc lower bound subtracts theta*E(X_1): fixed lines carry only the eigenvalue 1. "
    "Without that term the inequality fails for small n (listed under findings)."
)


@dataclass
class Check:
    ref: str
    name: str
    lhs: str
    rhs: str
    passed: bool
    context: dict = field(default_factory=dict)

    def to_json(self):
        return {
            "ref": self.ref,
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "equal": self.passed,
            "context": self.context,
        }


def _eq(ref, name, lhs, rhs, **context):
    return Check(ref, name, str(lhs), str(rhs), lhs == rhs, context)


def _counts_text(counter):
    return "{" + ", ".join(f"{lam}: {c}" for lam, c in sorted(counter.items(), reverse=True)) + "}"


# identities


def sum_identity_checks(n_max=12, primes=(2, 3, 5)):
    for p in primes:
        for n in range(1, n_max + 1):
            rep = measures.verify_sum_identity(n, p)
            yield _eq(rep.ref, rep.name, rep.lhs, rep.rhs, n=n, p=p)


def gl_forms_checks(n_max=10, primes=(2, 3, 5)):
    for p in primes:
        for n in range(1, n_max + 1):
            lhs = [measures.gl_class_probability(lam, p) for lam in enumerate_partitions(n)]
            rhs = [measures.gl_class_probability_hl(lam, p) for lam in enumerate_partitions(n)]
            yield Check(REF_GL_LAW, "gl-two-forms", str(sum(lhs)), str(sum(rhs)), lhs == rhs, {"n": n, "p": p})


def subgroup_sum_checks(n_max=8, primes=(2, 3)):
    for p in primes:
        for n in range(1, n_max + 1):
            for r in range(0, n + 1):
                mu = Partition([r] if r else [])
                rep = measures.verify_likemac(n, mu, p)
                yield _eq(rep.ref, rep.name, rep.lhs, rep.rhs, n=n, mu=str(mu), p=p)


def triangular_route_checks(n_max=8, primes=(2, 3)):
    for p in primes:
        for n in range(1, n_max + 1):
            for lam in enumerate_partitions(n):
                a = measures.triangular_probability(lam, p, "tableau")
                b = measures.triangular_probability(lam, p, "chain")
                yield _eq(REF_TRI_ROUTES, "tableau-vs-chain", a, b, **{"lambda": str(lam), "p": p})


def tableau_listing_checks(n_max=8, primes=(2, 3)):
    for p in primes:
        for n in range(1, n_max + 1):
            for lam in enumerate_partitions(n):
                yield _eq(
                    REF_TRI_TABLEAU,
                    "tableau-sum-dp-vs-listing",
                    measures.tableau_weight_sum(lam, p),
                    measures.tableau_weight_sum_listed(lam, p),
                    **{"lambda": str(lam), "p": p},
                )


def path_product_checks(n_max=7, p=2):
    for n in range(1, n_max + 1):
        dist = measures.triangular_dist(n, p)
        for lam in enumerate_partitions(n):
            total = sum((samplers.borodin_path_probability(s, p) for s in enumerate_syt(lam)), Fraction(0))
            yield _eq(REF_DIVISION, "path-product", total, dist[lam], **{"lambda": str(lam), "p": p})


def mean_xr_checks(model, n_max, primes):
    ref = REF_GL_MEAN if model == measures.GL else REF_TRI_MEAN
    for p in primes:
        for n in range(1, n_max + 1):
            for r in range(1, n + 1):
                yield _eq(
                    ref,
                    f"mean-xr-{model}",
                    arcs.mean_xr_closed(model, n, p, r),
                    arcs.mean_xr_exact(model, n, p, r),
                    n=n,
                    p=p,
                    r=r,
                )


def second_moment_checks(n_max=8, primes=(2, 3)):
    """Closed form vs summation.  A mismatch with r + s > n is a finding, not a failure."""
    checks, findings = [], []
    for p in primes:
        for n in range(1, n_max + 1):
            for r in range(1, n + 1):
                for s in range(r, n + 1):
                    c = _eq(
                        REF_SECOND_MOMENT,
                        "second-moment",
                        arcs.second_moment_gl_closed(n, p, r, s),
                        arcs.second_moment_exact(n, p, r, s),
                        n=n,
                        p=p,
                        r=r,
                        s=s,
                    )
                    if r + s > n:
                        c.name = "second-moment-beyond-range"
                    if r + s <= n or c.passed:
                        checks.append(c)
                    else:
                        findings.append(c)
    return checks, findings


def arc_bound_checks(n_max=8, primes=(2, 3), thetas=THETAS):
    checks, findings = [], []
    for model in measures.MODELS:
        ref = REF_GL_ARC if model == measures.GL else REF_TRI_ARC
        for p in primes:
            for n in range(1, n_max + 1):
                for theta in thetas:
                    m = arcs.mean_arc(model, n, p, theta)
                    ctx = {"model": model, "n": n, "p": p, "theta": str(theta)}
                    checks.append(
                        Check(ref, "arc-mean-bounds", str(m.exact), f"[{m.lower}, {m.upper}]", m.within, ctx)
                    )
                    if model == measures.GL and not m.lower_naive <= m.exact:
                        findings.append(
                            Check(ref, "arc-lower-bound-without-fixed-lines", str(m.exact), f">= {m.lower_naive}", False, ctx)
                        )
    return checks, findings


def identities_suite(n_max=12, primes=(2, 3, 5)):
    """Exact identity checks; n_max caps every range, whose defaults differ per identity."""
    checks, findings = [], []
    small = tuple(p for p in primes if p <= 3) or primes[:1]
    checks += sum_identity_checks(min(n_max, 12), primes)
    checks += gl_forms_checks(min(n_max, 10), primes)
    checks += subgroup_sum_checks(min(n_max, 8), small)
    checks += triangular_route_checks(min(n_max, 8), small)
    checks += tableau_listing_checks(min(n_max, 8), small)
    if 2 in primes:
        checks += path_product_checks(min(n_max, 7), 2)
    checks += mean_xr_checks(measures.GL, min(n_max, 10), primes)
    checks += mean_xr_checks(measures.TRIANGULAR, min(n_max, 9), small)
    c, f = second_moment_checks(min(n_max, 8), small)
    checks += c
    findings += f
    c, f = arc_bound_checks(min(n_max, 8), small)
    checks += c
    findings += f
    return checks, findings


# oracles


def gl_census_check(n, p):
    census = Counter(lines.jordan_type(m) for m in lines.enumerate_unipotent_gl(n, p))
    total = p ** (n * (n - 1))
    dist = measures.gl_unipotent_dist(n, p)
    expected = Counter({lam: prob * total for lam, prob in dist.items() if prob})
    return Check(
        REF_GL_LAW,
        "gl-census",
        _counts_text(census),
        _counts_text(expected),
        census == expected and sum(census.values()) == total,
        {"n": n, "p": p},
    )


def triangular_census_check(n, p):
    census = Counter(lines.jordan_type(m) for m in lines.enumerate_triangular(n, p))
    total = p ** (n * (n - 1) // 2)
    dist = measures.triangular_dist(n, p)
    expected = Counter({lam: prob * total for lam, prob in dist.items() if prob})
    return Check(
        REF_TRI_LAW,
        "triangular-census",
        _counts_text(census),
        _counts_text(expected),
        census == expected and sum(census.values()) == total,
        {"n": n, "p": p},
    )


def flag_checks(n_max=4, primes=(2, 3)):
    for p in primes:
        for n in range(1, n_max + 1):
            dist = measures.triangular_dist(n, p)
            for lam in enumerate_partitions(n):
                fix = lines.count_fixed_flags(lines.jordan_matrix(lam, p))
                via_flags = (p - 1) ** n * hl_principal(lam, p) * fix / p ** measures.n_stat(lam)
                yield _eq(
                    REF_TRI_FLAGS,
                    "flag-fix-route",
                    via_flags,
                    dist[lam],
                    **{"lambda": str(lam), "p": p, "fixed_flags": fix},
                )


def orbit_checks(n_max=5, primes=(2, 3)):
    for p in primes:
        for n in range(1, n_max + 1):
            for lam in enumerate_partitions(n):
                formula = lines.orbit_profile_formula(lam, p)
                brute = lines.brute_force_line_orbits(lines.jordan_matrix(lam, p))
                brute_lines = {r: c for r, c in brute.lines.items() if c or r == 0}
                total = (p**n - 1) // (p - 1)
                ok = formula.lines == brute_lines and brute.total == total == formula.total
                yield Check(
                    REF_ORBITS,
                    "line-orbits",
                    json.dumps(formula.to_json()["lines"]),
                    json.dumps({str(r): c for r, c in sorted(brute_lines.items())}),
                    ok,
                    {"lambda": str(lam), "p": p, "orbits": formula.to_json()["orbits"]},
                )


def chain_checks(n_max=4, p=2):
    for n in range(1, n_max + 1):
        for lam in enumerate_partitions(n):
            yield _eq(
                REF_CHAINS,
                "chain-count-oracle",
                measures.chain_count(lam, p),
                AbelianPGroup(lam, p).count_maximal_chains(),
                **{"lambda": str(lam), "p": p},
            )


def duality_checks(n_max=4, p=2):
    for n in range(1, n_max + 1):
        for lam in enumerate_partitions(n):
            group = AbelianPGroup(lam, p)
            kinds = sorted({(group.quotient_type(h), group.subgroup_type(h)) for h in group.subgroups}, reverse=True)
            for mu, nu in kinds:
                a = group.count_sub_quotient(mu, nu)
                b = group.count_sub_quotient(nu, mu)
                yield _eq(measures.REF_DUALITY, "hall-duality", a, b, **{"lambda": str(lam), "mu": str(mu), "nu": str(nu), "p": p})


def subgroup_oracle_checks(n_max=3, p=2):
    for n in range(1, n_max + 1):
        for k in range(0, n + 1):
            for mu in enumerate_partitions(k):
                rep = measures.verify_likemac(n, mu, p, use_oracle=True)
                yield _eq(rep.ref, "subgroup-sum-oracle", rep.lhs, rep.rhs, n=n, mu=str(mu), p=p)
        for lam in enumerate_partitions(n):
            group = AbelianPGroup(lam, p)
            for r in range(1, n + 1):
                yield _eq(
                    REF_CYCLIC,
                    "cyclic-subgroup-count",
                    measures.subgroup_count_type_r(lam, p, r),
                    group.count_subgroups_of_type([r]),
                    **{"lambda": str(lam), "p": p, "r": r},
                )


def oracle_suite(n=None, p=None):
    """Brute-force checks.  With n and p given, only the censuses for that pair run."""
    checks = []
    if n is not None or p is not None:
        pairs = [(n or 3, p or 2)]
        for nn, pp in pairs:
            checks.append(gl_census_check(nn, pp))
            checks.append(triangular_census_check(nn, pp))
        return checks, []
    checks += [gl_census_check(nn, pp) for nn, pp in GL_CENSUS]
    checks += [triangular_census_check(nn, pp) for nn, pp in TRIANGULAR_CENSUS]
    checks += flag_checks()
    checks += orbit_checks()
    checks += chain_checks()
    checks += duality_checks()
    checks += subgroup_oracle_checks(3, 2)
    return checks, []


# samplers


def borodin_tv_check(n=6, p=2, trials=200000, seed=1, tol=Fraction(1, 100)):
    spec = samplers.SamplerSpec("borodin", p, n=n)
    emp = samplers.empirical_distribution(spec, trials, seed)
    tv = samplers.total_variation(emp, spec.exact_target())
    return Check(
        REF_DIVISION,
        "borodin-total-variation",
        f"{float(tv):.6g}",
        f"< {tol}",
        tv < tol,
        {"n": n, "p": p, "trials": trials, "seed": seed},
    )


def coin_frequency_checks(p=2, trials=500000, seed=1, limit=64, sigmas=4):
    counts = samplers.coin_counts(p, trials, seed, limit)
    for lam in [Partition(), Partition([1]), Partition([2]), Partition([1, 1])]:
        q = samplers.coin_limit_probability(lam, p)
        freq = Fraction(counts[lam], trials)
        sd = math.sqrt(float(q * (1 - q)) / trials)
        z = float(freq - q) / sd
        yield Check(
            REF_COINS,
            "coin-limit-frequency",
            f"{float(freq):.6g}",
            f"{float(q):.10g} +/- {sigmas} sd",
            abs(z) <= sigmas,
            {"lambda": str(lam), "p": p, "trials": trials, "seed": seed, "limit": limit, "z": round(z, 3)},
        )


def sampler_suite():
    checks = [borodin_tv_check()]
    checks += coin_frequency_checks()
    return checks, []


SUITES = {
    "identities": identities_suite,
    "oracle": oracle_suite,
    "samplers": sampler_suite,
}


def run(suite="all", **params) -> dict:
    """Run a suite and assemble the JSON report."""
    checks, findings = [], []
    if suite == "all":
        for name in ("identities", "oracle", "samplers"):
            c, f = SUITES[name]()
            checks += c
            findings += f
    elif suite in SUITES:
        c, f = SUITES[suite](**params)
        checks += c
        findings += f
    else:
        raise ValueError(f"unknown suite {suite!r}")

    def key(c):
        return (c.ref, c.name, json.dumps(c.context, sort_keys=True))

    checks.sort(key=key)
    findings.sort(key=key)
    return {
        "schema": SCHEMA,
        "suite": suite,
        "params": {k: v for k, v in params.items() if v is not None},
        "passed": all(c.passed for c in checks),
        "n_checks": len(checks),
        "n_failed": sum(not c.passed for c in checks),
        "checks": [c.to_json() for c in checks],
        "findings": [c.to_json() for c in findings],
        "notes": [LINES_NOTE, ARC_NOTE],
    }
