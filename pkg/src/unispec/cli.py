"""Command-line interface: ``unispec dist|sample|stats|verify``.

Exact values are printed as ``num/den``; the ``approx`` columns are floats
rounded to 10 significant digits for reading only.  Exit codes: 0 success,
1 a verification failed, 2 invalid parameters, 3 a size bound was exceeded.
"""

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import arcs, lines, measures, samplers, verify
from .limits import BoundExceeded
from .partitions import Partition

EXIT_FAILED = 1
EXIT_INVALID = 2
EXIT_BOUND = 3

MODEL_ALIASES = {"gl": measures.GL, "gl-unipotent": measures.GL, "triangular": measures.TRIANGULAR, "tn": measures.TRIANGULAR}


def approx(x) -> str:
    return f"{float(x):.10g}"


def parse_theta(text: str) -> Fraction:
    """θ must be written as a fraction a/b; bare decimals are rejected."""
    if "/" not in text:
        raise ValueError(f"theta must be given as a fraction a/b, got {text!r}")
    num, _, den = text.partition("/")
    return Fraction(int(num), int(den))


def parse_model(text: str) -> str:
    try:
        return MODEL_ALIASES[text]
    except KeyError:
        raise ValueError(f"unknown model {text!r}; use gl or triangular")


class Table:
    def __init__(self, columns, refs):
        self.columns = columns
        self.rows = []
        self.footer = []
        self.refs = refs

    def add(self, *row):
        self.rows.append([str(x) for x in row])

    def render(self, fmt: str) -> str:
        if fmt == "json":
            doc = {
                "columns": self.columns,
                "rows": [dict(zip(self.columns, r)) for r in self.rows],
                "footer": [dict(zip(self.columns, r)) for r in self.footer],
                "ref": self.refs,
            }
            return json.dumps(doc, indent=2) + "\n"
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        w.writerows(self.rows)
        w.writerows(self.footer)
        for ref in self.refs:
            buf.write(f"# ref: {ref}\n")
        return buf.getvalue()


def cmd_dist(args) -> tuple:
    model = parse_model(args.model)
    dist = measures.jordan_dist(model, args.n, args.p)
    ref = verify.REF_GL_LAW if model == measures.GL else verify.REF_TRI_LAW
    table = Table(["partition", "probability", "approx"], [ref])
    for lam, prob in dist.items():
        table.add(lam, prob, approx(prob))
    total = sum(dist.probs.values())
    table.footer.append(["sum", str(total), "exact" if total == 1 else "NOT ONE"])
    return table, 0


def _sampler_spec(args):
    if args.spec:
        return samplers.SamplerSpec.parse(args.spec)
    if args.model == "borodin" and args.n is not None and args.p is not None:
        return samplers.SamplerSpec("borodin", args.p, n=args.n)
    if args.model == "coins" and args.p is not None:
        return samplers.SamplerSpec("coins", args.p, limit=args.limit)
    raise ValueError("give a sampler spec such as borodin:n=6,p=2 or coins:p=2,limit=64")


def cmd_sample(args) -> tuple:
    spec = _sampler_spec(args)
    if args.trials < 1:
        raise ValueError("trials must be at least 1")
    counts = spec.counts(args.trials, args.seed)
    target = spec.exact_target()
    if target is None:
        target = {lam: samplers.coin_limit_probability(lam, spec.p) for lam in counts}
        refs = [verify.REF_COINS, f"truncation bias <= {approx(samplers.coin_truncation_bound(spec.p, spec.limit))}"]
        target_label = "limit_law_approx"
    else:
        refs = [verify.REF_DIVISION]
        target_label = "exact"
    exact_col = target_label == "exact"
    columns = ["partition", "count", "frequency", target_label, "approx_target"] if exact_col else ["partition", "count", "frequency", target_label]
    table = Table(columns, refs)
    keys = set(counts) | (set(target) if spec.kind == "borodin" else set())
    keys = sorted(keys, key=lambda lam: (lam.size, [-x for x in lam]))
    emp = {lam: Fraction(c, args.trials) for lam, c in counts.items()}
    for lam in keys:
        t = target.get(lam, Fraction(0))
        if exact_col:
            table.add(lam, counts.get(lam, 0), approx(emp.get(lam, 0)), t, approx(t))
        else:
            table.add(lam, counts.get(lam, 0), approx(emp.get(lam, 0)), approx(t))
    pad = [""] * (len(columns) - 3)
    if spec.kind == "borodin":
        tv = samplers.total_variation(emp, target)
        table.footer.append(["total_variation", "", approx(tv)] + pad)
    table.footer.append(["trials", str(args.trials), f"seed={args.seed}"] + pad)
    return table, 0


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise ValueError("missing " + ", ".join("--" + m.replace("_", "-") for m in missing))


STATS_COLUMNS = ["model", "n", "p", "r_or_theta", "exact", "closed_or_bound_low", "bound_high", "verdict", "approx"]


def cmd_stats(args) -> tuple:
    kind = args.kind
    if kind == "mean-xr":
        _need(args, "model", "n", "p")
        model = parse_model(args.model)
        ref = verify.REF_GL_MEAN if model == measures.GL else verify.REF_TRI_MEAN
        table = Table(STATS_COLUMNS, [ref])
        rs = [args.r] if args.r is not None else range(1, args.n + 1)
        ok = True
        for r in rs:
            exact = arcs.mean_xr_exact(model, args.n, args.p, r)
            closed = arcs.mean_xr_closed(model, args.n, args.p, r)
            ok &= exact == closed
            table.add(model, args.n, args.p, r, exact, closed, "", "EQUAL" if exact == closed else "DIFFER", approx(exact))
        return table, 0 if ok else EXIT_FAILED
    if kind == "mean-arc":
        _need(args, "model", "n", "p", "theta")
        model = parse_model(args.model)
        theta = parse_theta(args.theta)
        m = arcs.mean_arc(model, args.n, args.p, theta)
        ref = verify.REF_GL_ARC if model == measures.GL else verify.REF_TRI_ARC
        table = Table(STATS_COLUMNS, [ref])
        table.add(model, args.n, args.p, theta, m.exact, m.lower, m.upper, "WITHIN" if m.within else "OUTSIDE", approx(m.exact))
        return table, 0 if m.within else EXIT_FAILED
    if kind == "second-moment":
        _need(args, "n", "p", "r", "s")
        closed = arcs.second_moment_gl_closed(args.n, args.p, args.r, args.s)
        exact = arcs.second_moment_exact(args.n, args.p, args.r, args.s)
        table = Table(STATS_COLUMNS, [verify.REF_SECOND_MOMENT])
        verdict = "EQUAL" if exact == closed else "DIFFER"
        if args.r + args.s > args.n:
            verdict += " (r+s>n)"
        table.add(measures.GL, args.n, args.p, f"{args.r};{args.s}", exact, closed, "", verdict, approx(exact))
        return table, 0 if exact == closed else EXIT_FAILED
    if kind == "orbits":
        _need(args, "lambda_", "p")
        lam = Partition.parse(args.lambda_)
        profile = lines.orbit_profile_formula(lam, args.p)
        brute = None
        if lam.size <= lines.MAX_DIM and lines.is_prime(args.p) and args.p <= lines.MAX_PRIME:
            brute = lines.brute_force_line_orbits(lines.jordan_matrix(lam, args.p))
        table = Table(["lambda", "p", "r", "lines", "orbits", "brute_force_lines", "verdict"], [verify.REF_ORBITS, verify.LINES_NOTE])
        ok = True
        for r, count in sorted(profile.lines.items()):
            b = brute.lines.get(r, 0) if brute else ""
            same = brute is None or b == count
            ok &= same
            table.add(lam, args.p, r, count, count // args.p**r, b, "EQUAL" if brute and same else ("DIFFER" if brute else "formula only"))
        table.footer.append(["total", "", "", str(profile.total), "", str(brute.total) if brute else "", ""])
        return table, 0 if ok else EXIT_FAILED
    if kind == "xtheta":
        _need(args, "lambda_", "p", "theta")
        lam = Partition.parse(args.lambda_)
        theta = parse_theta(args.theta)
        a = arcs.x_theta_telescoped(lam, args.p, theta)
        b = arcs.x_theta_orbits(lam, args.p, theta)
        table = Table(["lambda", "p", "theta", "telescoped", "from_orbits", "verdict"], [verify.REF_ORBITS])
        table.add(lam, args.p, theta, a, b, "EQUAL" if a == b else "DIFFER")
        return table, 0 if a == b else EXIT_FAILED
    raise ValueError(f"unknown stats kind {kind!r}")


def cmd_verify(args) -> tuple:
    params = {}
    if args.suite == "identities":
        if args.n_max is not None:
            params["n_max"] = args.n_max
        if args.p is not None:
            params["primes"] = (args.p,)
    elif args.suite == "oracle":
        params = {"n": args.n, "p": args.p}
    elif args.n_max is not None or args.n is not None:
        raise ValueError("suite 'all' runs at fixed bounds; use identities/oracle for custom ranges")
    report = verify.run(args.suite, **params)
    if "primes" in report["params"]:
        report["params"]["primes"] = list(report["params"]["primes"])
    return json.dumps(report, indent=2, sort_keys=False) + "\n", 0 if report["passed"] else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="unispec", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=["csv", "json"], default="csv")
        p.add_argument("--out", help="write output to PATH instead of stdout")

    d = sub.add_parser("dist", help="exact Jordan-type distribution")
    d.add_argument("--model", required=True)
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--p", type=int, required=True)
    common(d)
    d.set_defaults(func=cmd_dist)

    s = sub.add_parser("sample", help="empirical distribution of a growth sampler")
    s.add_argument("spec", nargs="?", help='"borodin:n=<n>,p=<p>" or "coins:p=<p>,limit=<k>"')
    s.add_argument("--model", choices=["borodin", "coins"])
    s.add_argument("--n", type=int)
    s.add_argument("--p", type=int)
    s.add_argument("--limit", type=int, default=samplers.DEFAULT_COIN_LIMIT)
    s.add_argument("--trials", type=int, default=10000)
    s.add_argument("--seed", type=int, default=samplers.DEFAULT_SEED)
    common(s)
    s.set_defaults(func=cmd_sample)

    st = sub.add_parser("stats", help="eigenvalue and orbit statistics")
    st.add_argument("kind", choices=["mean-xr", "mean-arc", "second-moment", "orbits", "xtheta"])
    st.add_argument("--model")
    st.add_argument("--n", type=int)
    st.add_argument("--p", type=int)
    st.add_argument("--r", type=int)
    st.add_argument("--s", type=int)
    st.add_argument("--theta", help="a/b")
    st.add_argument("--lambda", dest="lambda_", help='e.g. "[2,1]"')
    common(st)
    st.set_defaults(func=cmd_stats)

    v = sub.add_parser("verify", help="run the verification suite, JSON report")
    v.add_argument("suite", nargs="?", choices=["identities", "oracle", "samplers", "all"], default="all")
    v.add_argument("--n-max", type=int)
    v.add_argument("--n", type=int)
    v.add_argument("--p", type=int)
    common(v)
    v.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result, code = args.func(args)
    except BoundExceeded as exc:
        print(f"unispec: bound exceeded: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except (ValueError, TypeError) as exc:
        print(f"unispec: invalid parameters: {exc}", file=sys.stderr)
        return EXIT_INVALID
    text = result if isinstance(result, str) else result.render(args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
