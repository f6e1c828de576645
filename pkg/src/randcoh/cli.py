"""Command-line front end.

Exit codes: 0 success, 1 a verified claim failed, 2 usage error,
3 runtime error.  Reals are written in shortest round-trip form.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from typing import Callable, Optional

from . import closedform as cf
from . import concentration as conc
from .montecarlo import BLOCK, QUANTITIES, QuantitySpec, report_from_run, run

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RUNTIME = 0, 1, 2, 3
MAX_KAPPA = 10


class UsageError(Exception):
    pass


# -- closed-form lookups --------------------------------------------------------

def mean_closed_form(spec: QuantitySpec) -> Optional[float]:
    """Exact Haar mean of a quantity, or None when only an asymptotic value exists."""
    n, q = spec.N, spec.quantity
    table: dict[str, Callable[[], float]] = {
        "l1": lambda: cf.mean_l1_coherence(n).value,
        "l1_scaled": lambda: math.pi / 4,
        "relent": lambda: cf.mean_relative_entropy_coherence(n).value,
        "d2_b_ent": lambda: cf.mean_bures_sq_to_max_entangled(n).value,
        "d2_tr_coh": lambda: cf.mean_trace_sq_to_max_coherent(n),
        "d2_hs_coh": lambda: cf.mean_trace_sq_to_max_coherent(n) / 2,
        "d2_b_coh": lambda: cf.mean_bures_sq_to_max_coherent(n).value,
        "diag_trace_dist": lambda: cf.mean_diag_trace_distance(n).value,
        "alpha_purity": lambda: cf.mean_alpha_purity(n, spec.alpha).value,
    }
    fn = table.get(q)
    return None if fn is None else fn()


CLOSED_FORMS: dict[str, Callable] = {
    "mean_l1": cf.mean_l1_coherence,
    "var_l1": cf.variance_l1_coherence,
    "second_moment_l1": cf.mean_second_moment_l1,
    "mean_relent": cf.mean_relative_entropy_coherence,
    "mean_d2_b_coh": cf.mean_bures_sq_to_max_coherent,
    "rms_tr_coh": cf.rms_trace_dist_to_max_coherent,
    "mean_d2_b_ent": cf.mean_bures_sq_to_max_entangled,
    "mean_negativity_ref": cf.mean_negativity_reference,
    "mean_diag_trace": cf.mean_diag_trace_distance,
    "mean_alpha_purity": cf.mean_alpha_purity,
    "var_alpha_purity": cf.variance_alpha_purity,
}
ALPHA_FORMS = {"mean_alpha_purity", "var_alpha_purity"}

BOUNDS: dict[str, Callable] = {
    "l1": conc.bound_l1_unscaled,
    "l1_scaled": conc.bound_l1_scaled,
    "negativity_scaled": conc.bound_negativity_scaled,
    "d2_tr_coh": conc.bound_tr_dist_coherent,
    "d2_b_coh": conc.bound_bures_coherent,
}


# -- verification claims ----------------------------------------------------------

@dataclass(frozen=True)
class Claim:
    quantity: str
    ns: tuple
    samples: int
    kind: str  # "mean", "variance" or "window"
    target: Callable  # (n, alpha) -> float
    alphas: tuple = (None,)
    window: float = 0.0


CLAIMS: dict[str, Claim] = {
    "mean_l1": Claim("l1", (2, 8, 64), 100_000, "mean", lambda n, a: cf.mean_l1_coherence(n).value),
    "var_l1": Claim("l1", (2, 8, 32), 200_000, "variance",
                    lambda n, a: cf.variance_l1_coherence(n).value),
    "mean_relent": Claim("relent", (2, 16, 128), 100_000, "mean",
                         lambda n, a: cf.mean_relative_entropy_coherence(n).value),
    "d2_tr_coh": Claim("d2_tr_coh", (2, 8, 64), 100_000, "mean",
                       lambda n, a: cf.mean_trace_sq_to_max_coherent(n)),
    "d2_b_coh": Claim("d2_b_coh", (2, 8, 64), 100_000, "mean",
                      lambda n, a: cf.mean_bures_sq_to_max_coherent(n).value),
    "bures_entangled": Claim("d2_b_ent", (2, 3, 4, 8), 100_000, "mean",
                             lambda n, a: cf.mean_bures_sq_to_max_entangled(n).value),
    "diag_trace": Claim("diag_trace_dist", (2, 4, 64), 100_000, "mean",
                        lambda n, a: cf.mean_diag_trace_distance(n).value),
    "alpha_mean": Claim("alpha_purity", (2, 8, 64), 100_000, "mean",
                        lambda n, a: cf.mean_alpha_purity(n, a).value, alphas=(0.5, 2.0, 3.0)),
    "alpha_var": Claim("alpha_purity", (2, 8, 64), 100_000, "variance",
                       lambda n, a: cf.variance_alpha_purity(n, a).value, alphas=(0.5, 2.0, 3.0)),
    "negativity": Claim("negativity_scaled", (32,), 20_000, "window",
                        lambda n, a: cf.NEGATIVITY_RATIO, window=0.01),
}


def verify_rows(claims, ns=None, samples=None, alphas=None, seed=0, threads=None):
    rows = []
    for name in claims:
        claim = CLAIMS[name]
        for n in ns or claim.ns:
            for alpha in (alphas if alphas and claim.alphas != (None,) else claim.alphas):
                spec = QuantitySpec(claim.quantity, n, alpha)
                m = samples or claim.samples
                if claim.kind == "variance" and m < 8 * BLOCK:
                    raise UsageError(f"{name} needs at least {8 * BLOCK} samples "
                                     "for a batch-means standard error")
                rep = report_from_run(run(spec, m, seed, threads=threads))
                target = claim.target(n, alpha)
                if claim.kind == "variance":
                    observed, se = rep.variance, rep.batch_variance_stderr
                else:
                    observed, se = rep.mean, rep.stderr
                diff = observed - target
                if se:
                    z = diff / se
                else:
                    z = 0.0 if abs(diff) <= 1e-12 else math.inf
                if claim.kind == "window":
                    ok = abs(diff) <= claim.window
                else:
                    ok = abs(z) <= 3.0
                rows.append({
                    "claim": name, "quantity": claim.quantity, "n": n, "alpha": alpha,
                    "samples": m, "seed": seed, "statistic": claim.kind,
                    "closed_form": target, "estimate": observed, "stderr": se,
                    "z": z, "pass": ok,
                })
    return rows


# -- output ------------------------------------------------------------------------

def _num(x):
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    x = float(x)
    return x if math.isfinite(x) else None


def _cell(x):
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return repr(x)
    return str(x)


def render(records, fmt: str, columns=None, single=False) -> str:
    if fmt == "json":
        clean = [{k: _num(v) for k, v in r.items()} for r in records]
        payload = clean[0] if single and len(clean) == 1 else clean
        return json.dumps(payload, indent=2) + "\n"
    columns = columns or list(dict.fromkeys(k for r in records for k in r))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in records:
        w.writerow([_cell(r.get(c)) for c in columns])
    return buf.getvalue()


def emit(text: str, out: Optional[str]):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


# -- argument parsing ---------------------------------------------------------------

def _int_list(s):
    try:
        return [int(x) for x in s.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {s!r}")


def _float_list(s):
    try:
        return [float(x) for x in s.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {s!r}")


def _kappa_range(s):
    if "-" in s:
        lo, hi = s.split("-", 1)
        return list(range(int(lo), int(hi) + 1))
    return _int_list(s)


def _positive_int(s):
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="randcoh", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt="json"):
        sp.add_argument("--format", choices=("json", "csv"), default=fmt)
        sp.add_argument("--out", default=None, help="output path (default stdout)")

    def mc(sp, samples=100_000):
        sp.add_argument("--samples", type=_positive_int, default=samples)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--threads", type=_positive_int, default=None,
                        help="worker threads; results do not depend on it")

    sp = sub.add_parser("estimate", help="Monte Carlo estimate of one quantity")
    sp.add_argument("--quantity", required=True, choices=sorted(QUANTITIES))
    sp.add_argument("--n", type=_positive_int, required=True)
    sp.add_argument("--alpha", type=float, default=None)
    mc(sp)
    common(sp)

    sp = sub.add_parser("closedform", help="evaluate closed-form averages")
    sp.add_argument("--quantity", required=True, choices=sorted(CLOSED_FORMS))
    sp.add_argument("--n", type=_int_list, required=True)
    sp.add_argument("--alpha", type=float, default=None)
    common(sp)

    sp = sub.add_parser("verify", help="compare Monte Carlo estimates with closed forms")
    sp.add_argument("--claim", type=lambda s: s.split(","), default=list(CLAIMS),
                    help=f"comma-separated subset of: {', '.join(CLAIMS)}")
    sp.add_argument("--n", type=_int_list, default=None)
    sp.add_argument("--alpha", type=_float_list, default=None)
    sp.add_argument("--samples", type=_positive_int, default=None)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--threads", type=_positive_int, default=None)
    common(sp, fmt="csv")

    sp = sub.add_parser("tails", help="empirical tails against concentration bounds")
    sp.add_argument("--quantity", required=True, choices=sorted(QUANTITIES))
    sp.add_argument("--n", type=_int_list, required=True)
    sp.add_argument("--alpha", type=float, default=None)
    sp.add_argument("--epsilon", type=_float_list, required=True)
    sp.add_argument("--center", type=float, default=None,
                    help="default: the closed-form mean")
    mc(sp)
    common(sp, fmt="csv")

    sp = sub.add_parser("figure", help="entangled-set Bures average versus kappa, N = 2^kappa")
    sp.add_argument("--kappa", type=_kappa_range, default=list(range(1, 7)))
    sp.add_argument("--mc-max-kappa", type=int, default=5)
    mc(sp, samples=20_000)
    sp.add_argument("--out", default=None)

    sp = sub.add_parser("report", help="table of every closed form for a list of N")
    sp.add_argument("--n", type=_int_list, required=True)
    sp.add_argument("--alpha", type=float, default=2.0)
    common(sp, fmt="csv")
    return p


# -- commands ------------------------------------------------------------------------

def cmd_estimate(args) -> int:
    spec = QuantitySpec(args.quantity, args.n, args.alpha)
    rep = report_from_run(run(spec, args.samples, args.seed, threads=args.threads))
    rec = {"quantity": rep.quantity, "n": rep.N}
    if rep.alpha is not None:
        rec["alpha"] = rep.alpha
    rec.update(samples=rep.samples, seed=rep.master_seed, mean=rep.mean,
               variance=rep.variance, stderr=rep.stderr)
    target = mean_closed_form(spec)
    if target is not None:
        rec["closed_form"] = target
        z = (rep.mean - target) / rep.stderr if rep.stderr > 0 else 0.0
        rec["z"] = z
    emit(render([rec], args.format, single=True), args.out)
    return EXIT_OK


def cmd_closedform(args) -> int:
    fn = CLOSED_FORMS[args.quantity]
    if args.quantity in ALPHA_FORMS and args.alpha is None:
        raise UsageError(f"{args.quantity} needs --alpha")
    recs = []
    for n in args.n:
        v = fn(n, args.alpha) if args.quantity in ALPHA_FORMS else fn(n)
        rec = {"quantity": v.quantity, "n": v.N}
        if v.alpha is not None:
            rec["alpha"] = v.alpha
        rec["value"] = v.value
        if v.limit_value is not None:
            rec["limit_value"] = v.limit_value
        if v.asymptotic:
            rec["asymptotic"] = True
        recs.append(rec)
    emit(render(recs, args.format), args.out)
    return EXIT_OK


VERIFY_COLUMNS = ["claim", "quantity", "n", "alpha", "samples", "seed", "statistic",
                  "closed_form", "estimate", "stderr", "z", "pass"]


def cmd_verify(args) -> int:
    unknown = [c for c in args.claim if c not in CLAIMS]
    if unknown:
        raise UsageError(f"unknown claim(s): {', '.join(unknown)}")
    rows = verify_rows(args.claim, args.n, args.samples, args.alpha, args.seed, args.threads)
    emit(render(rows, args.format, VERIFY_COLUMNS), args.out)
    failed = [r for r in rows if not r["pass"]]
    for r in failed:
        print(f"FAIL {r['claim']} n={r['n']} alpha={r['alpha']} z={r['z']}", file=sys.stderr)
    return EXIT_FAIL if failed else EXIT_OK


TAIL_COLUMNS = ["quantity", "n", "alpha", "epsilon", "center", "samples", "seed", "exceed",
                "tail", "stderr", "bound", "chebyshev", "sound"]


def cmd_tails(args) -> int:
    rows = []
    for n in args.n:
        spec = QuantitySpec(args.quantity, n, args.alpha)
        center = args.center if args.center is not None else mean_closed_form(spec)
        if center is None:
            raise UsageError(f"{args.quantity} has no exact closed-form mean; pass --center")
        res = run(spec, args.samples, args.seed, threads=args.threads,
                  tails=[(center, e) for e in args.epsilon])
        for eps, tc in zip(args.epsilon, res.tails):
            bound = BOUNDS[args.quantity](n, eps).analytic_bound if args.quantity in BOUNDS and n >= 2 else None
            cheb = conc.chebyshev_bound(cf.variance_l1_scaled(n), eps) if args.quantity == "l1_scaled" else None
            sound = None if bound is None or bound >= 1 else tc.fraction <= bound + 3 * tc.stderr
            rows.append({"quantity": args.quantity, "n": n, "alpha": args.alpha, "epsilon": eps,
                         "center": center, "samples": args.samples, "seed": args.seed,
                         "exceed": tc.exceed, "tail": tc.fraction, "stderr": tc.stderr,
                         "bound": bound, "chebyshev": cheb, "sound": sound})
    emit(render(rows, args.format, TAIL_COLUMNS), args.out)
    return EXIT_OK


FIGURE_COLUMNS = ["kappa", "n", "closed_form", "mc_mean", "mc_stderr", "samples", "seed"]


def figure_rows(kappas, samples, seed, mc_max_kappa=5, threads=None):
    rows = []
    for k in kappas:
        if not 0 <= k <= MAX_KAPPA:
            raise UsageError(f"kappa must lie in [0, {MAX_KAPPA}], got {k}")
        n = 2 ** k
        row = {"kappa": k, "n": n, "closed_form": cf.mean_bures_sq_to_max_entangled(n).value,
               "mc_mean": None, "mc_stderr": None, "samples": None, "seed": None}
        if k <= mc_max_kappa:
            rep = report_from_run(run(QuantitySpec("d2_b_ent", n), samples, seed, threads=threads))
            row.update(mc_mean=rep.mean, mc_stderr=rep.stderr, samples=samples, seed=seed)
        rows.append(row)
    return rows


def cmd_figure(args) -> int:
    rows = figure_rows(args.kappa, args.samples, args.seed, args.mc_max_kappa, args.threads)
    emit(render(rows, "csv", FIGURE_COLUMNS), args.out)
    return EXIT_OK


def cmd_report(args) -> int:
    recs = []
    for n in args.n:
        rec = {"n": n}
        for name, fn in CLOSED_FORMS.items():
            if name == "mean_negativity_ref" and n < 2:
                rec[name] = None
                continue
            rec[name] = (fn(n, args.alpha) if name in ALPHA_FORMS else fn(n)).value
        rec["alpha"] = args.alpha
        recs.append(rec)
    emit(render(recs, args.format), args.out)
    return EXIT_OK


COMMANDS = {"estimate": cmd_estimate, "closedform": cmd_closedform, "verify": cmd_verify,
            "tails": cmd_tails, "figure": cmd_figure, "report": cmd_report}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ValueError) as exc:
        print(f"randcoh {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001
        print(f"randcoh {args.command}: runtime failure: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
