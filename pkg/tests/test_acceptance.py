"""Acceptance criteria, one test per criterion.

Each test prints a single PASS/FAIL line (also collected into ``RESULTS`` and
repeated in the pytest terminal summary).  Run standalone with
``python3 tests/test_acceptance.py`` for just the summary lines.
"""
import math
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent))

from randcoh import closedform as cf
from randcoh import concentration as conc
from randcoh import distances as dist
from randcoh import measures as meas
from randcoh.cli import figure_rows, main as cli_main
from randcoh.montecarlo import QuantitySpec, estimate, report_from_run, run
from randcoh.specfun import SQRT_PI, laguerre_integral_half
from randcoh.states import (SchmidtSpectrum, SimplexPoint, haar_amplitudes,
                            haar_bipartite_amplitudes, schmidt_lambdas, substream)
from oracles import oracle_quadrature_laguerre, projector_distance

SEED = 20240
RESULTS: list[str] = []


def record(criterion, title, checks):
    """checks: list of (label, ok, detail).  Emits one line, returns overall status."""
    ok = all(c[1] for c in checks)
    failed = [f"{c[0]} ({c[2]})" for c in checks if not c[1]]
    detail = f"{len(checks)} checks"
    if failed:
        detail = "; ".join(failed) + f" [{len(checks) - len(failed)} of {len(checks)} checks pass]"
    line = f"{'PASS' if ok else 'FAIL'} criterion {criterion:>2} {title}: {detail}"
    print(line)
    RESULTS.append(line)
    return ok


def within_3se(rep, target):
    z = (rep.mean - target) / rep.stderr if rep.stderr > 0 else (0.0 if rep.mean == target else math.inf)
    return abs(z) <= 3, f"z={z:+.2f}"


def test_criterion_01_mean_l1():
    checks = []
    for n in (2, 4, 8, 64, 256):
        rep = estimate(QuantitySpec("l1_scaled", n), 100_000, SEED)
        ok, z = within_3se(rep, math.pi / 4)
        checks.append((f"N={n}", ok, f"{rep.mean:.6f} {z}"))
    assert record(1, "mean C_l1/(N-1) = pi/4", checks)


def test_criterion_02_variance_l1():
    checks = []
    for n in (2, 8, 32):
        v = report_from_run(run(QuantitySpec("l1", n), 1_000_000, SEED)).variance
        published = cf.variance_l1_published(n)
        corrected = cf.variance_l1_coherence(n).value
        rel = abs(v - published) / published
        checks.append((f"N={n} vs stated formula", rel <= 0.05,
                       f"MC {v:.6g} vs {published:.6g}, rel {rel:.2%}"))
        rel_c = abs(v - corrected) / corrected
        checks.append((f"N={n} vs re-derived formula", rel_c <= 0.05,
                       f"MC {v:.6g} vs {corrected:.6g}, rel {rel_c:.2%}"))
    assert record(2, "Var C_l1 within 5%", checks)


def test_criterion_03_relent():
    checks = []
    for n in (2, 16, 128):
        rep = estimate(QuantitySpec("relent", n), 100_000, SEED)
        target = sum(1 / k for k in range(2, n + 1))
        ok, z = within_3se(rep, target)
        checks.append((f"N={n}", ok, z))
    assert record(3, "mean C_r = H_N - 1", checks)


def test_criterion_04_coherent_distances():
    checks = []
    for n in (2, 8, 64):
        rep = estimate(QuantitySpec("d2_tr_coh", n), 100_000, SEED)
        ok, z = within_3se(rep, (n - 1) * (4 - math.pi) / n)
        checks.append((f"Tr N={n}", ok, z))
        rep = estimate(QuantitySpec("d2_b_coh", n), 100_000, SEED + 1)
        target = 2 - math.sqrt(n) * math.exp(math.lgamma(0.5) + math.lgamma(n) - math.lgamma(n + 0.5))
        ok, z = within_3se(rep, target)
        checks.append((f"Bures N={n}", ok, z))
    b2 = cf.mean_bures_sq_to_max_coherent(2).value
    checks.append(("Bures N=2 target", abs(b2 - 0.114382) < 5e-7, f"{b2:.7f}"))
    ns = [2 ** k for k in range(1, 21)]
    rms = [cf.rms_trace_dist_to_max_coherent(n).value for n in ns]
    bures = [cf.mean_bures_sq_to_max_coherent(n).value for n in ns]
    checks.append(("RMS trend monotone", all(b > a for a, b in zip(rms, rms[1:])), ""))
    checks.append(("RMS -> sqrt(4-pi)", abs(rms[-1] - math.sqrt(4 - math.pi)) < 1e-3, f"{rms[-1]:.5f}"))
    checks.append(("RMS -> 0.9625 as printed", abs(rms[-1] - 0.9625) < 1e-3,
                   f"{rms[-1]:.5f}; sqrt(4-pi) is {math.sqrt(4 - math.pi):.5f}"))
    checks.append(("Bures trend monotone", all(b > a for a, b in zip(bures, bures[1:])), ""))
    checks.append(("Bures -> 0.2275", abs(bures[-1] - 0.2275) < 1e-3, f"{bures[-1]:.5f}"))
    assert record(4, "coherent-set distances", checks)


def test_criterion_05_entangled_bures():
    checks = []
    for n in (2, 3, 4, 8):
        rep = estimate(QuantitySpec("d2_b_ent", n), 100_000, SEED)
        ok, z = within_3se(rep, cf.mean_bures_sq_to_max_entangled(n).value)
        checks.append((f"N={n}", ok, z))
    rows = figure_rows(range(1, 7), 0, SEED, mc_max_kappa=-1)
    vals = [r["closed_form"] for r in rows]
    checks.append(("figure monotone", all(b > a for a, b in zip(vals, vals[1:])),
                   " ".join(f"{v:.4f}" for v in vals)))
    checks.append(("figure close to 2 at kappa=6", abs(vals[-1] - 2) <= 0.5,
                   f"value {vals[-1]:.4f}; large-N value is {2 * (1 - 8 / (3 * math.pi)):.4f}"))
    assert record(5, "entangled-set Bures", checks)


def test_criterion_06_negativity():
    n, m = 32, 20_000
    checks = []
    rep = estimate(QuantitySpec("negativity_scaled", n), m, SEED)
    checks.append(("scaled mean in 0.72037 +- 0.01", abs(rep.mean - 0.72037) <= 0.01,
                   f"{rep.mean:.5f} +- {rep.stderr:.5f}"))
    tr = estimate(QuantitySpec("d2_tr_ent", n), m, SEED).mean
    hs = estimate(QuantitySpec("d2_hs_ent", n), m, SEED).mean
    target = 4 * (1 - 0.72037) * (n - 1) / n
    checks.append(("D_Tr^2 within 5%", abs(tr - target) <= 0.05 * target, f"{tr:.5f} vs {target:.5f}"))
    checks.append(("D_HS^2 = D_Tr^2 / 2", abs(hs - tr / 2) <= 1e-12 * tr, f"{hs:.6f}"))
    checks.append(("D_HS^2 within 5%", abs(hs - target / 2) <= 0.05 * target / 2, f"{hs:.5f}"))
    assert record(6, "negativity ~ 0.72037 N_max", checks)


def test_criterion_07_complementarity():
    worst = 0.0
    for n in (2, 8, 32):
        lam = schmidt_lambdas(haar_bipartite_amplitudes(n, 10_000, substream(SEED, n)))
        for row in lam:
            worst = max(worst, *dist.complementarity_residuals(SchmidtSpectrum(row), "entangled")[:2])
        w = np.abs(haar_amplitudes(n, 10_000, substream(SEED + 1, n))) ** 2
        for row in w:
            worst = max(worst, *dist.complementarity_residuals(SimplexPoint(row), "coherent")[:2])
    assert record(7, "complementarity residuals <= 1e-9",
                  [("max residual", worst <= 1e-9, f"{worst:.2e}")])


def test_criterion_08_diag_trace():
    checks = []
    for n in (2, 4, 64):
        rep = estimate(QuantitySpec("diag_trace_dist", n), 100_000, SEED)
        ok, z = within_3se(rep, 2 * (1 - 1 / n) ** n)
        checks.append((f"N={n}", ok, z))
        w = np.abs(haar_amplitudes(n, 100_000, substream(SEED, n))) ** 2
        bad = int(np.sum(dist.diag_trace_from_weights(w) < dist.bures_sq_from_weights(w) - 1e-10))
        checks.append((f"Bures lower bound N={n}", bad == 0, f"{bad} violations"))
    assert record(8, "diagonal trace distance", checks)


def test_criterion_09_alpha_purity():
    checks = []
    for n in (2, 8, 64):
        for a in (0.5, 2.0, 3.0):
            rep = estimate(QuantitySpec("alpha_purity", n, a), 100_000, SEED)
            target = math.exp(math.lgamma(a + 1) + math.lgamma(n + 1) - math.lgamma(a + n))
            ok, z = within_3se(rep, target)
            checks.append((f"mean N={n} a={a}", ok, z))
            v = cf.variance_alpha_purity(n, a).value
            rel = abs(rep.variance - v) / v
            checks.append((f"var N={n} a={a}", rel <= 0.05, f"rel {rel:.2%}"))
    v = cf.variance_alpha_purity(2, 2).value
    checks.append(("var N=2 a=2 is 1/45", abs(v - 1 / 45) < 1e-15, f"{v!r}"))
    assert record(9, "alpha-classical purity", checks)


def test_criterion_10_special_functions():
    worst = max(abs(float(laguerre_integral_half(k)) - oracle_quadrature_laguerre(k))
                / oracle_quadrature_laguerre(k) for k in range(41))
    checks = [
        ("quadrature k<=40", worst <= 1e-10, f"max rel err {worst:.1e}"),
        ("I_00 = sqrt(pi)/2", laguerre_integral_half(0).coefficient == Fraction(1, 2), ""),
        ("I_11 = 7 sqrt(pi)/8", laguerre_integral_half(1).coefficient == Fraction(7, 8), ""),
        ("float uses sqrt(pi)", float(laguerre_integral_half(0)) == SQRT_PI / 2, ""),
    ]
    assert record(10, "special functions", checks)


def test_criterion_11_concentration():
    n, m = 64, 100_000
    checks = []
    graded = 0
    for q, fn, center in (
        ("l1_scaled", conc.bound_l1_scaled, math.pi / 4),
        ("d2_tr_coh", conc.bound_tr_dist_coherent, cf.mean_trace_sq_to_max_coherent(n)),
        ("d2_b_coh", conc.bound_bures_coherent, cf.mean_bures_sq_to_max_coherent(n).value),
    ):
        eps = (0.05, 0.1)
        res = run(QuantitySpec(q, n), m, SEED, tails=[(center, e) for e in eps])
        for e, tc in zip(eps, res.tails):
            bound = fn(n, e).analytic_bound
            if bound < 0.5:
                graded += 1
                checks.append((f"{q} eps={e}", tc.fraction <= bound + 3 * tc.stderr,
                               f"tail {tc.fraction:.4g} bound {bound:.4g}"))
            if q == "l1_scaled":
                cheb = conc.chebyshev_bound(cf.variance_l1_scaled(n), e)
                checks.append((f"Chebyshev eps={e}", tc.fraction <= cheb + 3 * tc.stderr,
                               f"tail {tc.fraction:.4g} bound {cheb:.4g}"))
    checks.append((f"Levy grid points graded: {graded}", True, ""))
    tails = []
    for k in (16, 64, 256):
        tc = run(QuantitySpec("l1", k), m, SEED, tails=[(cf.mean_l1_coherence(k).value, 1.0)]).tails[0]
        tails.append(tc)
    grows = all(b.fraction >= a.fraction - 3 * math.hypot(a.stderr, b.stderr)
                for a, b in zip(tails, tails[1:]))
    checks.append(("unscaled tails do not shrink", grows,
                   " ".join(f"{t.fraction:.4f}" for t in tails)))
    ok = record(11, "concentration soundness", checks)
    if graded == 0:
        print("  note: every Levy bound at N=64 exceeds 0.5, so no grid point is graded")
    assert ok


def _pairs(amps_fn, n, size, stream):
    """Half independent pairs, half perturbations at scales 1e-6..1."""
    a = amps_fn(n, size, stream)
    noise = amps_fn(n, size, stream)
    scale = 10.0 ** stream.uniform(-6, 0, size).reshape((size,) + (1,) * (a.ndim - 1))
    b = a + scale * noise
    b[: size // 2] = noise[: size // 2]
    axes = tuple(range(1, a.ndim))
    b /= np.sqrt(np.sum(np.abs(b) ** 2, axis=axes, keepdims=True))
    return a, b, projector_distance(a, b)


def test_criterion_12_lipschitz():
    checks = []
    r2 = math.sqrt(2)
    for n in (2, 3, 8, 16):
        a, b, d = _pairs(haar_bipartite_amplitudes, n, 10_000, substream(SEED, 100 + n))
        la, lb = schmidt_lambdas(a), schmidt_lambdas(b)
        for label, f, eta in (("negativity", meas.negativity_from_weights, n / (2 * r2)),
                              ("G1", dist.trace_sq_from_weights, 2 * r2),
                              ("G2", dist.hs_sq_from_weights, r2),
                              ("Bures", dist.bures_sq_from_weights, r2)):
            bad = int(np.sum(np.abs(f(la) - f(lb)) > eta * d + 1e-9))
            checks.append((f"{label} N={n}", bad == 0, f"{bad} violations"))
        x, y, d = _pairs(haar_amplitudes, n, 10_000, substream(SEED, 200 + n))
        gap = np.abs(meas.l1_from_weights(np.abs(x) ** 2) - meas.l1_from_weights(np.abs(y) ** 2))
        bad = int(np.sum(gap > n / r2 * d + 1e-9))
        checks.append((f"C_l1 N={n}", bad == 0, f"{bad} violations"))
    assert record(12, "Lipschitz inequalities", checks)


def test_criterion_13_determinism(tmp_path):
    outs = []
    for threads in (1, 4):
        path = tmp_path / f"verify_{threads}.csv"
        cli_main(["verify", "--seed", "5", "--threads", str(threads), "--out", str(path)])
        outs.append(path.read_bytes())
    assert record(13, "verify byte-identical across --threads",
                  [("bytes equal", outs[0] == outs[1] and len(outs[0]) > 0, f"{len(outs[0])} bytes")])


if __name__ == "__main__":
    import tempfile
    failures = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn(Path(tempfile.mkdtemp())) if "tmp_path" in fn.__code__.co_varnames else fn()
            except AssertionError:
                failures += 1
    sys.exit(1 if failures else 0)
