"""Acceptance suite: the headline guarantees of the package, one test each.

Every test prints a single [Cn ...] PASS/FAIL line so a plain pytest run
doubles as the acceptance report.  Tolerances and runtime budgets are part
of the assertions.
"""

import time

import numpy as np
import pytest
from click.testing import CliRunner

from hodgerank import (Curve, Graph, NetworkSpec, SolverConfig, SweepGrid,
                       TrialConfig, build_clique_complex, complex_stats,
                       fit_power_law, fit_sigmoid_primitive, hodge_decompose,
                       incidence_1, incidence_2, make_disordered_cochain,
                       make_rng, min_norm_lsq, run_sweep, run_trial, sample,
                       sample_stream, select_range_and_fit, softplus_primitive,
                       true_ratings)
from hodgerank.cli import main as cli_main
from oracles import random_test_system, svd_min_norm_solve

SEED = 922

MODEL_THETAS = [("lattice1d", 2.0), ("erdos_renyi", 8.0),
                ("barabasi_albert", 3.0), ("watts_strogatz", 0.2)]


def report(capsys, tag, ok, detail, elapsed, budget):
    status = "PASS" if ok and elapsed < budget else "FAIL"
    with capsys.disabled():
        print(f"\n[{tag}] {status} ({detail}, {elapsed:.1f}s / budget {budget:.0f}s)")
    assert ok, f"{tag}: {detail}"
    assert elapsed < budget, f"{tag}: runtime {elapsed:.1f}s over budget {budget}s"


def test_c1_orthogonality_ledger(capsys):
    t0 = time.perf_counter()
    rng = np.random.default_rng(SEED)
    worst_ortho, worst_recon = 0.0, 0.0
    for trial in range(500):
        model, theta = MODEL_THETAS[trial % 4]
        n = int(rng.choice([32, 64, 128, 256]))
        sigma = float(rng.choice([0.0, 0.5, 2.0]))
        spec = NetworkSpec(model, n, theta, SEED)
        res = run_trial(spec, sigma, trial, TrialConfig())
        assert res.solve_ok
        worst_ortho = max(worst_ortho, res.ortho_defect)
        worst_recon = max(worst_recon, res.recon_defect)
    elapsed = time.perf_counter() - t0
    ok = worst_ortho <= 1e-6 and worst_recon <= 1e-8
    report(capsys, "C1 orthogonality ledger, 500 trials", ok,
           f"max |norms gap|/|f|^2 = {worst_ortho:.2e}, "
           f"max reconstruction = {worst_recon:.2e}", elapsed, 120)


def test_c2_perfect_retrieval_at_zero_disorder(capsys):
    t0 = time.perf_counter()
    cfg = TrialConfig(solver=SolverConfig(atol=1e-12, btol=1e-12))
    clean, worst_tau = 0, 0.0
    for trial in range(100):
        model, theta = MODEL_THETAS[trial % 4]
        n = (64, 128, 256, 512)[(trial // 4) % 4]
        res = run_trial(NetworkSpec(model, n, theta, SEED + 1), 0.0, trial, cfg)
        worst_tau = max(worst_tau, res.tau)
        if res.tau <= 1e-6 and res.rho == 0.0:
            clean += 1
    elapsed = time.perf_counter() - t0
    report(capsys, "C2 perfect retrieval at sigma=0", clean == 100,
           f"{clean}/100 trials exact, worst tau = {worst_tau:.2e}",
           elapsed, 60)


def test_c3_min_norm_solver_matches_svd_oracle(capsys):
    t0 = time.perf_counter()
    rng = np.random.default_rng(SEED + 2)
    worst = 0.0
    for _ in range(200):
        a, b = random_test_system(rng)
        x, _ = min_norm_lsq(a, b, atol=1e-13, btol=1e-13)
        x_ref = svd_min_norm_solve(a, b)
        worst = max(worst, float(np.linalg.norm(x - x_ref)
                                 / max(1.0, np.linalg.norm(x_ref))))
    elapsed = time.perf_counter() - t0
    report(capsys, "C3 min-norm solver vs dense SVD oracle, 200 systems",
           worst <= 1e-6, f"max relative deviation = {worst:.2e}", elapsed, 30)


def test_c4_reference_fixture_and_exact_decompositions(capsys):
    t0 = time.perf_counter()
    fixture = Graph.from_edges(8, [(0, 1), (0, 2), (1, 2), (1, 5), (2, 3),
                                   (3, 4), (4, 5), (4, 6), (6, 7)])
    c = build_clique_complex(fixture)
    st = complex_stats(c, compute_betti=True)
    ok = (st.kappa0, st.kappa1, st.kappa2) == (8, 9, 1)
    ok &= st.beta0 == 1 and st.beta1 == 1
    chain = incidence_2(c) @ incidence_1(c)
    ok &= chain.nnz == 0 or np.max(np.abs(chain.toarray())) == 0

    tri = build_clique_complex(Graph.from_edges(3, [(0, 1), (0, 2), (1, 2)]))
    dec = hodge_decompose(tri, np.array([1.0, -1.0, 1.0]))
    ok &= np.linalg.norm(dec.gradient) <= 1e-10
    ok &= np.linalg.norm(dec.harmonic) <= 1e-10
    ok &= np.allclose(dec.solenoidal, [1.0, -1.0, 1.0], atol=1e-10)

    ring = build_clique_complex(
        Graph.from_edges(4, [(0, 1), (0, 3), (1, 2), (2, 3)]))
    dec = hodge_decompose(ring, np.array([1.0, -1.0, 1.0, 1.0]))
    ok &= np.linalg.norm(dec.gradient) <= 1e-10
    ok &= np.linalg.norm(dec.solenoidal) <= 1e-10
    ok &= np.allclose(dec.harmonic, [1.0, -1.0, 1.0, 1.0], atol=1e-10)
    elapsed = time.perf_counter() - t0
    report(capsys, "C4 reference fixture and exact decompositions", bool(ok),
           f"kappa=({st.kappa0},{st.kappa1},{st.kappa2}), "
           f"beta=({st.beta0},{st.beta1})", elapsed, 1)


def test_c5_rating_error_linear_in_disorder(capsys):
    t0 = time.perf_counter()
    grid = SweepGrid("erdos_renyi", [128], [8.0], [0.125, 0.25, 0.5, 1.0])
    rows = run_sweep(grid, samples=500, seed=SEED + 5, workers=1)
    fit = fit_power_law(np.array([r.sigma for r in rows]),
                        np.array([r.tau_mean for r in rows]))
    elapsed = time.perf_counter() - t0
    ok = abs(fit.exponent - 1.0) <= 0.1
    report(capsys, "C5 rating error linear in disorder strength", ok,
           f"log-log slope = {fit.exponent:.4f} (want 1.0 +/- 0.1)",
           elapsed, 300)


def test_c6_chain_size_scaling(capsys):
    t0 = time.perf_counter()
    grid = SweepGrid("lattice1d", [64, 128, 256, 512, 1024], [2.0], [1.0])
    rows = run_sweep(grid, samples=500, seed=SEED + 6, workers=1)
    fit = fit_power_law(np.array([r.n for r in rows], dtype=float),
                        np.array([r.tau_mean for r in rows]))
    elapsed = time.perf_counter() - t0
    ok = abs(fit.exponent - 0.5) <= 0.1
    report(capsys, "C6 chain-graph size scaling of rating error", ok,
           f"fitted exponent = {fit.exponent:.4f} (want 0.5 +/- 0.1)",
           elapsed, 600)


def test_c7_degree_scaling(capsys):
    t0 = time.perf_counter()
    grid = SweepGrid("erdos_renyi", [256], [8.0, 16.0, 32.0, 64.0], [1.0])
    rows = run_sweep(grid, samples=500, seed=SEED + 7, workers=1)
    fit = fit_power_law(np.array([r.theta for r in rows]),
                        np.array([r.tau_mean for r in rows]))
    elapsed = time.perf_counter() - t0
    ok = abs(fit.exponent - (-0.67)) <= 0.15
    report(capsys, "C7 mean-degree scaling of rating error", ok,
           f"fitted exponent = {fit.exponent:.4f} (want -0.67 +/- 0.15)",
           elapsed, 600)


def test_c8_transition_detection(capsys):
    t0 = time.perf_counter()
    sigmas = [round(0.2 * i, 10) for i in range(21)]
    grid = SweepGrid("erdos_renyi", [128], [16.0], sigmas)
    rows = run_sweep(grid, samples=1000, seed=SEED + 8, workers=1)
    ok = rows[0].rho_mean == 0.0 and rows[1].rho_mean == 0.0
    curve = Curve(sigma=[r.sigma for r in rows],
                  value=[r.rho_mean for r in rows],
                  sem=[r.rho_sem for r in rows])
    fit = select_range_and_fit(curve)
    per_point = fit.residual_sse / fit.n_points
    ok &= fit.sigma_c > 0 and fit.B > 0 and per_point < 2
    elapsed = time.perf_counter() - t0
    report(capsys, "C8 rank-error transition detection", bool(ok),
           f"flat points = {sum(r.rho_mean == 0 for r in rows)}, "
           f"sigma_c = {fit.sigma_c:.3f}, B = {fit.B:.2f}, "
           f"weighted residual/point = {per_point:.3f}", elapsed, 900)


def test_c9_sigmoid_round_trip(capsys):
    t0 = time.perf_counter()
    ok = True
    detail = []
    for a, b, sc in [(0.8, 3.0, 2.0), (1.5, 6.0, 1.2), (0.3, 1.5, 2.8)]:
        sigmas = np.linspace(0.0, 6.0, 25)
        curve = Curve(sigma=sigmas, value=softplus_primitive(sigmas, a, b, sc),
                      sem=np.full(25, 1e-3))
        fit = fit_sigmoid_primitive(curve, (0.0, 6.0))
        for got, want in [(fit.A, a), (fit.B, b), (fit.sigma_c, sc)]:
            ok &= abs(got - want) <= 1e-3 * abs(want)
    rng = np.random.default_rng(SEED + 9)
    sigmas = np.linspace(0.0, 6.0, 25)
    truth = softplus_primitive(sigmas, 0.8, 3.0, 2.0)
    recovered = []
    for _ in range(50):
        noisy = truth * (1.0 + 0.01 * rng.standard_normal(25))
        curve = Curve(sigma=sigmas, value=np.maximum(noisy, 0.0),
                      sem=np.maximum(0.01 * truth, 1e-6))
        fit = fit_sigmoid_primitive(curve, (0.0, 6.0))
        recovered.append([fit.A, fit.B, fit.sigma_c])
    means = np.mean(recovered, axis=0)
    ses = np.std(recovered, axis=0, ddof=1) / np.sqrt(50)
    for got, want, se, name in zip(means, (0.8, 3.0, 2.0), ses, "AB s"):
        ok &= abs(got - want) <= 2 * max(se, 1e-9)
        detail.append(f"{name.strip() or 'sigma_c'}={got:.4f}+/-{se:.4f}")
    elapsed = time.perf_counter() - t0
    report(capsys, "C9 sigmoid-fit round trip", bool(ok),
           "noiseless within 0.1%; noisy means " + ", ".join(detail),
           elapsed, 30)


def test_c10_experiment_determinism_across_workers(capsys, tmp_path):
    t0 = time.perf_counter()
    runner = CliRunner()
    args = ["experiment", "--model", "erdos_renyi", "--n", "48", "--theta", "8",
            "--sigma", "0,0.5,1", "--samples", "50", "--seed", "17"]
    paths = []
    for workers in (1, 8):
        out = tmp_path / f"w{workers}.csv"
        res = runner.invoke(cli_main, args + ["--workers", str(workers),
                                              "--out", str(out)],
                            catch_exceptions=False)
        assert res.exit_code == 0, res.output
        paths.append(out)
    identical = paths[0].read_bytes() == paths[1].read_bytes()
    elapsed = time.perf_counter() - t0
    report(capsys, "C10 sweep determinism across worker counts", identical,
           "workers 1 and 8 wrote byte-identical CSVs", elapsed, 120)
