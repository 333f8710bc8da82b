"""Smoke tests for the python bindings: build, solve, analyze, run a campaign."""

import math

import pytest

rkslab = pytest.importorskip("rkslab")


def test_grid_and_field_basics():
    g = rkslab.RadialGrid.uniform(1.0, 2.0, 11)
    assert len(g) == 11
    assert g.a == pytest.approx(1.0)
    assert g.b == pytest.approx(2.0)
    nodes = g.nodes()
    assert nodes[3] == pytest.approx(1.3)

    f = rkslab.ScalarField.sample(g, lambda r: r * r)
    assert len(f) == 11
    assert f[0] == pytest.approx(1.0)
    assert f.max_value() == pytest.approx(4.0)
    assert f.values()[10] == pytest.approx(4.0)


def test_solve_and_reconstruct():
    p = rkslab.ModelParams()
    p.eps = 1e-2
    p.T = 0.05
    p.dt = 1e-3
    p.grid = rkslab.RadialGrid.uniform(1.0, 2.0, 41)
    u0, v0 = rkslab.initial_data_presets("bump", p)

    traj = rkslab.solve("transformed", u0, v0, p)
    assert traj.samples() >= 2
    assert len(traj) == traj.samples()
    assert traj.times()[-1] == pytest.approx(0.05)
    assert traj.u(traj.samples() - 1).min_value() > 0.0

    c0 = rkslab.ScalarField.sample(p.grid, lambda r: math.exp(-0.1 * r))
    series = rkslab.reconstruct_c(c0, traj)
    assert len(series) == traj.samples()
    assert all(c.min_value() > 0.0 for c in series)

    v = rkslab.to_v(c0)
    assert v[5] == pytest.approx(0.1, rel=1e-3)


def test_solver_error_is_a_python_exception():
    p = rkslab.ModelParams()
    p.eps = 1e-2
    p.T = 0.1
    p.dt = 1e-2
    p.grid = rkslab.RadialGrid.uniform(1.0, 2.0, 41)
    u0 = rkslab.ScalarField.sample(p.grid, lambda r: 1.0)
    v0 = rkslab.ScalarField.sample(p.grid, lambda r: 1e6)
    with pytest.raises(rkslab.SolverError):
        rkslab.solve("transformed", u0, v0, p)


def test_analysis_helpers():
    g = rkslab.RadialGrid.uniform(1.0, 2.0, 41)
    one = rkslab.ScalarField.sample(g, lambda r: 1.0)
    assert rkslab.weighted_l2(one, rkslab.WeightKind.RadialMeasure, 2) == pytest.approx(
        math.sqrt(1.5), rel=1e-12
    )
    assert rkslab.sup_norm(one, 1.2, 1.8) == pytest.approx(1.0)

    fit = rkslab.fit_rate([1e-2, 5e-3, 2.5e-3], [2 * 1e-2**0.25, 2 * 5e-3**0.25, 2 * 2.5e-3**0.25])
    assert fit.slope == pytest.approx(0.25, abs=1e-10)

    le = rkslab.log_eps0_from_integral(2.0, 1.0, 1.0)
    assert math.exp(le) == pytest.approx((64.0 * math.exp(2.0)) ** -2, rel=1e-12)


def test_lemma_bindings():
    verdict = rkslab.verify_random_instance(5)
    assert verdict.pass_
    assert verdict.y_max <= verdict.bound + 1e-12

    inputs = rkslab.LemmaInputs()
    inputs.k = 3
    inputs.T = 1.0
    inputs.C0 = 2.0
    inputs.f1 = rkslab.TimeFunction.from_callable(lambda t: 1.0)
    inputs.f2 = rkslab.TimeFunction.from_callable(lambda t: 1.0)
    assert rkslab.gamma0(inputs) == pytest.approx(1.0 / (64.0 * math.exp(2.0)), rel=1e-12)


def test_campaign_runner_returns_parsed_summary(tmp_path):
    cfg = rkslab.ExperimentConfig()
    cfg.m = 41
    cfg.T = 0.05
    cfg.dt = 2e-3
    cfg.preset = "mismatch-layer"
    cfg.v_bar1 = 0.5
    cfg.v_bar2 = -0.5
    cfg.eps_list = [1e-2, 5e-3, 2.5e-3]
    cfg.alphas = [0.3]
    cfg.out_dir = str(tmp_path / "sweep")
    summary = rkslab.run_sweep(cfg)
    assert summary["campaign"] == "sweep"
    assert len(summary["points"]) == 3
    assert all(not pt["failed"] for pt in summary["points"])
    assert (tmp_path / "sweep" / "sweep.csv").exists()

    rendered = rkslab.render_reports(str(tmp_path / "sweep"))
    assert "sweep_summary.json" in rendered
