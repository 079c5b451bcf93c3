import math

import pytest

import trajscan as ts


def small_planted(seed=1):
    data = ts.generate_synthetic(ts.SyntheticConfig(n_traj=150, wp_min=2, wp_max=5, step_scale=0.05, seed=seed))
    return ts.plant(data, ts.PlantConfig(ts.ShapeFamily.DISK, ts.Model.FULL, p=0.3, q=0.9, f=0.2, seed=seed),
                    ts.DiscrepancyFn(ts.DiscrepancyKind.LINEAR))


def test_discrepancy_functions():
    assert ts.linear(0.3, 0.1) == pytest.approx(0.2)
    assert ts.kulldorff(0.0777, 0.05) == pytest.approx(0.00696, rel=0.01)
    fn = ts.DiscrepancyFn(ts.DiscrepancyKind.KULLDORFF, one_sided=True)
    assert fn(0.1, 0.2) == 0.0


def test_simplify_even_example():
    t = ts.Trajectory(0, [(0.0, 0.0), (1.0, 0.0)])
    pts = ts.simplify(t, ts.CoresetMethod(ts.CoresetTag.EVEN, alpha=0.25))
    assert [p[0] for p in pts] == pytest.approx([0.0, 0.25, 0.5, 0.75])


def test_dataset_helper_and_normalize():
    ds = ts.dataset([([(0, 0), (2, 2)], 1), ([(4, 0)], 0)])
    assert len(ds) == 2
    assert ds.recorded_count() == 1
    norm = ts.normalize(ds)
    xs = [x for t in norm.trajectories for x, _ in t.waypoints]
    assert min(xs) == pytest.approx(0.0) and max(xs) == pytest.approx(1.0)


def test_run_scan_matches_direct_evaluation():
    pl = small_planted()
    st = ts.ScanSettings()
    st.model = ts.Model.FULL
    st.family = ts.ShapeFamily.HALFPLANE
    st.fn = ts.DiscrepancyFn(ts.DiscrepancyKind.LINEAR)
    st.eps = 0.1
    st.seed = 5
    run = ts.run_scan(pl.dataset, st)
    assert run.result.found
    direct = ts.evaluate_dataset(pl.dataset, run.result.shape, ts.Model.FULL, st.fn)
    assert run.full_stats.phi == pytest.approx(direct.phi)
    again = ts.run_scan(pl.dataset, st)
    assert repr(again.result.shape) == repr(run.result.shape)


def test_scan_never_beats_oracle():
    data = ts.generate_synthetic(ts.SyntheticConfig(n_traj=25, wp_min=2, wp_max=4, step_scale=0.05, seed=2))
    fn = ts.DiscrepancyFn(ts.DiscrepancyKind.LINEAR)
    pl = ts.plant(data, ts.PlantConfig(ts.ShapeFamily.RECT, ts.Model.FULL, 0.3, 0.9, 0.2, 2), fn)
    st = ts.ScanSettings()
    st.model = ts.Model.FLUX
    st.family = ts.ShapeFamily.RECT
    st.fn = fn
    st.eps = 0.05
    run = ts.run_scan(pl.dataset, st)
    best = ts.exact_scan(pl.dataset, ts.ShapeFamily.RECT, ts.Model.FLUX, fn)
    assert run.full_stats.phi <= best.stats.phi + 1e-9


def test_multiscale_disk_and_sizes():
    pl = small_planted(3)
    st = ts.ScanSettings()
    st.family = ts.ShapeFamily.DISK
    st.fn = ts.DiscrepancyFn(ts.DiscrepancyKind.KULLDORFF)
    st.alpha = 0.01
    st.r_min = 0.02
    st.r_max = 0.16
    st.eps = 0.2
    st.net_size = 20
    st.sample_size = 60
    run = ts.run_scan(pl.dataset, st)
    assert (run.n, run.s) == (20, 60)
    d = run.result.shape
    assert isinstance(d, ts.Disk)
    assert 0.02 <= d.radius <= 0.16


def test_config_errors_raise():
    st = ts.ScanSettings()
    st.model = ts.Model.FLUX
    st.fn = ts.DiscrepancyFn(ts.DiscrepancyKind.KULLDORFF)
    with pytest.raises(ValueError):
        st.validate()
    with pytest.raises(ValueError):
        ts.generate_synthetic(ts.SyntheticConfig(n_traj=0))


def test_power_csv_is_reproducible():
    st = ts.ScanSettings()
    st.family = ts.ShapeFamily.HALFPLANE
    st.fn = ts.DiscrepancyFn(ts.DiscrepancyKind.LINEAR)
    data = ts.SyntheticConfig(n_traj=200, seed=4)
    pc = ts.PlantConfig(ts.ShapeFamily.HALFPLANE, ts.Model.FULL, 0.0, 1.0, 0.2, 0)
    a = ts.power_experiment(data, pc, st, 2)
    b = ts.power_experiment(data, pc, st, 2)
    assert a.to_csv(False) == b.to_csv(False)
    assert a.recovery_rate == 1.0
    assert math.isfinite(a.trials[0].planted_phi)
