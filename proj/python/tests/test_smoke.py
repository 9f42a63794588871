import pytest

import rtleak as rl


def example():
    ts = rl.TaskSet()
    ts.tasks = [
        rl.TaskSpec("tau_1", 15, 1, 3, 1),
        rl.TaskSpec("tau_o", 10, 2, 0, 2),
        rl.TaskSpec("tau_v", 8, 2, 1, 3),
        rl.TaskSpec("tau_4", 6, 1, 4, 4),
    ]
    ts.observer_id = "tau_o"
    ts.victim_id = "tau_v"
    return ts


def test_validate_and_rta():
    ts = example()
    assert rl.validate_taskset(ts).ok
    rta = rl.response_time_analysis(ts)
    assert rta.schedulable
    assert rta.response == [6, 5, 3, 1]


def test_simulate_and_observer():
    ts = example()
    tr = rl.simulate(ts, 50)
    assert tr.horizon == 50
    first = tr.slices[0]
    assert ts.tasks[first.task].id == "tau_o"
    assert first.span == rl.Interval(0, 1)

    cfg = rl.ObserverConfig(lambda_=1, wcet=2, attack_start=0, attack_duration=50)
    ivs = rl.reconstruct_intervals(tr, ts, cfg)
    assert [(iv.start, iv.end) for iv in ivs] == [(0, 1), (12, 13), (20, 21), (30, 31), (43, 44)]


def test_attack_end_to_end():
    ts = example()
    cfg = rl.AttackConfig()
    cfg.duration = 50
    cfg.lambda_override = 1
    r = rl.run_attack(ts, cfg)
    assert r.lambda_ == 1
    assert r.inference.delta_hat == 1
    assert r.inference.a_hat == 1
    assert r.outcome.success
    assert r.outcome.precision == pytest.approx(1.0)


def test_ladder_inference():
    lad = rl.build_ladder(8, 0)
    rl.mark_intervals(lad, [rl.Interval(0, 1), rl.Interval(12, 14), rl.Interval(20, 22)])
    inf = rl.infer_arrival_column(lad)
    assert inf.delta_hat == 1
    assert rl.infer_initial_offset(1, 0, 8) == 1
    assert rl.predict_arrival(1, 8, 3) == 25


def test_taskgen_and_metrics():
    cfg = rl.GenConfig()
    cfg.util_group = 4
    cfg.n_tasks = 5
    cfg.seed = 7
    ts = rl.generate_taskset(cfg)
    assert len(ts.tasks) == 5
    assert rl.validate_taskset(ts).ok
    assert rl.response_time_analysis(ts).schedulable
    cap = rl.analyze_capability(ts)
    assert cap.coverage >= 1.0

    assert rl.precision_ratio(1, 1, 8) == pytest.approx(1.0)
    assert rl.precision_ratio(0, 7, 8) == pytest.approx(0.75)


def test_io_roundtrip(tmp_path):
    ts = example()
    path = str(tmp_path / "ts.json")
    rl.save_taskset(ts, path)
    back = rl.load_taskset(path)
    assert [t.id for t in back.tasks] == [t.id for t in ts.tasks]
    assert rl.format_taskset(back) == rl.format_taskset(ts)
    with pytest.raises(rl.ParseError):
        rl.load_taskset(str(tmp_path / "missing.json"))


def test_experiment_smoke():
    spec = rl.ExperimentSpec()
    spec.kind = rl.ExperimentKind.DurationSweep
    spec.seed = 42
    spec.tasksets_per_cell = 3
    spec.duration_multiples = [1, 2]
    spec.cells = ["x4/n5/low"]
    a = rl.run_experiment(spec)
    b = rl.run_experiment(spec)
    assert rl.results_csv(a) == rl.results_csv(b)
    assert a.rows[0].group == "m=1"
    assert a.rows[0].stats.n == 3
