import math
from collections import defaultdict
from fractions import Fraction

import numpy as np
import pytest

from bchchain.interweave import (
    ConfigError,
    SimConfig,
    SimMetrics,
    SlotEvent,
    format_metrics,
    load_config,
    metrics_from_json,
    metrics_to_json,
    opportunity_schedule,
    parse_config,
    parse_metrics,
    read_event_log,
    run_simulation,
    summarize,
    write_event_log,
)


def test_noiseless_vacant_channel():
    metrics, events = run_simulation(SimConfig(j0=1, slots=100, occupancy=0.0, crossover=0.0, rng_seed=3))
    sec = [e for e in events if e.actor == "secondary"]
    assert len(sec) == 100 and all(e.channel == 1 for e in sec)
    assert metrics.secondary_opportunities == 100
    assert metrics.post_decode_ber == 0.0
    assert metrics.bandwidth_saving == 0.5
    assert all(e.outcome == "ok" for e in events if e.actor != "idle")


def test_always_busy_channels():
    metrics, events = run_simulation(SimConfig(j0=2, slots=50, occupancy=1.0, rng_seed=1))
    assert metrics.secondary_opportunities == 0
    p0 = [e for e in events if e.channel == 0]
    assert len(p0) == 50 and all(e.actor == "primary" and e.level == 0 for e in p0)
    assert metrics.bandwidth_saving == 0.0


def test_bandwidth_accounting_all_primaries():
    cfg = SimConfig(j0=3, slots=20, occupancy=1.0, rng_seed=2)
    _, events = run_simulation(cfg)
    per_slot = defaultdict(Fraction)
    for e in events:
        per_slot[e.slot] += e.bandwidth
    W, W0 = Fraction(576, 5), Fraction(1152, 5)
    assert set(per_slot.values()) == {3 * W + W0}


def test_secondary_charge_below_own_band():
    _, events = run_simulation(SimConfig(j0=2, slots=200, occupancy=0.5, rng_seed=5))
    sec = [e for e in events if e.actor == "secondary"]
    assert sec and all(e.bandwidth < e.baseline_bandwidth for e in sec)


def test_single_errors_always_corrected():
    cfg = SimConfig(j0=1, slots=10_000, occupancy=0.0, crossover=0.01, rng_seed=11)
    metrics, events = run_simulation(cfg)
    assert metrics.post_decode_ber < metrics.raw_ber
    singles = [e for e in events if e.actor == "secondary" and e.bit_errors == 1]
    assert singles and all(e.outcome == "corrected" for e in singles)


def test_full_word_receiver_loses_aliased_errors():
    # with the whole 12-bit word decoded, an error at position i >= 6 is
    # "corrected" at i - 6 and the result leaves the embedded code
    cfg = SimConfig(j0=1, slots=3000, occupancy=0.0, crossover=0.01, rng_seed=11, secondary_receiver="full")
    _, events = run_simulation(cfg)
    singles = [e for e in events if e.actor == "secondary" and e.bit_errors == 1]
    failed = sum(e.outcome == "failed" for e in singles)
    assert 0.3 < failed / len(singles) < 0.7


def test_determinism():
    cfg = SimConfig(j0=2, slots=500, occupancy=(0.3, 0.6), crossover=0.02, sensing_miss=0.1,
                    sensing_false_alarm=0.05, rng_seed=42)
    m1, e1 = run_simulation(cfg)
    m2, e2 = run_simulation(cfg)
    assert write_event_log(e1) == write_event_log(e2)
    assert m1 == m2
    _, e3 = run_simulation(SimConfig(**{**cfg.__dict__, "rng_seed": 43}))
    assert write_event_log(e3) != write_event_log(e1)


def test_no_collisions_with_perfect_sensing():
    metrics, events = run_simulation(SimConfig(j0=2, slots=10_000, occupancy=0.5, rng_seed=9, sensing_false_alarm=0.2))
    assert metrics.collisions == 0
    assert not any(e.collision for e in events)


def test_missed_detection_collides():
    busy = np.ones((1, 3), dtype=bool)
    sched = opportunity_schedule(busy, sensing_miss=1.0, rng=0)
    assert sched.assignment.tolist() == [1, 1, 1] and sched.collision.all()
    cfg = SimConfig(j0=1, slots=3, traces=busy, sensing_miss=1.0)
    metrics, events = run_simulation(cfg)
    assert metrics.collisions == 3
    assert all(e.outcome == "failed" and e.collision for e in events)


def test_schedule_examples():
    sched = opportunity_schedule([[True, False, True]], rng=0)
    assert sched.assignment.tolist() == [0, 1, 0]
    sched = opportunity_schedule([[True], [False]], rng=0)
    assert sched.assignment.tolist() == [2]
    assert not sched.collision.any()


def test_false_alarm_keeps_p0_home():
    sched = opportunity_schedule(np.zeros((2, 5), dtype=bool), sensing_false_alarm=1.0, rng=0)
    assert sched.assignment.tolist() == [0] * 5


def test_utilization_matches_trace():
    trace = np.array([[1, 0, 1, 1, 0, 0, 1, 0], [1, 1, 1, 1, 0, 1, 1, 1]], dtype=bool)
    metrics, events = run_simulation(SimConfig(j0=2, slots=8, traces=trace))
    # channel 1 is used every slot (primary or P0); channel 2 only when its primary is on
    assert metrics.utilization == {1: 1.0, 2: 7 / 8}
    assert metrics.secondary_opportunities == 4


def test_summarize_edge_cases():
    assert summarize([]) == SimMetrics()
    only_primary = [SlotEvent(slot=t, channel=1, actor="primary", level=1, codewords=1, bits_sent=12,
                              info_bits=8, outcome="ok", bandwidth=Fraction(576, 5)) for t in range(4)]
    assert summarize(only_primary).secondary_throughput == 0.0
    T = 10
    synthetic = [SlotEvent(slot=t, channel=1, actor="secondary", level=1, codewords=1, bits_sent=12,
                           bit_errors=1, info_bits=8, outcome="corrected") for t in range(3)]
    synthetic.append(SlotEvent(slot=T - 1, channel=1, actor="idle", level=1, outcome="ok"))
    assert summarize(synthetic).secondary_throughput == 24 / T
    assert summarize(synthetic, slots=20).secondary_throughput == 24 / 20


def test_metrics_recomputable_from_log():
    metrics, events = run_simulation(SimConfig(j0=2, slots=300, occupancy=0.4, crossover=0.05, rng_seed=8))
    assert summarize(read_event_log(write_event_log(events))) == metrics


def test_serialization_round_trips():
    metrics, events = run_simulation(SimConfig(j0=2, slots=50, occupancy=0.5, crossover=0.05, rng_seed=4))
    assert [e.__dict__ for e in read_event_log(write_event_log(events))] == [e.__dict__ for e in events]
    assert parse_metrics(format_metrics(metrics)) == metrics
    assert metrics_from_json(metrics_to_json(metrics)) == metrics


def test_word_error_rate_below_two_flip_probability():
    p, T = 0.01, 10_000
    metrics, _ = run_simulation(SimConfig(j0=1, slots=T, occupancy=0.0, crossover=p, rng_seed=2024))
    two_plus = 1 - (1 - p) ** 12 - 12 * p * (1 - p) ** 11
    assert metrics.secondary_word_error_rate <= two_plus + 3 * math.sqrt(two_plus * (1 - two_plus) / T)


class TestConfig:
    def test_parse(self, tmp_path):
        trace = tmp_path / "busy.csv"
        trace.write_text("slot,channel,busy\n0,1,1\n1,1,0\n2,1,1\n")
        cfg_file = tmp_path / "sim.cfg"
        cfg_file.write_text(
            "# scenario\ns = 2\ndelta = 3\nj0 = 1\nslots = 3\ntrace = busy.csv\n"
            "crossover = 0.0   # noiseless\nru = 64\nw = 1.2\nm = 3\nmodulation = 8PSK\n"
        )
        cfg = load_config(cfg_file)
        assert cfg.w == Fraction(6, 5) and cfg.m == 3
        assert cfg.traces.tolist() == [[True, False, True]]
        _, events = run_simulation(cfg)
        assert [e.channel for e in events if e.actor != "primary" or e.channel == 0] == [0, 1, 0]

    def test_short_trace_rejected(self):
        with pytest.raises(ConfigError):
            SimConfig(j0=1, slots=5, traces=np.zeros((1, 3), dtype=bool))

    @pytest.mark.parametrize("text,where", [
        ("s = 2\nbogus = 1\n", "line 2"),
        ("s = two\n", "line 1"),
        ("s 2\n", "line 1"),
    ])
    def test_diagnostics(self, text, where):
        with pytest.raises(ConfigError, match=where):
            parse_config(text)

    @pytest.mark.parametrize("kw", [
        {"crossover": 0.5}, {"occupancy": (0.5, 0.5)}, {"sensing_miss": 1.5}, {"j0": 0},
        {"secondary_receiver": "psychic"},
    ])
    def test_validation(self, kw):
        with pytest.raises(ConfigError):
            SimConfig(**kw)


def test_sensing_errors_leave_occupancy_alone():
    def busy(ev):
        return [(e.slot, e.channel) for e in ev if e.actor == "primary" and e.channel > 0]

    base = SimConfig(j0=2, slots=300, occupancy=0.5, rng_seed=5)
    noisy = SimConfig(j0=2, slots=300, occupancy=0.5, rng_seed=5, sensing_miss=0.3, sensing_false_alarm=0.2)
    assert busy(run_simulation(base)[1]) == busy(run_simulation(noisy)[1])
