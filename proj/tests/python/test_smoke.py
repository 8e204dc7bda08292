import math

import pytest

import rltrc


def test_scenarios_listed():
    names = rltrc.scenario_names()
    assert "two-node-static" in names
    assert "convergence-100" in names


def test_two_node_run():
    r = rltrc.run_scenario("two-node-static", seed=1)
    assert r["NTG"] == 100.0
    assert r["OMC"] == 26
    assert r["PALN"] == 100.0
    assert len(r["series"]) == 10


def test_runs_are_deterministic():
    a = rltrc.run_scenario("conservation-50", seed=3)
    b = rltrc.run_scenario("conservation-50", seed=3)
    assert a == b
    assert rltrc.summary_csv("line-3", [1, 2]).startswith("# rltrc-summary v1\n")


def test_overrides_and_policy():
    r = rltrc.run_scenario("conservation-50", seed=1, policy="fixed-max", overrides={"duration": 20})
    assert r["policy"] == "fixed-max"
    with pytest.raises(ValueError):
        rltrc.run_scenario("conservation-50", overrides={"no_such_key": 1})
    with pytest.raises(ValueError):
        rltrc.run_scenario("missing")


def test_config_text():
    text = rltrc.default_config_text()
    assert rltrc.validate_config(text) == []
    problems = rltrc.validate_config("zones = 5\nradio_range_max = 99\n")
    assert any("zones" in p for p in problems)
    with pytest.raises(ValueError):
        rltrc.run_config("zones = 5\n")
    zero = rltrc.run_config("duration = 0\n")
    assert zero["NTG"] is None
    assert zero["OMC"] == 0


def test_model_functions():
    assert rltrc.compute_sigma(-5, 0) == 0.001
    assert rltrc.compute_sigma(3, 2) == pytest.approx(math.sqrt(0.75))
    assert rltrc.compute_sigma(3, -0.5) == pytest.approx(0.9375)
    assert rltrc.successor_reward_ack(0.6, 0.5, 1) == pytest.approx(0.8801, abs=1e-4)
    assert rltrc.successor_reward_noack(5, 4, 3, rltrc.broadcast_cost(2, 3)) == -9
    assert rltrc.expected_max_neighbor_distance(1, 9) == pytest.approx(6)
    assert rltrc.avg_hop_count(100, 2, 10) == pytest.approx(56.25)
    assert rltrc.node_self_reward(0, 25, 20) == 5
    assert rltrc.session_reward(1, 1) == pytest.approx(math.exp(-0.5))
    assert rltrc.estimate_attenuation(10, 6, 2 / 4000, 10, 4, 4 / 4000) == pytest.approx(1.75)
    assert rltrc.available_levels([5, 10, 12, 15], 11.5) == [12, 15]
    with pytest.raises(ValueError):
        rltrc.expected_max_neighbor_distance(0, 10)


def test_greedy_share():
    draws = rltrc.select_power_level([1, 2, 3, 4, 5], 0.05, True, seed=4, draws=20000)
    assert abs(draws.count(5) / len(draws) - 0.96) < 0.01
    assert set(rltrc.select_power_level([12, 15], 0.9, False, draws=100)) == {15}
