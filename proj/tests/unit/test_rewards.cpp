#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "rltrc/errors.hpp"
#include "rltrc/rewards.hpp"

using namespace rltrc;

TEST_CASE("node_self_reward") {
  CHECK(node_self_reward(0, 25, 20) == 5.0);
  CHECK(node_self_reward(7, 25, 25) == 7.0);
  CHECK_THROWS_AS(node_self_reward(0, 25, 26), InvalidActionError);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0, 25);
  double r = 0;
  for (int i = 0; i < 1000; ++i) {
    const double next = node_self_reward(r, 25, u(rng));
    CHECK(next >= r);
    r = next;
  }
}

TEST_CASE("Rule 1 worked values") {
  CHECK(successor_reward_ack(1, 1, Trend::Receding) == 1.0);
  CHECK(successor_reward_ack(1, 1, Trend::Approaching) == 1.0);
  CHECK(successor_reward_ack(0.6, 0.5, Trend::Approaching) == doctest::Approx(0.8801).epsilon(1e-4));
  CHECK(successor_reward_ack(0.6, 0.5, Trend::Unknown) == doctest::Approx(0.7746).epsilon(1e-4));
  CHECK(successor_reward_ack(0.6, 0.5, Trend::Receding) == doctest::Approx(0.6817).epsilon(1e-4));
  CHECK_THROWS_AS(successor_reward_ack(1.2, 0.5, Trend::Unknown), DomainError);
  CHECK_THROWS_AS(successor_reward_ack(0.5, -0.1, Trend::Unknown), DomainError);
}

TEST_CASE("Rule 1 is monotone in prr, rss ratio and trend") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0, 1);
  const Trend trends[] = {Trend::Receding, Trend::Unknown, Trend::Approaching};
  for (int i = 0; i < 1000; ++i) {
    const double p = u(rng), q = u(rng), dp = u(rng) * (1 - p), dq = u(rng) * (1 - q);
    const Trend t = trends[i % 3];
    CHECK(successor_reward_ack(p + dp, q, t) >= successor_reward_ack(p, q, t));
    CHECK(successor_reward_ack(p, q + dq, t) >= successor_reward_ack(p, q, t));
    CHECK(successor_reward_ack(p, q, Trend::Approaching) >= successor_reward_ack(p, q, Trend::Unknown));
    CHECK(successor_reward_ack(p, q, Trend::Unknown) >= successor_reward_ack(p, q, Trend::Receding));
    const double rd = successor_reward_ack(p, q, t);
    CHECK(rd > 0.0);
    CHECK(rd <= 1.0);
  }
}

TEST_CASE("Rule 2") {
  CHECK(successor_reward_noack(5, 2, 3, 14) == 5.0);
  CHECK(successor_reward_noack(5, 4, 3, 14) == -9.0);
  CHECK(successor_reward_noack(5, 4, 3, 0) == 5.0);
}

TEST_CASE("Lemma 1 quantities") {
  CHECK(expected_max_neighbor_distance(1, 9) == doctest::Approx(6.0));
  CHECK(expected_max_neighbor_distance(2, 10) == doctest::Approx(8.0));
  CHECK(expected_max_neighbor_distance(1e9, 10) == doctest::Approx(10.0));
  CHECK_THROWS_AS(expected_max_neighbor_distance(0, 10), DomainError);
  CHECK(per_hop_progress(2, 10) == doctest::Approx(8.0));
  CHECK(per_hop_progress(0.5, 10) == doctest::Approx(5.0));
  CHECK(per_hop_progress(2, 0) == 0.0);
  CHECK(min_hop_count(100, 2, 10) == doctest::Approx(12.5));
  CHECK(min_hop_count(per_hop_progress(3, 7), 3, 7) == doctest::Approx(1.0));
  CHECK(min_hop_count(100, 1e9, 10) == doctest::Approx(10.0));
  CHECK(avg_hop_count(100, 2, 10) == doctest::Approx(56.25));
  CHECK(avg_hop_count(2, 2, 10) == doctest::Approx(1.125));
  CHECK(avg_hop_count(100, 1e9, 1) == doctest::Approx(100.0));
}

TEST_CASE("Lemma 1 against the Monte Carlo oracle") {
  for (int n : {1, 2, 5, 10}) {
    for (double r : {9.0, 10.0}) {
      const double mc = oracle::max_distance(n, r, 200000, 100 + n);
      CHECK(expected_max_neighbor_distance(n, r) == doctest::Approx(mc).epsilon(0.01));
    }
  }
}

TEST_CASE("broadcast cost") {
  CHECK(broadcast_cost(2, 3) == 14.0);
  CHECK(broadcast_cost(3, 2) == 12.0);
  CHECK(broadcast_cost(1, 7.9) == 7.0);
  CHECK(broadcast_cost(2, 0.5) == 0.0);
  CHECK(broadcast_cost(4, 100) == kDefaultBroadcastCap);
  CHECK_THROWS_AS(broadcast_cost(0.5, 3), DomainError);
  CHECK_THROWS_AS(broadcast_cost(2, -1), DomainError);
}

TEST_CASE("broadcast cost matches the direct sum exactly") {
  const double no_cap = std::numeric_limits<double>::infinity();
  for (int ng = 2; ng <= 5; ++ng) {
    for (int h = 1; h <= 20; ++h) {
      CHECK(broadcast_cost(ng, h, no_cap) == oracle::geometric_sum(ng, h));
      CHECK(broadcast_cost(ng, h + 0.75, no_cap) == oracle::geometric_sum(ng, h));
    }
  }
}

TEST_CASE("transmission waste per turn") {
  WasteInputs in;
  in.mx_atmpt = 3;
  in.prev_action = 12;
  in.tau_a = 0.05;
  in.turn = 1;
  auto w = transmission_waste(in);
  CHECK(w.energy == 0.0);
  CHECK(w.time == 0.0);

  in.turn = 2;
  w = transmission_waste(in);
  CHECK(w.energy == 12.0);
  CHECK(w.time == 0.05);

  const std::vector<ZoneBroadcastTerm> zones{{14.0, 12.5}};
  in.turn = 4;
  in.zone_set = zones;
  in.hop_latency = 0.005;
  in.invested_energy = 30;
  in.invested_time = 0.4;
  w = transmission_waste(in);
  CHECK(w.energy == doctest::Approx(12 + 14 + 30));
  CHECK(w.time == doctest::Approx(0.05 + 12.5 * 0.005 + 0.4));

  in.turn = 0;
  CHECK_THROWS_AS(transmission_waste(in), TurnOutOfRangeError);
  in.turn = 5;
  CHECK_THROWS_AS(transmission_waste(in), TurnOutOfRangeError);
}

TEST_CASE("zone waste accumulation") {
  WasteLedger ledger(2);
  const ZoneId z = make_id<ZoneId>(1);
  ledger.accumulate(z, std::span<const Waste>{});
  CHECK(ledger.ew(z) == 0.0);
  const std::vector<Waste> batch{{12, 0.05}, {0, 0}};
  ledger.accumulate(z, batch);
  CHECK(ledger.ew(z) == 12.0);
  CHECK(ledger.et(z) == 0.05);
  CHECK(ledger.ew(make_id<ZoneId>(0)) == 0.0);
}

TEST_CASE("accumulation commutes with batching") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0, 10);
  std::vector<Waste> all(300);
  for (auto& w : all) w = {u(rng), u(rng) / 100};
  WasteLedger one(1), many(1);
  const ZoneId z{};
  one.accumulate(z, all);
  for (std::size_t i = 0; i < all.size(); i += 7) {
    many.accumulate(z, std::span<const Waste>(all).subspan(i, std::min<std::size_t>(7, all.size() - i)));
  }
  CHECK(one.ew(z) == doctest::Approx(many.ew(z)).epsilon(1e-12));
  CHECK(one.et(z) == doctest::Approx(many.et(z)).epsilon(1e-12));
}

TEST_CASE("session, zone and network rewards") {
  CHECK(session_reward(5, 0) == 1.0);
  CHECK(session_reward(0, 5) == 1.0);
  CHECK(session_reward(1, 1) == doctest::Approx(std::exp(-0.5)));
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.01, 5);
  for (int i = 0; i < 500; ++i) {
    const double ew = u(rng), et = u(rng);
    const double r = session_reward(ew, et);
    CHECK(r > 0.0);
    CHECK(r <= 1.0);
    CHECK(session_reward(ew + 0.1, et) < r);
    CHECK(session_reward(ew, et + 0.1) < r);
  }
  const std::vector<double> nodes{1, 2}, sessions{0.5}, none{};
  const std::vector<double> penalised{successor_reward_noack(5, 4, 3, broadcast_cost(2, 3))};
  CHECK(zone_reward(nodes, sessions) == 3.5);
  CHECK(zone_reward(none, none) == 0.0);
  CHECK(zone_reward(penalised, none) == -9.0);
  const std::vector<double> zones{3.5, -1}, single{4.25}, zeros{0, 0, 0};
  CHECK(network_reward(zones) == 2.5);
  CHECK(network_reward(single) == 4.25);
  CHECK(network_reward(zeros) == 0.0);
}
