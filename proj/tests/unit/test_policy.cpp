#include <doctest.h>

#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <vector>

#include "rltrc/errors.hpp"
#include "rltrc/policy.hpp"

using namespace rltrc;

TEST_CASE("sigma branches") {
  CHECK(compute_sigma({-5, 0}) == kSigmaFloor);
  CHECK(compute_sigma({-5, 100}) == kSigmaFloor);
  CHECK(compute_sigma({0.5, 3}) == 0.5);
  CHECK(compute_sigma({0.0, 3}) == kSigmaFloor);
  CHECK(compute_sigma({3, 2}) == doctest::Approx(std::sqrt(0.75)).epsilon(1e-12));
  CHECK(compute_sigma({3, -0.5}) == doctest::Approx(0.9375).epsilon(1e-12));
  // gap regions
  CHECK(compute_sigma({3, 0.5}) == doctest::Approx(0.75));
  CHECK(compute_sigma({3, 1}) == doctest::Approx(0.75));
  CHECK(compute_sigma({3, -3}) == kSigmaFloor);
  CHECK(compute_sigma({3, -1}) == kSigmaCeil);
  CHECK(compute_sigma({std::nan(""), 1}) == kSigmaFloor);
}

TEST_CASE("sigma stays a probability") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-1e3, 1e3), small(-3, 3);
  for (int i = 0; i < 100000; ++i) {
    const SigmaInputs in = i % 2 ? SigmaInputs{u(rng), u(rng)} : SigmaInputs{small(rng), small(rng)};
    const double s = compute_sigma(in);
    CHECK(s >= kSigmaFloor);
    CHECK(s <= kSigmaCeil);
  }
  const double inf = std::numeric_limits<double>::infinity();
  for (double ri : {-inf, inf, 1e308}) {
    for (double rn : {-inf, inf, -1.0, 0.0}) {
      const double s = compute_sigma({ri, rn});
      CHECK(s >= kSigmaFloor);
      CHECK(s <= kSigmaCeil);
    }
  }
}

TEST_CASE("select_power_level edge cases") {
  Rng rng(1);
  const std::vector<double> two{12, 15};
  for (int i = 0; i < 1000; ++i) CHECK(select_power_level(two, 0.0, true, rng) == 15.0);
  for (int i = 0; i < 1000; ++i) CHECK(select_power_level(two, 0.9, false, rng) == 15.0);
  CHECK_THROWS_AS(select_power_level(std::vector<double>{}, 0.5, true, rng), UnusableLinkError);
}

TEST_CASE("select_power_level frequencies") {
  const std::vector<double> levels{1, 2, 3, 4, 5};
  for (double sigma : {0.05, 0.3, 1.0}) {
    Rng rng(77);
    std::map<double, int> hits;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) ++hits[select_power_level(levels, sigma, true, rng)];
    const double k = static_cast<double>(levels.size());
    for (double l : levels) {
      const double want = l == 5 ? (1 - sigma) + sigma / k : sigma / k;
      CHECK(std::abs(hits[l] / double(draws) - want) <= 0.005);
    }
  }
}

TEST_CASE("greedy_arm") {
  CHECK(greedy_arm({{3, 4, 3}, {12, 10, 9}}) == 0);
  CHECK(greedy_arm({{2}, {1}}) == 0);
  CHECK(greedy_arm({{2, 4}, {2, 4}}) == 0);
  CHECK(greedy_arm({{2, 0, 1}, {2, 0, 9}}) == 1);  // unpulled first
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.1, 10);
  for (int i = 0; i < 200; ++i) {
    ArmStats s{{1, 2, 3, 4}, {u(rng), u(rng), u(rng), u(rng)}};
    ArmStats scaled = s;
    const double c = u(rng);
    for (auto& r : scaled.cumulative_reward) r *= c;
    CHECK(greedy_arm(s) == greedy_arm(scaled));
  }
}

TEST_CASE("policy names round-trip") {
  for (auto k : {PolicyKind::RlTrc, PolicyKind::FixedMax, PolicyKind::OdtpcLike, PolicyKind::BeaconPrrLike,
                 PolicyKind::BeaconRssiLike}) {
    CHECK(parse_policy(to_string(k)) == k);
  }
  CHECK_FALSE(parse_policy("max").has_value());
}

TEST_CASE("baseline rules") {
  const std::vector<double> levels{5, 10, 15};
  BaselineThresholds th{8.0, 2.0, 0.9};
  BaselineLinkState link;
  CHECK(baseline_decide(PolicyKind::FixedMax, link, levels, th) == 15.0);

  link.current_level = 10;
  link.last_rss = 9;
  CHECK(baseline_decide(PolicyKind::BeaconRssiLike, link, levels, th) == 5.0);
  link.last_rss = 1;
  CHECK(baseline_decide(PolicyKind::BeaconRssiLike, link, levels, th) == 15.0);
  link.last_rss = 5;
  CHECK(baseline_decide(PolicyKind::BeaconRssiLike, link, levels, th) == 10.0);

  BaselineLinkState od;
  od.sig_atn = 1.75;
  od.last_distance = 4;
  od.min_rcv = 1;
  CHECK(baseline_decide(PolicyKind::OdtpcLike, od, levels, th) == 10.0);
  od.last_distance = 100;
  CHECK(baseline_decide(PolicyKind::OdtpcLike, od, levels, th) == 15.0);

  BaselineLinkState prr;
  prr.current_level = 10;
  prr.prr = 0.5;
  CHECK(baseline_decide(PolicyKind::BeaconPrrLike, prr, levels, th) == 15.0);
  prr.prr = 0.95;
  CHECK(baseline_decide(PolicyKind::BeaconPrrLike, prr, levels, th) == 5.0);
}
