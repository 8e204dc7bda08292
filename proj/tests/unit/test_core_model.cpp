#include <doctest.h>

#include <random>
#include <vector>

#include "rltrc/core_model.hpp"
#include "rltrc/errors.hpp"

using namespace rltrc;

namespace {

NodeState node_at(Vec2 p, double range) {
  NodeState n;
  n.position = p;
  n.radio_range = range;
  n.residual_energy = 1.0;
  n.power_levels = {1.0, 2.0};
  return n;
}

}  // namespace

TEST_CASE("distance") {
  CHECK(distance(Vec2{0, 0}, Vec2{0, 0}) == 0.0);
  CHECK(distance(Vec2{0, 0}, Vec2{3, 4}) == doctest::Approx(5.0));
  CHECK(distance(Vec2{1, 1}, Vec2{4, 5}) == doctest::Approx(5.0));
}

TEST_CASE("distance is a metric on random points") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-100, 100);
  for (int i = 0; i < 1000; ++i) {
    const Vec2 a{u(rng), u(rng)}, b{u(rng), u(rng)}, c{u(rng), u(rng)};
    CHECK(distance(a, b) >= 0.0);
    CHECK(distance(a, b) == distance(b, a));
    CHECK(distance(a, c) <= distance(a, b) + distance(b, c) + 1e-9);
  }
}

TEST_CASE("radio range is inclusive") {
  const auto n = node_at({0, 0}, 10.0);
  CHECK(in_radio_range(n, {10, 0}));
  CHECK_FALSE(in_radio_range(n, {10.01, 0}));
  const auto deaf = node_at({2, 2}, 0.0);
  CHECK(in_radio_range(deaf, {2, 2}));
  CHECK_FALSE(in_radio_range(deaf, {2, 2.001}));
}

TEST_CASE("zone_of on two half-plane zones") {
  const auto zones = make_zone_grid(Rect{0, 0, 100, 50}, 2);
  REQUIRE(zones.size() == 2);
  CHECK(zone_of({10, 10}, zones) == make_id<ZoneId>(0));
  CHECK(zone_of({90, 10}, zones) == make_id<ZoneId>(1));
  CHECK(zone_of({50, 25}, zones) == make_id<ZoneId>(0));  // shared edge
  CHECK_THROWS_AS(zone_of({101, 10}, zones), OutOfArenaError);
}

TEST_CASE("zone_of is total and ties go to the lowest containing zone") {
  for (int count : {3, 6, 9, 12}) {
    const Rect arena{0, 0, 120, 120};
    const auto zones = make_zone_grid(arena, count);
    REQUIRE(static_cast<int>(zones.size()) == count);
    for (int i = 0; i <= 120; ++i) {
      for (int j = 0; j <= 120; ++j) {
        const Vec2 p{double(i), double(j)};
        const ZoneId z = zone_of(p, zones);
        CHECK(zones[index_of(z)].boundary.contains(p));
        for (std::uint32_t k = 0; k < index_of(z); ++k) CHECK_FALSE(zones[k].boundary.contains(p));
      }
    }
  }
}

TEST_CASE("zone grid tiles the arena") {
  const Rect arena{0, 0, 2000, 2000};
  for (int count : {3, 6, 9, 12}) {
    const auto zones = make_zone_grid(arena, count);
    double area = 0.0;
    for (const auto& z : zones) {
      area += z.boundary.width() * z.boundary.height();
      CHECK(z.theta == doctest::Approx(z.boundary.diagonal()));
    }
    CHECK(area == doctest::Approx(arena.width() * arena.height()));
  }
}

TEST_CASE("same-zone nodes are within the zone diagonal") {
  const auto zones = make_zone_grid(Rect{0, 0, 300, 300}, 6);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0, 300);
  std::vector<Vec2> pts(200);
  for (auto& p : pts) p = {u(rng), u(rng)};
  for (const auto& a : pts) {
    for (const auto& b : pts) {
      if (zone_of(a, zones) != zone_of(b, zones)) continue;
      CHECK(distance(a, b) <= zones[index_of(zone_of(a, zones))].boundary.diagonal() + 1e-9);
    }
  }
}

TEST_CASE("diameter") {
  CHECK(diameter(std::vector<Vec2>{}) == 0.0);
  CHECK(diameter(std::vector<Vec2>{{1, 1}}) == 0.0);
  CHECK(diameter(std::vector<Vec2>{{0, 0}, {30, 0}, {10, 5}}) == doctest::Approx(30.0));
}

TEST_CASE("audit flags broken node invariants") {
  auto n = node_at({0, 0}, 10.0);
  n.max_velocity = 2.0;
  CHECK(audit(n).empty());
  n.power_levels = {2.0, 2.0};
  CHECK_FALSE(audit(n).empty());
  n.power_levels = {1.0, 2.0};
  n.residual_energy = -1.0;
  CHECK_FALSE(audit(n).empty());
  n.residual_energy = 1.0;
  n.is_peripheral = true;
  CHECK_FALSE(audit(n).empty());
  n.is_peripheral = false;
  n.velocity = {3.0, 0.0};
  CHECK_FALSE(audit(n).empty());
}
