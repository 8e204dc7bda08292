#pragma once

#include <cmath>

namespace rltrc {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 operator+(Vec2 o) const noexcept { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const noexcept { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator*(double s) const noexcept { return {x * s, y * s}; }
  constexpr bool operator==(const Vec2&) const noexcept = default;

  double norm() const noexcept { return std::hypot(x, y); }
};

inline double distance(Vec2 a, Vec2 b) noexcept { return (a - b).norm(); }

// Axis-aligned rectangle, closed on all sides.
struct Rect {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 0.0;
  double y1 = 0.0;

  constexpr double width() const noexcept { return x1 - x0; }
  constexpr double height() const noexcept { return y1 - y0; }
  double diagonal() const noexcept { return std::hypot(width(), height()); }
  constexpr Vec2 center() const noexcept { return {(x0 + x1) / 2, (y0 + y1) / 2}; }

  constexpr bool contains(Vec2 p) const noexcept {
    return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1;
  }

  // Nearest point of the rectangle to p.
  constexpr Vec2 clamp(Vec2 p) const noexcept {
    return {p.x < x0 ? x0 : (p.x > x1 ? x1 : p.x), p.y < y0 ? y0 : (p.y > y1 ? y1 : p.y)};
  }

  bool intersects_disc(Vec2 c, double r) const noexcept { return distance(clamp(c), c) <= r; }

  constexpr bool contains_disc(Vec2 c, double r) const noexcept {
    return c.x - r >= x0 && c.x + r <= x1 && c.y - r >= y0 && c.y + r <= y1;
  }

  constexpr bool operator==(const Rect&) const noexcept = default;
};

}  // namespace rltrc
