#pragma once

// Exact integer geometry on Z^d: lattice balls and the corner set of their
// convex hull. Nothing in here touches floating point except the log-log
// slope fit, which only summarises exact counts.

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lbg/errors.hpp"

namespace lbg {

using Coord = std::int64_t;

struct LatticePoint {
  std::vector<Coord> coords;

  LatticePoint() = default;
  explicit LatticePoint(std::vector<Coord> c) : coords(std::move(c)) {}
  LatticePoint(std::initializer_list<Coord> c) : coords(c) {}

  int dim() const { return static_cast<int>(coords.size()); }
  Coord norm_sq() const;

  LatticePoint operator+(const LatticePoint& o) const;
  LatticePoint operator-(const LatticePoint& o) const;
  LatticePoint operator*(Coord k) const;

  // Lexicographic; this is the canonical order used everywhere.
  auto operator<=>(const LatticePoint&) const = default;
  bool operator==(const LatticePoint&) const = default;

  std::string to_string() const;
};

struct BallSpec {
  int d = 0;
  std::int64_t radius_sq = 0;

  // Ball of integer radius r, i.e. radius_sq = r*r.
  static BallSpec of_radius(int d, std::int64_t r) { return {d, r * r}; }
};

// Strictly convex corner set V_d(r), lexicographically ordered.
struct VectorSet {
  int d = 0;
  std::int64_t radius_sq = 0;
  std::vector<LatticePoint> vectors;

  std::size_t size() const { return vectors.size(); }
  // Position of v in the canonical order, or -1.
  int index_of(const LatticePoint& v) const;
};

// floor(sqrt(x)) for x >= 0, exact.
std::int64_t isqrt(std::int64_t x);

// Points p with sum p_i^2 <= radius_sq, in lexicographic order.
std::vector<LatticePoint> enumerate_ball(const BallSpec& spec,
                                         const ResourceLimits& limits = default_limits());

// |enumerate_ball(spec)| without materialising the points.
std::int64_t ball_size(const BallSpec& spec, const ResourceLimits& limits = default_limits());

// Extreme points of conv(enumerate_ball(spec)). Dimension 1 and 2 use direct
// exact hulls; dimension 3 enumerates supporting planes; higher dimensions fall
// back to exact LP feasibility per candidate.
VectorSet hull_corners(const BallSpec& spec, const ResourceLimits& limits = default_limits());

// True iff p is not a convex combination of points \ {p}. Decided with an exact
// rational phase-one simplex. Throws InvalidArgument if p is not in points.
bool is_extreme(const LatticePoint& p, std::span<const LatticePoint> points);

// (r, |V_d(r)|) for r in [r_min, r_max], radius_sq = r^2.
std::vector<std::pair<std::int64_t, std::int64_t>> corner_growth_profile(
    int d, std::int64_t r_min, std::int64_t r_max,
    const ResourceLimits& limits = default_limits());

// Least-squares slope of log(count) against log(r).
double loglog_slope(std::span<const std::pair<std::int64_t, std::int64_t>> profile);

// Smallest integer r >= 1 with |V_d(r)| >= needed, searching up to r_max.
// Throws Infeasible if none exists in range.
std::int64_t min_radius_with_corners(int d, std::int64_t needed, std::int64_t r_max = 64,
                                     const ResourceLimits& limits = default_limits());

}  // namespace lbg
