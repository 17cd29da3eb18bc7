#include "lbg/lattice.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

namespace lbg {

Coord LatticePoint::norm_sq() const {
  Coord s = 0;
  for (Coord c : coords) s += c * c;
  return s;
}

LatticePoint LatticePoint::operator+(const LatticePoint& o) const {
  LatticePoint out = *this;
  for (std::size_t i = 0; i < coords.size(); ++i) out.coords[i] += o.coords[i];
  return out;
}

LatticePoint LatticePoint::operator-(const LatticePoint& o) const {
  LatticePoint out = *this;
  for (std::size_t i = 0; i < coords.size(); ++i) out.coords[i] -= o.coords[i];
  return out;
}

LatticePoint LatticePoint::operator*(Coord k) const {
  LatticePoint out = *this;
  for (Coord& c : out.coords) c *= k;
  return out;
}

std::string LatticePoint::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) os << ',';
    os << coords[i];
  }
  os << ')';
  return os.str();
}

int VectorSet::index_of(const LatticePoint& v) const {
  auto it = std::lower_bound(vectors.begin(), vectors.end(), v);
  if (it == vectors.end() || *it != v) return -1;
  return static_cast<int>(it - vectors.begin());
}

std::int64_t isqrt(std::int64_t x) {
  if (x < 0) throw InvalidArgument("isqrt of negative value");
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(x)));
  while (r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

namespace {

struct PointHash {
  std::size_t operator()(const LatticePoint& p) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (Coord c : p.coords) {
      h ^= static_cast<std::size_t>(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

using PointSet = std::unordered_set<LatticePoint, PointHash>;

void check_spec(const BallSpec& spec) {
  if (spec.d < 1) throw InvalidArgument("ball dimension must be >= 1");
  if (spec.radius_sq < 0) throw InvalidArgument("radius_sq must be >= 0");
}

void check_box_budget(const BallSpec& spec, const ResourceLimits& limits) {
  const std::int64_t side = 2 * isqrt(spec.radius_sq) + 1;
  std::int64_t box = 1;
  for (int i = 0; i < spec.d; ++i) {
    if (box > limits.max_points / side) {
      throw ResourceLimit("ball enumeration for d=" + std::to_string(spec.d) +
                          ", radius_sq=" + std::to_string(spec.radius_sq) +
                          " exceeds the point budget of " + std::to_string(limits.max_points));
    }
    box *= side;
  }
}

std::int64_t count_recursive(int d, std::int64_t rem) {
  const std::int64_t m = isqrt(rem);
  if (d == 1) return 2 * m + 1;
  std::int64_t total = 0;
  for (std::int64_t x = -m; x <= m; ++x) total += count_recursive(d - 1, rem - x * x);
  return total;
}

Coord cross2(const LatticePoint& o, const LatticePoint& a, const LatticePoint& b) {
  return (a.coords[0] - o.coords[0]) * (b.coords[1] - o.coords[1]) -
         (a.coords[1] - o.coords[1]) * (b.coords[0] - o.coords[0]);
}

// Vertices of a strictly convex planar hull (collinear points dropped).
// Input must be sorted lexicographically.
std::vector<LatticePoint> monotone_chain(const std::vector<LatticePoint>& pts) {
  if (pts.size() <= 2) return pts;
  std::vector<LatticePoint> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross2(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross2(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

// Drops points that are the midpoint of two other points of the set along a
// small step direction. Such points are never extreme.
std::vector<LatticePoint> non_midpoints(const std::vector<LatticePoint>& pts, int d) {
  PointSet set(pts.begin(), pts.end());
  std::vector<LatticePoint> dirs;
  LatticePoint step(std::vector<Coord>(d, -1));
  while (true) {
    // Keep lexicographically positive steps only; -s gives the same test.
    auto first = std::find_if(step.coords.begin(), step.coords.end(), [](Coord c) { return c != 0; });
    if (first != step.coords.end() && *first > 0) dirs.push_back(step);
    int i = d - 1;
    while (i >= 0 && step.coords[i] == 1) step.coords[i--] = -1;
    if (i < 0) break;
    ++step.coords[i];
  }
  std::vector<LatticePoint> out;
  for (const auto& p : pts) {
    bool midpoint = false;
    for (const auto& s : dirs) {
      if (set.count(p + s) && set.count(p - s)) {
        midpoint = true;
        break;
      }
    }
    if (!midpoint) out.push_back(p);
  }
  return out;
}

LatticePoint cross3(const LatticePoint& a, const LatticePoint& b) {
  return LatticePoint{a.coords[1] * b.coords[2] - a.coords[2] * b.coords[1],
                      a.coords[2] * b.coords[0] - a.coords[0] * b.coords[2],
                      a.coords[0] * b.coords[1] - a.coords[1] * b.coords[0]};
}

Coord dot(const LatticePoint& a, const LatticePoint& b) {
  Coord s = 0;
  for (std::size_t i = 0; i < a.coords.size(); ++i) s += a.coords[i] * b.coords[i];
  return s;
}

// Hull vertices in 3D: every supporting plane through three candidates is a
// facet plane; the vertices on it are the strict planar hull of the points it
// contains.
std::vector<LatticePoint> hull_vertices_3d(const std::vector<LatticePoint>& cand) {
  const std::size_t n = cand.size();
  std::set<LatticePoint> result;
  std::set<std::pair<LatticePoint, Coord>> seen;
  std::vector<Coord> side(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const LatticePoint ab = cand[j] - cand[i];
      for (std::size_t k = j + 1; k < n; ++k) {
        LatticePoint normal = cross3(ab, cand[k] - cand[i]);
        if (normal.norm_sq() == 0) continue;
        int sign = 0;
        bool supporting = true;
        for (std::size_t l = 0; l < n && supporting; ++l) {
          side[l] = dot(normal, cand[l] - cand[i]);
          if (side[l] == 0) continue;
          const int s = side[l] > 0 ? 1 : -1;
          if (sign == 0) sign = s;
          else if (s != sign) supporting = false;
        }
        if (!supporting) continue;
        if (sign > 0) normal = normal * -1;
        Coord g = 0;
        for (Coord c : normal.coords) g = std::gcd(g, c < 0 ? -c : c);
        for (Coord& c : normal.coords) c /= g;
        if (!seen.emplace(normal, dot(normal, cand[i])).second) continue;

        // Project by dropping one axis with a nonzero normal component.
        const int drop = normal.coords[2] != 0 ? 2 : (normal.coords[1] != 0 ? 1 : 0);
        const int keep_a = drop == 0 ? 1 : 0;
        const int keep_b = drop == 2 ? 1 : 2;
        std::vector<std::pair<LatticePoint, std::size_t>> face;
        for (std::size_t l = 0; l < n; ++l) {
          if (side[l] == 0) {
            face.emplace_back(LatticePoint{cand[l].coords[keep_a], cand[l].coords[keep_b]}, l);
          }
        }
        std::sort(face.begin(), face.end());
        std::vector<LatticePoint> projected;
        projected.reserve(face.size());
        for (const auto& f : face) projected.push_back(f.first);
        for (const auto& v : monotone_chain(projected)) {
          auto it = std::lower_bound(face.begin(), face.end(), v,
                                     [](const auto& f, const LatticePoint& key) { return f.first < key; });
          result.insert(cand[it->second]);
        }
      }
    }
  }
  return {result.begin(), result.end()};
}

}  // namespace

std::vector<LatticePoint> enumerate_ball(const BallSpec& spec, const ResourceLimits& limits) {
  check_spec(spec);
  check_box_budget(spec, limits);
  const Coord m = isqrt(spec.radius_sq);
  std::vector<LatticePoint> out;
  LatticePoint p(std::vector<Coord>(spec.d, -m));
  while (true) {
    if (p.norm_sq() <= spec.radius_sq) out.push_back(p);
    int i = spec.d - 1;
    while (i >= 0 && p.coords[i] == m) p.coords[i--] = -m;
    if (i < 0) break;
    ++p.coords[i];
  }
  return out;
}

std::int64_t ball_size(const BallSpec& spec, const ResourceLimits& limits) {
  check_spec(spec);
  check_box_budget(spec, limits);
  return count_recursive(spec.d, spec.radius_sq);
}

VectorSet hull_corners(const BallSpec& spec, const ResourceLimits& limits) {
  VectorSet out{spec.d, spec.radius_sq, {}};
  std::vector<LatticePoint> pts = enumerate_ball(spec, limits);
  if (pts.size() == 1) {
    out.vectors = pts;
    return out;
  }
  switch (spec.d) {
    case 1:
      out.vectors = {pts.front(), pts.back()};
      break;
    case 2:
      out.vectors = monotone_chain(pts);
      break;
    case 3:
      out.vectors = hull_vertices_3d(non_midpoints(pts, 3));
      break;
    default: {
      const std::vector<LatticePoint> cand = non_midpoints(pts, spec.d);
      for (const auto& c : cand) {
        if (is_extreme(c, cand)) out.vectors.push_back(c);
      }
    }
  }
  std::sort(out.vectors.begin(), out.vectors.end());
  return out;
}

namespace {

// Phase one of the simplex method over exact rationals with Bland's rule.
// Decides whether {lambda >= 0 : A lambda = b} is non-empty, b >= 0.
bool feasible(std::vector<std::vector<mpq_class>> a, std::vector<mpq_class> b) {
  const std::size_t rows = a.size();
  const std::size_t n = rows ? a[0].size() : 0;
  const std::size_t cols = n + rows;
  for (std::size_t i = 0; i < rows; ++i) {
    a[i].resize(cols, 0);
    a[i][n + i] = 1;
  }
  std::vector<std::size_t> basis(rows);
  std::iota(basis.begin(), basis.end(), n);
  std::vector<mpq_class> reduced(cols, 0);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < n; ++j) reduced[j] -= a[i][j];
  }

  while (true) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (sgn(reduced[j]) < 0) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;

    std::size_t leave = rows;
    mpq_class best;
    for (std::size_t i = 0; i < rows; ++i) {
      if (sgn(a[i][enter]) <= 0) continue;
      mpq_class ratio = b[i] / a[i][enter];
      if (leave == rows || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == rows) break;  // unbounded; cannot happen in phase one

    const mpq_class pivot = a[leave][enter];
    for (std::size_t j = 0; j < cols; ++j) {
      if (sgn(a[leave][j]) != 0) a[leave][j] /= pivot;
    }
    b[leave] /= pivot;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == leave || sgn(a[i][enter]) == 0) continue;
      const mpq_class f = a[i][enter];
      for (std::size_t j = 0; j < cols; ++j) {
        if (sgn(a[leave][j]) != 0) a[i][j] -= f * a[leave][j];
      }
      b[i] -= f * b[leave];
    }
    const mpq_class f = reduced[enter];
    for (std::size_t j = 0; j < cols; ++j) {
      if (sgn(a[leave][j]) != 0) reduced[j] -= f * a[leave][j];
    }
    basis[leave] = enter;
  }
  // Feasible iff no artificial variable stays basic at a positive level.
  for (std::size_t i = 0; i < rows; ++i) {
    if (basis[i] >= n && sgn(b[i]) != 0) return false;
  }
  return true;
}

}  // namespace

bool is_extreme(const LatticePoint& p, std::span<const LatticePoint> points) {
  if (std::find(points.begin(), points.end(), p) == points.end()) {
    throw InvalidArgument("is_extreme: point " + p.to_string() + " is not in the point set");
  }
  if (points.size() == 1) return true;
  const int d = p.dim();

  // Exact midpoint certificate: p = (q + (2p - q)) / 2.
  PointSet set(points.begin(), points.end());
  for (int i = 0; i < d; ++i) {
    LatticePoint e(std::vector<Coord>(d, 0));
    e.coords[i] = 1;
    if (set.count(p + e) && set.count(p - e)) return false;
  }
  for (const auto& q : points) {
    if (q == p) continue;
    if (set.count(p * 2 - q)) return false;
  }

  // p in conv(others) iff sum lambda_q (q - p) = 0, sum lambda_q = 1, lambda >= 0.
  std::vector<std::vector<mpq_class>> a(d + 1);
  std::vector<mpq_class> b(d + 1, 0);
  b[d] = 1;
  for (const auto& q : points) {
    if (q == p) continue;
    for (int i = 0; i < d; ++i) a[i].emplace_back(static_cast<long>(q.coords[i] - p.coords[i]));
    a[d].emplace_back(1);
  }
  return !feasible(std::move(a), std::move(b));
}

std::vector<std::pair<std::int64_t, std::int64_t>> corner_growth_profile(
    int d, std::int64_t r_min, std::int64_t r_max, const ResourceLimits& limits) {
  if (d != 2 && d != 3) throw InvalidArgument("corner_growth_profile supports d in {2,3}");
  if (r_min < 1 || r_max < r_min) throw InvalidArgument("corner_growth_profile needs 1 <= r_min <= r_max");
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (std::int64_t r = r_min; r <= r_max; ++r) {
    out.emplace_back(r, static_cast<std::int64_t>(hull_corners(BallSpec::of_radius(d, r), limits).size()));
  }
  return out;
}

double loglog_slope(std::span<const std::pair<std::int64_t, std::int64_t>> profile) {
  if (profile.size() < 2) throw InvalidArgument("slope fit needs at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [r, c] : profile) {
    const double x = std::log(static_cast<double>(r));
    const double y = std::log(static_cast<double>(c));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(profile.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::int64_t min_radius_with_corners(int d, std::int64_t needed, std::int64_t r_max,
                                     const ResourceLimits& limits) {
  for (std::int64_t r = 1; r <= r_max; ++r) {
    if (static_cast<std::int64_t>(hull_corners(BallSpec::of_radius(d, r), limits).size()) >= needed) return r;
  }
  throw Infeasible("no radius <= " + std::to_string(r_max) + " has " + std::to_string(needed) +
                   " hull corners in dimension " + std::to_string(d));
}

}  // namespace lbg
