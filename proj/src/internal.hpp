#pragma once

// Construction helpers shared across the library sources.

#include <cstdint>
#include <string>
#include <vector>

#include "lbg/errors.hpp"
#include "lbg/lattice.hpp"

namespace lbg::detail {

// Dense point -> canonical-index lookup over the bounding box of a ball.
class BallIndex {
 public:
  BallIndex(const BallSpec& spec, const ResourceLimits& limits);

  const std::vector<LatticePoint>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  // Canonical index of p, or -1 if p is outside the ball.
  std::int32_t find(const LatticePoint& p) const;

 private:
  std::int64_t offset(const LatticePoint& p) const;

  int d_;
  std::int64_t m_;
  std::vector<LatticePoint> points_;
  std::vector<std::int32_t> slot_;
};

std::vector<std::int32_t> narrow(const LatticePoint& p);

void check_size(std::int64_t n, std::int64_t m, const ResourceLimits& limits, const std::string& what);

}  // namespace lbg::detail

#include <algorithm>
#include <thread>

#include "lbg/graph.hpp"

namespace lbg::detail {

// Splits [0, n) into contiguous chunks run on worker threads; fn(begin, end)
// must only write to per-index outputs so results do not depend on scheduling.
template <class F>
void parallel_chunks(std::size_t n, F&& fn, std::size_t min_chunk = 64) {
  const std::size_t hw = std::max(1U, std::thread::hardware_concurrency());
  const std::size_t workers = std::min(hw, (n + min_chunk - 1) / std::max<std::size_t>(min_chunk, 1));
  if (workers <= 1) {
    fn(std::size_t{0}, n);
    return;
  }
  std::vector<std::thread> threads;
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk, end = std::min(n, begin + chunk);
    if (begin < end) threads.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto& t : threads) t.join();
}

// Pair indices grouped by source vertex, groups ordered by source.
std::vector<std::pair<VertexId, std::vector<std::size_t>>> group_by_source(const PairSet& pairs);

}  // namespace lbg::detail
