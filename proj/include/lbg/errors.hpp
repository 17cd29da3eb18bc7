#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lbg {

// Bad parameters supplied by the caller.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A projected instance or oracle run exceeds the configured budget.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Serialized data failed a digest, count or syntax check.
class CorruptInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A construction invariant was violated. Always a bug.
class ConstructionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// No parameter choice within budget satisfies the construction's needs.
class Infeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caps on instance and oracle sizes. Defaults can be overridden with the
// LBG_MAX_POINTS, LBG_MAX_VERTICES, LBG_MAX_EDGES and LBG_MAX_ORACLE_VERTICES
// environment variables.
struct ResourceLimits {
  std::int64_t max_points = 20'000'000;
  std::int64_t max_vertices = 20'000'000;
  std::int64_t max_edges = 60'000'000;
  std::int64_t max_oracle_vertices = 6'000;

  static ResourceLimits from_env();
};

// Process-wide limits, initialised from the environment on first use.
const ResourceLimits& default_limits();

}  // namespace lbg
