#include <cstdlib>
#include <string>

#include "lbg/errors.hpp"

namespace lbg {

namespace {

void read_env(const char* name, std::int64_t& slot) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return;
  try {
    const long long value = std::stoll(raw);
    if (value > 0) slot = value;
  } catch (const std::exception&) {
    // Unparseable override: keep the default.
  }
}

}  // namespace

ResourceLimits ResourceLimits::from_env() {
  ResourceLimits limits;
  read_env("LBG_MAX_POINTS", limits.max_points);
  read_env("LBG_MAX_VERTICES", limits.max_vertices);
  read_env("LBG_MAX_EDGES", limits.max_edges);
  read_env("LBG_MAX_ORACLE_VERTICES", limits.max_oracle_vertices);
  return limits;
}

const ResourceLimits& default_limits() {
  static const ResourceLimits limits = ResourceLimits::from_env();
  return limits;
}

}  // namespace lbg
