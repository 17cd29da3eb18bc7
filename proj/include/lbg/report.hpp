#pragma once

// Stable text reports: `key = value` lines in insertion order, followed by
// audit blocks and tab-separated tables. Field order never depends on hashing
// or scheduling, so equal inputs give byte-identical output.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lbg/oracles.hpp"

namespace lbg {

inline constexpr const char* kReportFormat = "lbg-report/1";

using Fields = std::vector<std::pair<std::string, std::string>>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

enum class ReportStatus : std::uint8_t { pass, fail, rejected, resource_limit, error };

const char* to_string(ReportStatus s);

struct ExperimentReport {
  std::string experiment;
  Fields instance;
  std::string budget;
  std::int64_t allowance = 0;
  std::string candidate;
  std::int64_t candidate_size = 0;
  ReportStatus status = ReportStatus::pass;
  std::string note;
  Fields metrics;
  std::vector<VerificationReport> audits;
  std::vector<Table> tables;
  // Excluded from the text unless asked for, to keep reruns byte-identical.
  double wall_clock_ms = 0;

  void metric(const std::string& key, std::int64_t value) { metrics.emplace_back(key, std::to_string(value)); }
  void metric(const std::string& key, std::string value) { metrics.emplace_back(key, std::move(value)); }
  // Adds the audit and downgrades status to fail if it did not pass.
  void audit(VerificationReport rep);
  const std::string* find_metric(const std::string& key) const;

  std::string to_text(bool timing = false) const;
};

std::string format_audit(const VerificationReport& rep);
std::string format_table(const Table& t);
std::string format_fields(const Fields& f, const std::string& prefix = "");

// Distance, with kInfinite printed as "inf".
std::string format_distance(std::int64_t d);

}  // namespace lbg
