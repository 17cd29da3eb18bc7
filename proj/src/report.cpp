#include "lbg/report.hpp"

#include <cstdio>

namespace lbg {

const char* to_string(ReportStatus s) {
  switch (s) {
    case ReportStatus::pass: return "pass";
    case ReportStatus::fail: return "fail";
    case ReportStatus::rejected: return "rejected";
    case ReportStatus::resource_limit: return "resource-limit";
    case ReportStatus::error: return "error";
  }
  return "?";
}

void ExperimentReport::audit(VerificationReport rep) {
  if (!rep.passed() && status == ReportStatus::pass) status = ReportStatus::fail;
  audits.push_back(std::move(rep));
}

const std::string* ExperimentReport::find_metric(const std::string& key) const {
  for (const auto& [k, v] : metrics) {
    if (k == key) return &v;
  }
  return nullptr;
}

std::string format_fields(const Fields& f, const std::string& prefix) {
  std::string out;
  for (const auto& [k, v] : f) out += prefix + k + " = " + v + "\n";
  return out;
}

std::string format_audit(const VerificationReport& rep) {
  std::string out = "audit " + rep.name + " checked=" + std::to_string(rep.checked) +
                    " failures=" + std::to_string(rep.failures) + " status=" + (rep.passed() ? "pass" : "fail") + "\n";
  for (const auto& v : rep.violations) {
    out += "  violation pair=" + std::to_string(v.a);
    if (v.b >= 0) out += " other=" + std::to_string(v.b);
    out += " " + v.message + "\n";
  }
  if (rep.failures > static_cast<std::int64_t>(rep.violations.size())) {
    out += "  ... " + std::to_string(rep.failures - static_cast<std::int64_t>(rep.violations.size())) + " more\n";
  }
  return out;
}

std::string format_table(const Table& t) {
  std::string out = "table " + t.name + " rows=" + std::to_string(t.rows.size()) + "\n";
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += '\t';
      out += cells[i];
    }
    out += '\n';
  };
  line(t.columns);
  for (const auto& r : t.rows) line(r);
  return out;
}

std::string format_distance(std::int64_t d) { return d == kInfinite ? "inf" : std::to_string(d); }

std::string ExperimentReport::to_text(bool timing) const {
  std::string out;
  out += std::string("format = ") + kReportFormat + "\n";
  out += "experiment = " + experiment + "\n";
  out += format_fields(instance, "instance.");
  out += "budget = " + budget + "\n";
  out += "allowance = " + std::to_string(allowance) + "\n";
  out += "candidate = " + candidate + "\n";
  out += "candidate.size = " + std::to_string(candidate_size) + "\n";
  out += std::string("status = ") + to_string(status) + "\n";
  if (!note.empty()) out += "note = " + note + "\n";
  out += format_fields(metrics, "metric.");
  if (timing) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", wall_clock_ms);
    out += std::string("wall_clock_ms = ") + buf + "\n";
  }
  for (const auto& a : audits) out += format_audit(a);
  for (const auto& t : tables) out += format_table(t);
  return out;
}

}  // namespace lbg
