#include "hdrm/report.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace hdrm {

std::string format_stat(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  std::string s(buf);
  if (s.find('.') != std::string::npos) {
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  return s;
}

std::string render_text(const TestResult& r) {
  std::ostringstream out;
  if (r.groups == 1) {
    out << "      One Group Repeated Measure\n\n";
    out << "Analysis of " << r.n_total << " subjects in " << r.dimension
        << " dimensions:\n";
  } else {
    out << "      Multi Group Repeated Measure\n\n";
    out << "Analysis of " << r.n_total << " individuals in " << r.groups
        << " groups and " << r.dimension << " dimensions:\n";
  }
  out << "W = " << format_stat(r.statistic_w) << "  f = " << format_stat(r.f_hat)
      << "  p.value ";
  if (r.p_value < 1e-4) {
    out << "< 1e-04\n";
  } else {
    out << "= " << format_stat(r.p_value) << "\n";
  }
  out << "Hypothesis type: " << r.hypothesis_label << "\n";
  out << "Convergence parameter tau = " << format_stat(r.tau_hat) << "\n";
  for (const auto& w : r.warnings()) {
    out << "Warning: " << w << "\n";
  }
  return out.str();
}

std::string render_json(const TestResult& r) {
  nlohmann::json j;
  j["w"] = r.statistic_w;
  j["f"] = r.f_hat;
  j["tau"] = r.tau_hat;
  j["p_value"] = r.p_value;
  j["n_total"] = r.n_total;
  j["dimension"] = r.dimension;
  j["groups"] = r.groups;
  j["hypothesis"] = r.hypothesis_label;
  j["cov_equal"] = r.cov_equal;
  j["subsampling"] = r.subsampling;
  j["budget_used"] = r.budget_used;
  j["removed_incomplete"] = r.removed_incomplete;
  if (r.seed) {
    j["seed"] = *r.seed;
  } else {
    j["seed"] = nullptr;
  }
  j["warnings"] = r.warnings();
  return j.dump(2);
}

}  // namespace hdrm
