#include <doctest.h>

#include <json.hpp>

#include "hdrm/report.hpp"

namespace {

hdrm::TestResult one_group_fixture() {
  hdrm::TestResult r;
  r.statistic_w = 18.4195;
  r.f_hat = 1.0;
  r.tau_hat = 1.0;
  r.p_value = 2e-7;
  r.n_total = 30;
  r.dimension = 40;
  r.groups = 1;
  r.hypothesis_label = "flat";
  return r;
}

}  // namespace

TEST_CASE("statistic formatting rounds to four decimals and strips zeros") {
  CHECK(hdrm::format_stat(18.4195) == "18.4195");
  CHECK(hdrm::format_stat(1.0) == "1");
  CHECK(hdrm::format_stat(2.038) == "2.038");
  CHECK(hdrm::format_stat(0.3159) == "0.3159");
  CHECK(hdrm::format_stat(0.31589) == "0.3159");
  CHECK(hdrm::format_stat(-0.00004) == "0");
  CHECK(hdrm::format_stat(0.5) == "0.5");
  CHECK(hdrm::format_stat(-1.25) == "-1.25");
}

TEST_CASE("one-group report block") {
  const std::string expect =
      "      One Group Repeated Measure\n"
      "\n"
      "Analysis of 30 subjects in 40 dimensions:\n"
      "W = 18.4195  f = 1  p.value < 1e-04\n"
      "Hypothesis type: flat\n"
      "Convergence parameter tau = 1\n";
  CHECK(hdrm::render_text(one_group_fixture()) == expect);
}

TEST_CASE("grouped report block") {
  hdrm::TestResult r;
  r.statistic_w = 0.5851;
  r.f_hat = 3.1657;
  r.tau_hat = 0.3159;
  r.p_value = 0.2199;
  r.n_total = 101;
  r.dimension = 40;
  r.groups = 4;
  r.hypothesis_label = "whole";
  const std::string expect =
      "      Multi Group Repeated Measure\n"
      "\n"
      "Analysis of 101 individuals in 4 groups and 40 dimensions:\n"
      "W = 0.5851  f = 3.1657  p.value = 0.2199\n"
      "Hypothesis type: whole\n"
      "Convergence parameter tau = 0.3159\n";
  CHECK(hdrm::render_text(r) == expect);
}

TEST_CASE("p-values at the display threshold") {
  auto r = one_group_fixture();
  r.p_value = 0.00012;
  CHECK(hdrm::render_text(r).find("p.value = 0.0001") != std::string::npos);
  r.p_value = 0.00009;
  CHECK(hdrm::render_text(r).find("p.value < 1e-04") != std::string::npos);
}

TEST_CASE("JSON carries every field at full precision") {
  auto r = one_group_fixture();
  r.budget_used = 101000;
  r.seed = 3141;
  r.removed_incomplete = 2;
  const auto j = nlohmann::json::parse(hdrm::render_json(r));
  CHECK(j["w"].get<double>() == 18.4195);
  CHECK(j["f"].get<double>() == 1.0);
  CHECK(j["p_value"].get<double>() == 2e-7);
  CHECK(j["n_total"].get<int>() == 30);
  CHECK(j["dimension"].get<int>() == 40);
  CHECK(j["groups"].get<int>() == 1);
  CHECK(j["hypothesis"].get<std::string>() == "flat");
  CHECK(j["budget_used"].get<long long>() == 101000);
  CHECK(j["seed"].get<std::uint64_t>() == 3141);
  CHECK(j["removed_incomplete"].get<int>() == 2);
  CHECK(j["warnings"].is_array());
  CHECK(j["warnings"].size() == 1);  // removed subjects note
}

TEST_CASE("warnings render as trailing lines") {
  auto r = one_group_fixture();
  r.projection_warning = true;
  const auto text = hdrm::render_text(r);
  CHECK(text.find("Warning: supplied hypothesis matrix") != std::string::npos);
}
