#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hdrm/budget.hpp"
#include "hdrm/dataset.hpp"
#include "hdrm/distributions.hpp"
#include "hdrm/engine.hpp"
#include "hdrm/hypotheses.hpp"
#include "hdrm/report.hpp"
#include "hdrm/simulate.hpp"

namespace py = pybind11;

namespace {

using MatrixOrName = std::variant<std::string, hdrm::Matrix>;

hdrm::Dataset dataset_from_args(const py::object& data,
                                const std::optional<std::vector<std::string>>& subject,
                                const std::optional<std::vector<std::string>>& group) {
  if (py::isinstance<py::array>(data)) {
    const auto arr = data.cast<py::array_t<double>>();
    if (arr.ndim() == 2) {
      const auto m = data.cast<hdrm::Matrix>();
      return hdrm::from_wide(m, group ? &*group : nullptr);
    }
    if (arr.ndim() == 1) {
      if (!subject) {
        throw std::invalid_argument("vector data needs a 'subject' label per value");
      }
      hdrm::LongTable table;
      const auto view = arr.unchecked<1>();
      table.values.reserve(static_cast<std::size_t>(view.shape(0)));
      for (py::ssize_t i = 0; i < view.shape(0); ++i) table.values.push_back(view(i));
      table.subjects = *subject;
      if (group) table.groups = *group;
      return hdrm::from_long(table);
    }
  }
  throw std::invalid_argument("data must be a 2-d matrix (subjects as columns) or a "
                              "1-d value vector with subject labels");
}

hdrm::ProjectionPair single_pair(const MatrixOrName& hypothesis, Eigen::Index d) {
  if (std::holds_alternative<hdrm::Matrix>(hypothesis)) {
    return hdrm::build_custom_single(std::get<hdrm::Matrix>(hypothesis));
  }
  return hdrm::build_single(
      hdrm::hypothesis_from_name(std::get<std::string>(hypothesis)), d);
}

}  // namespace

PYBIND11_MODULE(_hdrm, m) {
  m.doc() = "High-dimensional repeated measure tests (C++ core)";

  py::class_<hdrm::TestResult>(m, "TestResult")
      .def_readonly("w", &hdrm::TestResult::statistic_w)
      .def_readonly("f", &hdrm::TestResult::f_hat)
      .def_readonly("tau", &hdrm::TestResult::tau_hat)
      .def_readonly("p_value", &hdrm::TestResult::p_value)
      .def_readonly("n_total", &hdrm::TestResult::n_total)
      .def_readonly("dimension", &hdrm::TestResult::dimension)
      .def_readonly("groups", &hdrm::TestResult::groups)
      .def_readonly("hypothesis", &hdrm::TestResult::hypothesis_label)
      .def_readonly("cov_equal", &hdrm::TestResult::cov_equal)
      .def_readonly("subsampling", &hdrm::TestResult::subsampling)
      .def_readonly("budget_used", &hdrm::TestResult::budget_used)
      .def_readonly("removed_incomplete", &hdrm::TestResult::removed_incomplete)
      .def_readonly("seed", &hdrm::TestResult::seed)
      .def("warnings", &hdrm::TestResult::warnings)
      .def("text", [](const hdrm::TestResult& r) { return hdrm::render_text(r); })
      .def("json", [](const hdrm::TestResult& r) { return hdrm::render_json(r); })
      .def("__repr__", [](const hdrm::TestResult& r) { return hdrm::render_text(r); });

  m.def(
      "hdrm_single",
      [](const py::object& data, const MatrixOrName& hypothesis,
         const std::optional<std::vector<std::string>>& subject, bool am) {
        const hdrm::Dataset ds = dataset_from_args(data, subject, std::nullopt);
        return hdrm::run_single(ds, single_pair(hypothesis, ds.d), am);
      },
      py::arg("data"), py::arg("hypothesis") = "flat",
      py::arg("subject") = std::nullopt, py::arg("am") = true,
      "One-group test on wide (d x N) or long data");

  m.def(
      "hdrm_grouped",
      [](const py::object& data, const MatrixOrName& hypothesis,
         const std::optional<std::vector<std::string>>& group,
         const std::optional<std::vector<std::string>>& subject,
         const std::optional<hdrm::Matrix>& tw, const std::optional<hdrm::Matrix>& ts,
         bool cov_equal, bool subsampling, const std::string& budget,
         std::optional<std::uint64_t> seed, bool am) {
        const hdrm::Dataset ds = dataset_from_args(data, subject, group);
        hdrm::ProjectionPair pair;
        if (tw || ts) {
          if (!tw || !ts) {
            throw std::invalid_argument("custom grouped hypotheses need both tw and ts");
          }
          pair = hdrm::build_custom_grouped(*tw, *ts);
        } else {
          pair = hdrm::build_grouped(
              hdrm::hypothesis_from_name(std::get<std::string>(hypothesis)),
              ds.groups(), ds.d);
        }
        hdrm::GroupedOptions opts;
        opts.cov_equal = cov_equal;
        opts.subsampling = subsampling;
        opts.budget = hdrm::SubsampleBudget::parse(budget);
        opts.seed = seed;
        opts.am = am;
        return hdrm::run_grouped(ds, pair, opts);
      },
      py::arg("data"), py::arg("hypothesis") = "whole", py::arg("group") = std::nullopt,
      py::arg("subject") = std::nullopt, py::arg("tw") = std::nullopt,
      py::arg("ts") = std::nullopt, py::arg("cov_equal") = false,
      py::arg("subsampling") = false, py::arg("budget") = "1000*N",
      py::arg("seed") = std::nullopt, py::arg("am") = true,
      "Multi-group test; group labels are required");

  m.def("chisq_cdf", &hdrm::chisq_cdf, py::arg("x"), py::arg("f"));
  m.def("chisq_quantile", &hdrm::chisq_quantile, py::arg("p"), py::arg("f"));
  m.def("pearson_pvalue", &hdrm::pearson_pvalue, py::arg("w"), py::arg("f"));
  m.def("pearson_quantile", &hdrm::pearson_quantile, py::arg("alpha"), py::arg("f"));

  m.def(
      "oracle",
      [](const std::vector<std::string>& sigma, const std::vector<Eigen::Index>& n,
         const std::string& hypothesis, Eigen::Index d) {
        std::vector<hdrm::CovarianceTemplate> templates;
        templates.reserve(sigma.size());
        for (const auto& s : sigma) templates.push_back(hdrm::CovarianceTemplate::parse(s));
        const auto a = static_cast<Eigen::Index>(n.size());
        const hdrm::ProjectionPair pair =
            (a == 1) ? hdrm::build_single(hdrm::hypothesis_from_name(hypothesis), d)
                     : hdrm::build_grouped(hdrm::hypothesis_from_name(hypothesis), a, d);
        const hdrm::OracleReport rep = hdrm::oracle(templates, n, pair);
        py::dict out;
        out["tr1"] = rep.tr1;
        out["tr2"] = rep.tr2;
        out["tr3"] = rep.tr3;
        out["beta1"] = rep.beta1;
        out["f_p"] = rep.f_p_exact;
        out["tau"] = rep.tau_exact;
        out["eigenvalues"] = rep.eigenvalues;
        return out;
      },
      py::arg("sigma"), py::arg("n"), py::arg("hypothesis"), py::arg("d"),
      "Exact traces and Pearson quantities for template covariances");

  m.def(
      "sample_dataset",
      [](const std::vector<std::string>& sigma, const std::vector<Eigen::Index>& n,
         Eigen::Index d, std::uint64_t seed) {
        std::vector<hdrm::CovarianceTemplate> templates;
        templates.reserve(sigma.size());
        for (const auto& s : sigma) templates.push_back(hdrm::CovarianceTemplate::parse(s));
        const hdrm::Dataset ds = hdrm::sample_dataset(templates, {}, n, d, seed);
        py::list blocks;
        for (const auto& block : ds.observations) blocks.append(block);
        return blocks;
      },
      py::arg("sigma"), py::arg("n"), py::arg("d"), py::arg("seed"),
      "Zero-mean normal samples per group, one matrix (d x n_i) per group");
}
