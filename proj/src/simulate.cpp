#include "hdrm/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "hdrm/engine.hpp"
#include "hdrm/estimators_homog.hpp"
#include "hdrm/estimators_multi.hpp"
#include "hdrm/estimators_single.hpp"
#include "hdrm/reduction.hpp"
#include "hdrm/rng.hpp"
#include "hdrm/trace_context.hpp"

namespace hdrm {

namespace {

// stream ids for deriving per-replication seeds
constexpr std::uint64_t kStreamData = 0xDA7Aull;
constexpr std::uint64_t kStreamEngine = 0x7E57ull;

Vector spike_direction(Eigen::Index d) {
  Vector v(d);
  for (Eigen::Index t = 0; t < d; ++t) v[t] = static_cast<double>(t + 1);
  return v / v.norm();
}

double mean_of(const std::vector<double>& v) {
  return pairwise_sum(v) / static_cast<double>(v.size());
}

double se_of(const std::vector<double>& v, double mean) {
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double n = static_cast<double>(v.size());
  return std::sqrt(ss / (n - 1.0) / n);
}

}  // namespace

CovarianceTemplate CovarianceTemplate::identity() { return {}; }

CovarianceTemplate CovarianceTemplate::compound_symmetry(double rho) {
  CovarianceTemplate t;
  t.kind = Kind::CompoundSymmetry;
  t.rho = rho;
  return t;
}

CovarianceTemplate CovarianceTemplate::ar1(double rho) {
  CovarianceTemplate t;
  t.kind = Kind::AR1;
  t.rho = rho;
  return t;
}

CovarianceTemplate CovarianceTemplate::spike_ridge(double spike, double ridge) {
  CovarianceTemplate t;
  t.kind = Kind::SpikeRidge;
  t.spike = spike;
  t.ridge = ridge;
  return t;
}

CovarianceTemplate CovarianceTemplate::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ':')) parts.push_back(part);
  if (parts.empty()) throw std::invalid_argument("empty covariance spec");
  const std::string& name = parts[0];
  auto num = [&](std::size_t i, double fallback) {
    return parts.size() > i ? std::stod(parts[i]) : fallback;
  };
  if (name == "identity" || name == "id") return identity();
  if (name == "cs") return compound_symmetry(num(1, 0.5));
  if (name == "ar1" || name == "ar") return ar1(num(1, 0.6));
  if (name == "spike") return spike_ridge(num(1, 1.0), num(2, 0.1));
  throw std::invalid_argument("unknown covariance spec: " + text);
}

std::string CovarianceTemplate::str() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::Identity: out << "identity"; break;
    case Kind::CompoundSymmetry: out << "cs:" << rho; break;
    case Kind::AR1: out << "ar1:" << rho; break;
    case Kind::SpikeRidge: out << "spike:" << spike << ":" << ridge; break;
  }
  return out.str();
}

Matrix CovarianceTemplate::materialize(Eigen::Index d) const {
  if (d < 1) throw std::invalid_argument("covariance dimension must be >= 1");
  Matrix sigma(d, d);
  switch (kind) {
    case Kind::Identity:
      sigma = Matrix::Identity(d, d);
      break;
    case Kind::CompoundSymmetry:
      sigma = Matrix::Constant(d, d, rho);
      sigma.diagonal().setOnes();
      break;
    case Kind::AR1:
      for (Eigen::Index s = 0; s < d; ++s) {
        for (Eigen::Index t = 0; t < d; ++t) {
          sigma(s, t) = std::pow(rho, std::abs(static_cast<double>(s - t)));
        }
      }
      break;
    case Kind::SpikeRidge: {
      const Vector v = spike_direction(d);
      sigma = spike * (v * v.transpose());
      sigma.diagonal().array() += ridge;
      break;
    }
  }
  Eigen::LLT<Matrix> llt(sigma);
  if (llt.info() != Eigen::Success) {
    throw std::invalid_argument("covariance template '" + str() +
                                "' is not positive definite at d=" + std::to_string(d));
  }
  return sigma;
}

Dataset sample_dataset(const std::vector<CovarianceTemplate>& templates,
                       const std::vector<Vector>& means,
                       const std::vector<Eigen::Index>& n, Eigen::Index d,
                       std::uint64_t seed) {
  const auto a = static_cast<Eigen::Index>(n.size());
  if (templates.size() != n.size()) {
    throw std::invalid_argument("sample_dataset: one covariance template per group");
  }
  if (!means.empty() && means.size() != n.size()) {
    throw std::invalid_argument("sample_dataset: one mean per group (or none)");
  }
  Dataset ds;
  ds.d = d;
  for (Eigen::Index i = 0; i < a; ++i) {
    if (n[static_cast<std::size_t>(i)] < 1) {
      throw std::invalid_argument("sample_dataset: group sizes must be >= 1");
    }
    const Matrix sigma = templates[static_cast<std::size_t>(i)].materialize(d);
    const Matrix chol = Eigen::LLT<Matrix>(sigma).matrixL();
    Matrix block(d, n[static_cast<std::size_t>(i)]);
    for (Eigen::Index j = 0; j < block.cols(); ++j) {
      Rng rng = Rng::at(seed, static_cast<std::uint64_t>(i),
                        static_cast<std::uint64_t>(j));
      Vector z(d);
      for (Eigen::Index t = 0; t < d; ++t) z[t] = rng.next_normal();
      block.col(j) = chol * z;
      if (!means.empty()) block.col(j) += means[static_cast<std::size_t>(i)];
    }
    ds.group_labels.push_back(std::to_string(i + 1));
    ds.observations.push_back(std::move(block));
  }
  return ds;
}

OracleReport oracle(const std::vector<CovarianceTemplate>& templates,
                    const std::vector<Eigen::Index>& n, const ProjectionPair& pair,
                    Eigen::Index dense_cap) {
  const auto a = pair.groups();
  const auto d = pair.dimension();
  if (static_cast<Eigen::Index>(templates.size()) != a ||
      static_cast<Eigen::Index>(n.size()) != a) {
    throw std::invalid_argument("oracle: need one template and one size per group");
  }
  if (a * d > dense_cap) {
    throw std::invalid_argument("oracle: a*d exceeds the dense evaluation cap");
  }
  double n_total = 0.0;
  for (auto ni : n) n_total += static_cast<double>(ni);

  // L Sigma_N L' with L = L_W (x) L_S; same nonzero spectrum as T Sigma_N T
  const Eigen::Index rw = pair.rank_w;
  const Eigen::Index rs = pair.rank_s;
  Matrix reduced = Matrix::Zero(rw * rs, rw * rs);
  for (Eigen::Index i = 0; i < a; ++i) {
    const Matrix sigma = templates[static_cast<std::size_t>(i)].materialize(d);
    const Matrix inner = pair.ls * sigma * pair.ls.transpose();  // rs x rs
    const Vector wi = pair.lw.col(i);
    const double scale = n_total / static_cast<double>(n[static_cast<std::size_t>(i)]);
    reduced += scale * kron(wi * wi.transpose(), inner);
  }

  Eigen::SelfAdjointEigenSolver<Matrix> eig(reduced, Eigen::EigenvaluesOnly);
  Vector vals = eig.eigenvalues().reverse();
  vals = vals.cwiseMax(0.0);  // clear rounding noise below zero

  OracleReport report;
  report.eigenvalues = vals;
  report.tr1 = vals.sum();
  report.tr2 = vals.array().square().sum();
  report.tr3 = vals.array().cube().sum();
  if (!(report.tr2 > 0.0)) {
    report.degenerate = true;
    return report;
  }
  report.beta1 = vals[0] / std::sqrt(report.tr2);
  report.f_p_exact = (report.tr2 * report.tr2 * report.tr2) / (report.tr3 * report.tr3);
  // power-mean inequality guarantees f >= 1; anything below is a rounding
  // artifact, anything far below is a logic error
  if (report.f_p_exact < 1.0 - 1e-9) {
    throw std::logic_error("oracle: f_P fell below 1, which is impossible");
  }
  report.f_p_exact = std::max(report.f_p_exact, 1.0);
  report.tau_exact = 1.0 / report.f_p_exact;
  return report;
}

double subplot_trace(const CovarianceTemplate& sigma, const ProjectionPair& pair,
                     int power) {
  const Matrix inner =
      pair.ls * sigma.materialize(pair.dimension()) * pair.ls.transpose();
  Matrix acc = inner;
  for (int k = 1; k < power; ++k) acc = acc * inner;
  return acc.trace();
}

double subplot_cross_trace(const CovarianceTemplate& sigma_i,
                           const CovarianceTemplate& sigma_r, const ProjectionPair& pair) {
  const Matrix gi = pair.ls * sigma_i.materialize(pair.dimension()) * pair.ls.transpose();
  const Matrix gr = pair.ls * sigma_r.materialize(pair.dimension()) * pair.ls.transpose();
  return (gi * gr).trace();
}

ExperimentConfig ExperimentConfig::parse_text(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!key.empty() && !value.empty()) kv[key] = value;
  }

  ExperimentConfig cfg;
  auto get = [&](const char* key) -> const std::string* {
    auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };
  auto as_bool = [](const std::string& s) {
    return s == "true" || s == "1" || s == "yes" || s == "on";
  };
  if (const auto* v = get("experiment")) cfg.experiment = *v;
  if (const auto* v = get("estimator")) cfg.estimator = *v;
  if (const auto* v = get("hypothesis")) cfg.hypothesis = *v;
  if (const auto* v = get("a")) cfg.a = std::stol(*v);
  if (const auto* v = get("d")) cfg.d = std::stol(*v);
  if (const auto* v = get("n")) {
    cfg.n.clear();
    std::stringstream ns(*v);
    std::string tok;
    while (std::getline(ns, tok, ',')) cfg.n.push_back(std::stol(tok));
  }
  if (const auto* v = get("sigma")) cfg.sigma = CovarianceTemplate::parse(*v);
  if (const auto* v = get("alpha")) cfg.alpha = std::stod(*v);
  if (const auto* v = get("replications")) cfg.replications = std::stoll(*v);
  if (const auto* v = get("seed")) cfg.seed = std::stoull(*v);
  if (const auto* v = get("budget")) cfg.budget = SubsampleBudget::parse(*v);
  if (const auto* v = get("cov_equal")) cfg.cov_equal = as_bool(*v);
  if (const auto* v = get("subsampling")) cfg.subsampling = as_bool(*v);
  if (const auto* v = get("am")) cfg.am = as_bool(*v);

  if (cfg.experiment.empty()) {
    throw std::invalid_argument("experiment config: missing 'experiment' key");
  }
  if (cfg.n.empty()) throw std::invalid_argument("experiment config: missing 'n'");
  if (cfg.a != static_cast<Eigen::Index>(cfg.n.size())) {
    cfg.a = static_cast<Eigen::Index>(cfg.n.size());
  }
  if (cfg.replications < 100) {
    throw std::invalid_argument("experiment config: replications must be >= 100");
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open experiment config: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_text(buffer.str());
}

std::string ExperimentResult::csv_header() { return "experiment,estimate,target,se,z,pass"; }

std::string ExperimentResult::csv_row() const {
  std::ostringstream out;
  out.precision(10);
  out << id << ',' << estimate << ',' << target << ',' << se << ',' << z << ','
      << (pass ? "true" : "false");
  return out.str();
}

namespace {

ProjectionPair pair_for(const ExperimentConfig& cfg) {
  const Hypothesis kind = hypothesis_from_name(cfg.hypothesis);
  if (cfg.a == 1) return build_single(kind, cfg.d);
  return build_grouped(kind, cfg.a, cfg.d);
}

std::vector<CovarianceTemplate> templates_for(const ExperimentConfig& cfg) {
  return std::vector<CovarianceTemplate>(static_cast<std::size_t>(cfg.a), cfg.sigma);
}

}  // namespace

ExperimentResult level_experiment(const ExperimentConfig& cfg) {
  if (cfg.replications < 100) {
    throw std::invalid_argument("level experiment needs at least 100 replications");
  }
  const ProjectionPair pair = pair_for(cfg);
  const auto templates = templates_for(cfg);
  const std::int64_t reps = cfg.replications;

  std::vector<double> pvals(static_cast<std::size_t>(reps), 0.0);
  parallel_for(reps, [&](std::int64_t r) {
    const std::uint64_t data_seed =
        Rng::at(cfg.seed, kStreamData, static_cast<std::uint64_t>(r)).next_u64();
    const Dataset ds = sample_dataset(templates, {}, cfg.n, cfg.d, data_seed);
    TestResult result;
    if (cfg.a == 1) {
      result = run_single(ds, pair, cfg.am);
    } else {
      GroupedOptions opts;
      opts.cov_equal = cfg.cov_equal;
      opts.subsampling = cfg.subsampling;
      opts.budget = cfg.budget;
      opts.am = cfg.am;
      opts.seed = Rng::at(cfg.seed, kStreamEngine, static_cast<std::uint64_t>(r)).next_u64();
      result = run_grouped(ds, pair, opts);
    }
    pvals[static_cast<std::size_t>(r)] = result.p_value;
  });

  std::int64_t rejections = 0;
  for (double p : pvals) rejections += (p < cfg.alpha) ? 1 : 0;

  ExperimentResult out;
  out.id = "level:" + cfg.hypothesis + (cfg.a > 1 ? (cfg.cov_equal ? ":C" : ":B") : ":A");
  out.estimate = static_cast<double>(rejections) / static_cast<double>(reps);
  out.target = cfg.alpha;
  out.se = std::sqrt(cfg.alpha * (1.0 - cfg.alpha) / static_cast<double>(reps));
  out.z = (out.estimate - out.target) / out.se;
  out.pass = std::fabs(out.z) <= 3.0;
  return out;
}

ExperimentResult unbiasedness_experiment(const ExperimentConfig& cfg) {
  if (cfg.replications < 100) {
    throw std::invalid_argument("unbiasedness experiment needs at least 100 replications");
  }
  const ProjectionPair pair = pair_for(cfg);
  const auto templates = templates_for(cfg);
  const std::string& est = cfg.estimator;
  std::int64_t n_total = 0;
  for (auto ni : cfg.n) n_total += ni;
  const std::int64_t budget = cfg.budget.resolve(n_total);

  // oracle target
  double target = 0.0;
  if (est == "a1" || est == "b_i1" || est == "c1") {
    target = subplot_trace(cfg.sigma, pair, 1);
  } else if (est == "a2" || est == "b_i4" || est == "c2") {
    target = subplot_trace(cfg.sigma, pair, 2);
  } else if (est == "a3" || est == "c3" || est == "c3s") {
    target = subplot_trace(cfg.sigma, pair, 3);
  } else if (est == "b_ir3") {
    target = subplot_cross_trace(cfg.sigma, cfg.sigma, pair);
  } else if (est == "b2") {
    target = oracle(templates, cfg.n, pair).tr1;
  } else if (est == "b5") {
    target = oracle(templates, cfg.n, pair).tr2;
  } else if (est == "b6" || est == "b6s") {
    target = oracle(templates, cfg.n, pair).tr3;
  } else {
    throw std::invalid_argument("unknown estimator id: " + est);
  }

  const std::int64_t reps = cfg.replications;
  std::vector<double> values(static_cast<std::size_t>(reps), 0.0);
  parallel_for(reps, [&](std::int64_t r) {
    const std::uint64_t data_seed =
        Rng::at(cfg.seed, kStreamData, static_cast<std::uint64_t>(r)).next_u64();
    const std::uint64_t sub_seed =
        Rng::at(cfg.seed, kStreamEngine, static_cast<std::uint64_t>(r)).next_u64();
    const Dataset ds = sample_dataset(templates, {}, cfg.n, cfg.d, data_seed);
    const TraceContext ctx(ds, pair, cfg.am);
    const std::optional<Subsample> sub =
        cfg.subsampling ? std::optional<Subsample>(Subsample{budget, sub_seed})
                        : std::nullopt;
    double v = 0.0;
    if (est == "a1" || est == "a2" || est == "a3") {
      const SingleTraces t = detail::single_traces(ctx);
      v = (est == "a1") ? t.a1 : (est == "a2") ? t.a2 : t.a3;
    } else if (est == "b_i1") {
      v = detail::b_i1(ctx, 0, sub);
    } else if (est == "b2") {
      v = detail::b2(ctx, sub);
    } else if (est == "b_ir3") {
      v = detail::b_ir3(ctx, 0, 1, sub);
    } else if (est == "b_i4") {
      v = detail::b_i4(ctx, 0, sub);
    } else if (est == "b5") {
      v = detail::b5(ctx, sub);
    } else if (est == "b6") {
      v = detail::b6_exact(ctx, 10000000);
    } else if (est == "b6s") {
      v = detail::b6_subsampled(ctx, budget, sub_seed);
    } else if (est == "c1") {
      v = detail::c1(ctx, sub);
    } else if (est == "c2") {
      v = detail::c2(ctx, sub);
    } else if (est == "c3") {
      v = detail::c3_exact(ctx, 10000000);
    } else if (est == "c3s") {
      v = detail::c3_subsampled(ctx, budget, sub_seed);
    }
    values[static_cast<std::size_t>(r)] = v;
  });

  ExperimentResult out;
  out.id = "unbiasedness:" + est + ":" + cfg.sigma.str();
  out.estimate = mean_of(values);
  out.target = target;
  out.se = se_of(values, out.estimate);
  out.z = (out.estimate - out.target) / out.se;
  out.pass = std::fabs(out.z) <= 3.0;
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  if (cfg.experiment == "level") return level_experiment(cfg);
  if (cfg.experiment == "unbiasedness") return unbiasedness_experiment(cfg);
  throw std::invalid_argument("unknown experiment kind: " + cfg.experiment);
}

}  // namespace hdrm
