#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hdrm/budget.hpp"
#include "hdrm/dataset.hpp"
#include "hdrm/hypotheses.hpp"

namespace hdrm {

/// Parametric covariance generators for the simulation and oracle harness.
struct CovarianceTemplate {
  enum class Kind { Identity, CompoundSymmetry, AR1, SpikeRidge };
  Kind kind = Kind::Identity;
  double rho = 0.5;    // CompoundSymmetry / AR1 correlation
  double spike = 1.0;  // SpikeRidge: variance along the spike direction
  double ridge = 0.1;  // SpikeRidge: isotropic floor

  static CovarianceTemplate identity();
  static CovarianceTemplate compound_symmetry(double rho);
  static CovarianceTemplate ar1(double rho);
  static CovarianceTemplate spike_ridge(double spike, double ridge);

  /// "identity" | "cs:<rho>" | "ar1:<rho>" | "spike:<var>:<ridge>"
  static CovarianceTemplate parse(const std::string& text);
  std::string str() const;

  /// Dense d x d covariance; throws when not positive definite.
  /// The SpikeRidge direction is a fixed non-constant unit ramp.
  Matrix materialize(Eigen::Index d) const;
};

/// Independent N(mu_i, Sigma_i) columns per group; reproducible per seed.
Dataset sample_dataset(const std::vector<CovarianceTemplate>& templates,
                       const std::vector<Vector>& means,
                       const std::vector<Eigen::Index>& n, Eigen::Index d,
                       std::uint64_t seed);

/// Exact spectrum of T Sigma_N T via the companion-reduced form
/// L Sigma_N L', plus the derived trace and approximation quantities.
struct OracleReport {
  double tr1 = 0.0;  // tr(T Sigma_N)
  double tr2 = 0.0;  // tr((T Sigma_N)^2)
  double tr3 = 0.0;  // tr((T Sigma_N)^3)
  Vector eigenvalues;  // descending, length rank(T)
  double beta1 = 0.0;  // lambda_1 / sqrt(sum lambda^2)
  double f_p_exact = 1.0;
  double tau_exact = 1.0;
  bool degenerate = false;
};

OracleReport oracle(const std::vector<CovarianceTemplate>& templates,
                    const std::vector<Eigen::Index>& n, const ProjectionPair& pair,
                    Eigen::Index dense_cap = 4000);

/// Subplot-level exact traces tr((T_S Sigma_i)^k) and tr(T_S S_i T_S S_r),
/// the targets of the groupwise difference estimators.
double subplot_trace(const CovarianceTemplate& sigma, const ProjectionPair& pair, int power);
double subplot_cross_trace(const CovarianceTemplate& sigma_i,
                           const CovarianceTemplate& sigma_r, const ProjectionPair& pair);

/// One simulation experiment, loadable from a key = value text file.
struct ExperimentConfig {
  std::string experiment;  // "level" or "unbiasedness"
  std::string estimator;   // unbiasedness target, e.g. "a1", "b5", "b6s", "c3s"
  std::string hypothesis = "flat";
  Eigen::Index a = 1;
  Eigen::Index d = 10;
  std::vector<Eigen::Index> n;
  CovarianceTemplate sigma;
  double alpha = 0.05;
  std::int64_t replications = 1000;
  std::uint64_t seed = 1;
  SubsampleBudget budget{};
  bool cov_equal = false;
  bool subsampling = false;
  bool am = true;

  static ExperimentConfig parse_file(const std::string& path);
  static ExperimentConfig parse_text(const std::string& text);
};

struct ExperimentResult {
  std::string id;
  double estimate = 0.0;
  double target = 0.0;
  double se = 0.0;
  double z = 0.0;
  bool pass = false;

  std::string csv_row() const;
  static std::string csv_header();
};

/// Fraction of replications with p < alpha under the null, with binomial SE.
ExperimentResult level_experiment(const ExperimentConfig& config);

/// Monte Carlo mean of one trace estimator against its exact oracle value;
/// pass iff |mean - target| <= 3 SE. Groupwise estimators use the first
/// group (and the first pair of groups for the cross estimator).
ExperimentResult unbiasedness_experiment(const ExperimentConfig& config);

/// Dispatch on config.experiment.
ExperimentResult run_experiment(const ExperimentConfig& config);

}  // namespace hdrm
