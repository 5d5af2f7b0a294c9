#include <doctest.h>

#include <cmath>

#include "hdrm/simulate.hpp"
#include "test_support.hpp"

using hdrm::CovarianceTemplate;
using hdrm::Matrix;

TEST_CASE("covariance templates materialize correctly") {
  const Matrix id = CovarianceTemplate::identity().materialize(4);
  CHECK((id - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);

  const Matrix cs = CovarianceTemplate::compound_symmetry(0.5).materialize(3);
  CHECK(cs(0, 0) == 1.0);
  CHECK(cs(0, 2) == 0.5);

  const Matrix ar = CovarianceTemplate::ar1(0.6).materialize(4);
  CHECK(ar(0, 1) == doctest::Approx(0.6));
  CHECK(ar(0, 3) == doctest::Approx(0.216));

  const Matrix sp = CovarianceTemplate::spike_ridge(2.0, 0.1).materialize(5);
  CHECK((sp - sp.transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS((void)CovarianceTemplate::spike_ridge(1.0, 0.0).materialize(5),
                  std::invalid_argument);
}

TEST_CASE("template parsing round trip") {
  CHECK(CovarianceTemplate::parse("identity").kind == CovarianceTemplate::Kind::Identity);
  CHECK(CovarianceTemplate::parse("cs:0.4").rho == doctest::Approx(0.4));
  CHECK(CovarianceTemplate::parse("ar1:0.6").rho == doctest::Approx(0.6));
  const auto sp = CovarianceTemplate::parse("spike:2:1e-6");
  CHECK(sp.spike == doctest::Approx(2.0));
  CHECK(sp.ridge == doctest::Approx(1e-6));
  CHECK_THROWS_AS((void)CovarianceTemplate::parse("wishart"), std::invalid_argument);
}

TEST_CASE("sampling is reproducible and matches the law of large numbers") {
  const std::vector<CovarianceTemplate> sigma = {CovarianceTemplate::identity()};
  const std::vector<Eigen::Index> n = {1000};
  const auto ds1 = hdrm::sample_dataset(sigma, {}, n, 2, 77);
  const auto ds2 = hdrm::sample_dataset(sigma, {}, n, 2, 77);
  CHECK((ds1.observations[0] - ds2.observations[0]).cwiseAbs().maxCoeff() == 0.0);

  const Matrix& x = ds1.observations[0];
  const Matrix centered = x.colwise() - x.rowwise().mean().eval();
  const Matrix cov = centered * centered.transpose() / (x.cols() - 1.0);
  CHECK((cov - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 0.1);

  const auto ds3 = hdrm::sample_dataset(sigma, {}, n, 2, 78);
  CHECK((ds1.observations[0] - ds3.observations[0]).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("sampling honors the group means") {
  const std::vector<CovarianceTemplate> sigma = {CovarianceTemplate::identity()};
  hdrm::Vector mu(2);
  mu << 10.0, -5.0;
  const auto ds = hdrm::sample_dataset(sigma, {mu}, {500}, 2, 5);
  const hdrm::Vector mean = ds.observations[0].rowwise().mean();
  CHECK(mean[0] == doctest::Approx(10.0).epsilon(0.05));
  CHECK(mean[1] == doctest::Approx(-5.0).epsilon(0.05));
}

TEST_CASE("oracle identities for the centering hypothesis") {
  SUBCASE("identity covariance gives f = d-1") {
    for (Eigen::Index d : {5, 40}) {
      const auto pair = hdrm::build_single(hdrm::Hypothesis::Flat, d);
      const auto rep = hdrm::oracle({CovarianceTemplate::identity()}, {20}, pair);
      const double expect = static_cast<double>(d - 1);
      CHECK(rep.tr1 == doctest::Approx(expect).epsilon(1e-10));
      CHECK(rep.tr2 == doctest::Approx(expect).epsilon(1e-10));
      CHECK(rep.tr3 == doctest::Approx(expect).epsilon(1e-10));
      CHECK(rep.f_p_exact == doctest::Approx(expect).epsilon(1e-8));
      CHECK(rep.tau_exact == doctest::Approx(1.0 / expect).epsilon(1e-8));
    }
  }
  SUBCASE("a dominating spike drives beta1 to 1 and f to 1") {
    const auto pair = hdrm::build_single(hdrm::Hypothesis::Flat, 10);
    const auto rep =
        hdrm::oracle({CovarianceTemplate::spike_ridge(1.0, 1e-6)}, {20}, pair);
    CHECK(rep.beta1 > 0.999);
    CHECK(rep.f_p_exact < 1.01);
    CHECK(rep.f_p_exact >= 1.0 - 1e-9);
  }
}

TEST_CASE("oracle matches a dense direct evaluation") {
  const auto pair = hdrm::build_grouped(hdrm::Hypothesis::Interaction, 2, 5);
  const std::vector<CovarianceTemplate> sigma = {CovarianceTemplate::compound_symmetry(0.5),
                                                 CovarianceTemplate::ar1(0.6)};
  const std::vector<Eigen::Index> n = {8, 12};
  const auto rep = hdrm::oracle(sigma, n, pair);

  // independent dense route: T Sigma_N with explicit block diagonal
  const double n_total = 20.0;
  Matrix sigma_n = Matrix::Zero(10, 10);
  sigma_n.block(0, 0, 5, 5) = (n_total / 8.0) * sigma[0].materialize(5);
  sigma_n.block(5, 5, 5, 5) = (n_total / 12.0) * sigma[1].materialize(5);
  const Matrix t = hdrm::kron(pair.tw, pair.ts);
  const Matrix ts1 = t * sigma_n;
  CHECK(rep.tr1 == doctest::Approx(ts1.trace()).epsilon(1e-10));
  CHECK(rep.tr2 == doctest::Approx((ts1 * ts1).trace()).epsilon(1e-10));
  CHECK(rep.tr3 == doctest::Approx((ts1 * ts1 * ts1).trace()).epsilon(1e-10));
}

TEST_CASE("whole hypothesis moments reduce as the closed form says") {
  // equal sizes, equal covariance: tr(T Sigma_N) = a (T_W)_11 (N/n) tr(T_S Sigma)
  const Eigen::Index a = 3, d = 4, n_per = 7;
  const auto pair = hdrm::build_grouped(hdrm::Hypothesis::Whole, a, d);
  const auto cs = CovarianceTemplate::compound_symmetry(0.5);
  const auto rep =
      hdrm::oracle({cs, cs, cs}, {n_per, n_per, n_per}, pair);
  const double tsub = hdrm::subplot_trace(cs, pair, 1);
  const double expect = static_cast<double>(a) * ((a - 1.0) / a) * 3.0 * tsub;
  CHECK(rep.tr1 == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("oracle f is never below one") {
  const std::vector<CovarianceTemplate> pool = {
      CovarianceTemplate::identity(), CovarianceTemplate::compound_symmetry(0.5),
      CovarianceTemplate::ar1(0.6), CovarianceTemplate::spike_ridge(1.0, 0.1)};
  const auto pair = hdrm::build_grouped(hdrm::Hypothesis::Interaction, 2, 6);
  for (const auto& s1 : pool) {
    for (const auto& s2 : pool) {
      const auto rep = hdrm::oracle({s1, s2}, {6, 9}, pair);
      CHECK(rep.f_p_exact >= 1.0 - 1e-9);
      CHECK(rep.beta1 <= 1.0 + 1e-12);
      CHECK(rep.beta1 > 0.0);
    }
  }
}

TEST_CASE("oracle enforces the dense cap") {
  const auto pair = hdrm::build_grouped(hdrm::Hypothesis::Identical, 2, 4);
  CHECK_THROWS_AS(
      (void)hdrm::oracle({CovarianceTemplate::identity(), CovarianceTemplate::identity()},
                         {6, 6}, pair, 7),
      std::invalid_argument);
}

TEST_CASE("experiment config parsing") {
  const auto cfg = hdrm::ExperimentConfig::parse_text(
      "experiment = unbiasedness\n"
      "estimator = b5\n"
      "hypothesis = interaction\n"
      "d = 6\n"
      "n = 8,10\n"
      "sigma = cs:0.5\n"
      "replications = 500\n"
      "seed = 3\n"
      "budget = 200*N\n"
      "# trailing comment\n");
  CHECK(cfg.experiment == "unbiasedness");
  CHECK(cfg.estimator == "b5");
  CHECK(cfg.a == 2);
  CHECK(cfg.n[1] == 10);
  CHECK(cfg.budget.coeff == 200);
  CHECK_THROWS_AS((void)hdrm::ExperimentConfig::parse_text("experiment = level\n"),
                  std::invalid_argument);
}

TEST_CASE("level experiment endpoints") {
  hdrm::ExperimentConfig cfg;
  cfg.experiment = "level";
  cfg.hypothesis = "flat";
  cfg.d = 4;
  cfg.a = 1;
  cfg.n = {10};
  cfg.alpha = 0.9999;
  cfg.replications = 100;
  cfg.seed = 9;
  const auto high = hdrm::level_experiment(cfg);
  CHECK(high.estimate > 0.95);

  cfg.alpha = 1e-9;
  const auto low = hdrm::level_experiment(cfg);
  CHECK(low.estimate == 0.0);
}

TEST_CASE("unbiasedness experiment passes for a cheap estimator") {
  hdrm::ExperimentConfig cfg;
  cfg.experiment = "unbiasedness";
  cfg.estimator = "b2";
  cfg.hypothesis = "interaction";
  cfg.d = 5;
  cfg.a = 2;
  cfg.n = {6, 7};
  cfg.sigma = CovarianceTemplate::ar1(0.6);
  cfg.replications = 1500;
  cfg.seed = 21;
  const auto res = hdrm::run_experiment(cfg);
  CHECK(res.pass);
  CHECK(res.se > 0.0);
  const auto row = res.csv_row();
  CHECK(row.find("unbiasedness:b2") == 0);
}
