#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "hdrm/estimators_single.hpp"
#include "hdrm/simulate.hpp"
#include "test_support.hpp"

using hdrm::Matrix;
using hdrm::Vector;
using hdrm_test::make_dataset;

namespace {

hdrm::ProjectionPair flat_pair(Eigen::Index d) {
  return hdrm::build_single(hdrm::Hypothesis::Flat, d);
}

}  // namespace

TEST_CASE("A1 on constants is zero under the centering hypothesis") {
  Matrix x(4, 5);
  for (Eigen::Index j = 0; j < 5; ++j) x.col(j).setConstant(static_cast<double>(j + 1));
  const auto ds = make_dataset({x});
  CHECK(hdrm::estimate_a1(ds, flat_pair(4)) == doctest::Approx(0.0).epsilon(1e-24));
}

TEST_CASE("A2 hand value for two unit vectors") {
  Matrix x(2, 2);
  x << 1.0, 0.0,
       0.0, 1.0;
  const auto ds = make_dataset({x});
  // (e1' P2 e2)^2 = 1/4, one pair
  CHECK(hdrm::estimate_a2(ds, flat_pair(2)) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("A2 vanishes when every subject is annihilated by T") {
  Matrix x(3, 4);
  for (Eigen::Index j = 0; j < 4; ++j) x.col(j).setConstant(2.5);
  const auto ds = make_dataset({x});
  CHECK(hdrm::estimate_a2(ds, flat_pair(3)) == doctest::Approx(0.0).epsilon(1e-24));
}

TEST_CASE("A3 hand value for three unit vectors") {
  Matrix x = Matrix::Identity(3, 3);
  const auto ds = make_dataset({x});
  // each cross form is -1/3, single triple: (-1/3)^3
  CHECK(hdrm::estimate_a3(ds, flat_pair(3)) ==
        doctest::Approx(-1.0 / 27.0).epsilon(1e-12));
}

TEST_CASE("one-group estimator preconditions") {
  const auto pair = flat_pair(3);
  const auto one = make_dataset({hdrm_test::random_data(3, 1, 1)});
  const auto two = make_dataset({hdrm_test::random_data(3, 2, 2)});
  CHECK_THROWS_AS((void)hdrm::estimate_a2(one, pair), std::invalid_argument);
  CHECK_THROWS_AS((void)hdrm::estimate_a3(two, pair), std::invalid_argument);
  const auto grouped = make_dataset(
      {hdrm_test::random_data(3, 4, 3), hdrm_test::random_data(3, 4, 4)});
  CHECK_THROWS_AS((void)hdrm::estimate_a1(grouped, pair), std::invalid_argument);
}

TEST_CASE("companion and full-matrix paths agree") {
  const auto ds = make_dataset({hdrm_test::random_data(7, 12, 99)});
  const auto pair = flat_pair(7);
  for (auto fn : {hdrm::estimate_a1, hdrm::estimate_a2, hdrm::estimate_a3}) {
    const double with = fn(ds, pair, true);
    const double without = fn(ds, pair, false);
    CHECK(with == doctest::Approx(without).epsilon(1e-10));
  }
}

TEST_CASE("estimators ignore subject order") {
  const Matrix x = hdrm_test::random_data(5, 9, 7);
  Matrix shuffled(5, 9);
  const int perm[9] = {4, 7, 0, 8, 2, 6, 1, 5, 3};
  for (int j = 0; j < 9; ++j) shuffled.col(perm[j]) = x.col(j);
  const auto a = make_dataset({x});
  const auto b = make_dataset({shuffled});
  const auto pair = flat_pair(5);
  const auto ta = hdrm::estimate_single_traces(a, pair);
  const auto tb = hdrm::estimate_single_traces(b, pair);
  CHECK(ta.a1 == doctest::Approx(tb.a1).epsilon(1e-13));
  CHECK(ta.a2 == doctest::Approx(tb.a2).epsilon(1e-13));
  CHECK(ta.a3 == doctest::Approx(tb.a3).epsilon(1e-13));
}

TEST_CASE("A3 matches a direct triple-loop enumeration") {
  const auto ds = make_dataset({hdrm_test::random_data(4, 8, 11)});
  const auto pair = flat_pair(4);
  const Matrix& x = ds.observations[0];
  const Matrix g = x.transpose() * (pair.ts * x);
  double brute = 0.0;
  for (int i = 0; i < 8; ++i)
    for (int j = i + 1; j < 8; ++j)
      for (int k = j + 1; k < 8; ++k) brute += g(i, j) * g(j, k) * g(k, i);
  brute /= 56.0;  // C(8,3)
  CHECK(hdrm::estimate_a3(ds, pair) == doctest::Approx(brute).epsilon(1e-12));
}

TEST_CASE("unbiasedness under the null for the identity template") {
  // Sigma = I_10, T = P_10: all three traces equal 9
  const auto pair = flat_pair(10);
  const std::vector<hdrm::CovarianceTemplate> sigma = {hdrm::CovarianceTemplate::identity()};
  const std::vector<Eigen::Index> n = {30};

  std::vector<double> a1s, a2s, a3s;
  for (int rep = 0; rep < 3000; ++rep) {
    const auto ds = hdrm::sample_dataset(sigma, {}, n, 10, 500 + rep);
    const auto t = hdrm::estimate_single_traces(ds, pair);
    a1s.push_back(t.a1);
    a2s.push_back(t.a2);
    a3s.push_back(t.a3);
  }
  auto check = [](const std::vector<double>& v, double target) {
    double mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    const double se = std::sqrt(ss / (v.size() - 1.0) / v.size());
    CHECK(std::fabs(mean - target) <= 3.0 * se);
  };
  check(a1s, 9.0);
  check(a2s, 9.0);
  check(a3s, 9.0);
}
