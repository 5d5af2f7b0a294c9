#include <doctest.h>

#include "hdrm/linalg.hpp"
#include "hdrm/rng.hpp"

using hdrm::Matrix;
using hdrm::Vector;

namespace {

Matrix random_matrix(Eigen::Index rows, Eigen::Index cols, hdrm::Rng& rng) {
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.next_normal();
  return m;
}

Vector random_vector(Eigen::Index n, hdrm::Rng& rng) {
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = rng.next_normal();
  return v;
}

}  // namespace

TEST_CASE("kron identity case") {
  const Matrix k = hdrm::kron(Matrix::Identity(2, 2), Matrix::Identity(3, 3));
  CHECK((k - Matrix::Identity(6, 6)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("kron of scaled ones with identity") {
  const Matrix half_j = Matrix::Constant(2, 2, 0.5);
  const Matrix k = hdrm::kron(half_j, Matrix::Identity(2, 2));
  REQUIRE(k.rows() == 4);
  REQUIRE(k.cols() == 4);
  for (int bi = 0; bi < 2; ++bi) {
    for (int bj = 0; bj < 2; ++bj) {
      const Matrix block = k.block(2 * bi, 2 * bj, 2, 2);
      CHECK((block - 0.5 * Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);
    }
  }
}

TEST_CASE("kron of two centering matrices") {
  const Matrix p2 = hdrm::centering_matrix(2);
  const Matrix k = hdrm::kron(p2, p2);
  // hand product: all entries +-1/4, every row sums to zero
  for (Eigen::Index i = 0; i < 4; ++i) {
    CHECK(k.row(i).sum() == doctest::Approx(0.0).epsilon(1e-15));
    for (Eigen::Index j = 0; j < 4; ++j) {
      CHECK(std::fabs(k(i, j)) == doctest::Approx(0.25));
    }
  }
  CHECK(k(0, 0) == doctest::Approx(0.25));
  CHECK(k(0, 1) == doctest::Approx(-0.25));
  CHECK(k(0, 3) == doctest::Approx(0.25));
}

TEST_CASE("kron mixed product and associativity on random matrices") {
  hdrm::Rng rng(123);
  const Matrix a = random_matrix(2, 2, rng), b = random_matrix(3, 3, rng);
  const Matrix c = random_matrix(2, 2, rng), d = random_matrix(3, 3, rng);
  const Matrix lhs = hdrm::kron(a, b) * hdrm::kron(c, d);
  const Matrix rhs = hdrm::kron(Matrix(a * c), Matrix(b * d));
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);

  const Matrix assoc1 = hdrm::kron(hdrm::kron(a, b), c);
  const Matrix assoc2 = hdrm::kron(a, hdrm::kron(b, c));
  CHECK((assoc1 - assoc2).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("centering matrix essentials") {
  SUBCASE("d=1 degenerates to zero") {
    const Matrix p1 = hdrm::centering_matrix(1);
    CHECK(p1(0, 0) == 0.0);
    CHECK(hdrm::projector_rank(p1) == 0);
  }
  SUBCASE("d=2 is the analytic matrix") {
    const Matrix p2 = hdrm::centering_matrix(2);
    CHECK(p2(0, 0) == doctest::Approx(0.5));
    CHECK(p2(0, 1) == doctest::Approx(-0.5));
    CHECK(p2(1, 0) == doctest::Approx(-0.5));
    CHECK(p2(1, 1) == doctest::Approx(0.5));
  }
  SUBCASE("d=10 has trace 9, zero row sums, rank 9") {
    const Matrix p10 = hdrm::centering_matrix(10);
    CHECK(p10.trace() == doctest::Approx(9.0).epsilon(1e-14));
    CHECK(p10.rowwise().sum().cwiseAbs().maxCoeff() < 1e-14);
    CHECK(hdrm::projector_rank(p10) == 9);
  }
}

TEST_CASE("projection from a hypothesis matrix") {
  SUBCASE("contrast (1,-1) gives the centering matrix") {
    Matrix h(1, 2);
    h << 1.0, -1.0;
    const auto proj = hdrm::projection_from_h(h);
    CHECK_FALSE(proj.degenerate);
    CHECK(proj.rank == 1);
    CHECK((proj.matrix - hdrm::centering_matrix(2)).cwiseAbs().maxCoeff() < 1e-14);
  }
  SUBCASE("identity is its own projector") {
    const auto proj = hdrm::projection_from_h(Matrix::Identity(4, 4));
    CHECK((proj.matrix - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(proj.rank == 4);
  }
  SUBCASE("a projector maps to itself") {
    const Matrix p5 = hdrm::centering_matrix(5);
    const auto proj = hdrm::projection_from_h(p5);
    CHECK((proj.matrix - p5).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(proj.rank == 4);
  }
  SUBCASE("row scaling does not change the projector") {
    hdrm::Rng rng(7);
    const Matrix h = random_matrix(3, 6, rng);
    const auto base = hdrm::projection_from_h(h);
    for (double c : {1e-6, 3.0, -2.0, 1e6}) {
      const auto scaled = hdrm::projection_from_h(Matrix(c * h));
      CHECK((scaled.matrix - base.matrix).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
  SUBCASE("zero matrix flags degeneracy") {
    const auto proj = hdrm::projection_from_h(Matrix::Zero(2, 3));
    CHECK(proj.degenerate);
    CHECK(proj.rank == 0);
    CHECK(proj.matrix.cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("projector validation report") {
  const Matrix p5 = hdrm::centering_matrix(5);
  SUBCASE("valid projector") {
    const auto check = hdrm::validate_projection(p5, 1e-12);
    CHECK(check.symmetric);
    CHECK(check.idempotent);
    CHECK(check.max_asymmetry <= 1e-14);
    CHECK(check.max_idempotence <= 1e-14);
  }
  SUBCASE("scaling breaks idempotence") {
    const auto check = hdrm::validate_projection(Matrix(2.0 * p5));
    CHECK(check.symmetric);
    CHECK_FALSE(check.idempotent);
    // (2P)^2 - 2P = 2P, whose largest entry is 2 * 0.8
    CHECK(check.max_idempotence == doctest::Approx(1.6));
  }
  SUBCASE("upper triangular ones is not symmetric") {
    Matrix t = Matrix::Zero(3, 3);
    t.triangularView<Eigen::Upper>() = Matrix::Ones(3, 3).triangularView<Eigen::Upper>();
    const auto check = hdrm::validate_projection(t);
    CHECK_FALSE(check.symmetric);
  }
}

TEST_CASE("companion factor") {
  SUBCASE("identity") {
    const auto f = hdrm::companion(Matrix::Identity(4, 4));
    REQUIRE(f.l.rows() == 4);
    CHECK((f.l * f.l.transpose() - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((f.l.transpose() * f.l - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("rank-one scaled ones") {
    const int d = 6;
    const Matrix j = Matrix::Constant(d, d, 1.0 / d);
    const auto f = hdrm::companion(j);
    REQUIRE(f.l.rows() == 1);
    const double expect = 1.0 / std::sqrt(static_cast<double>(d));
    for (int t = 0; t < d; ++t) {
      CHECK(std::fabs(f.l(0, t)) == doctest::Approx(expect));
      CHECK(f.l(0, t) * f.l(0, 0) > 0.0);  // one consistent sign
    }
  }
  SUBCASE("quadratic forms agree for the centering matrix") {
    const Matrix p3 = hdrm::centering_matrix(3);
    const auto f = hdrm::companion(p3);
    REQUIRE(f.l.rows() == 2);
    CHECK((f.l * f.l.transpose() - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((f.l.transpose() * f.l - p3).cwiseAbs().maxCoeff() < 1e-12);
    hdrm::Rng rng(99);
    for (int k = 0; k < 100; ++k) {
      const Vector x = random_vector(3, rng);
      const double direct = x.dot(p3 * x);
      const double reduced = (f.l * x).squaredNorm();
      CHECK(direct == doctest::Approx(reduced).epsilon(1e-10));
    }
  }
  SUBCASE("zero projector is rejected") {
    CHECK_THROWS_AS((void)hdrm::companion(Matrix::Zero(3, 3)), std::invalid_argument);
  }
}

TEST_CASE("projector contraction and companion round trip on random projectors") {
  hdrm::Rng rng(2024);
  for (int rep = 0; rep < 20; ++rep) {
    const Eigen::Index m = 4 + static_cast<Eigen::Index>(rng.next_below(5));
    const Eigen::Index k = 1 + static_cast<Eigen::Index>(rng.next_below(static_cast<std::uint64_t>(m)));
    const auto proj = hdrm::projection_from_h(random_matrix(k, m, rng));
    const Matrix& t = proj.matrix;

    const Vector x = random_vector(m, rng);
    const double qf = x.dot(t * x);
    CHECK(qf >= -1e-12);
    CHECK(qf <= x.squaredNorm() * (1.0 + 1e-12));

    if (proj.rank > 0) {
      const auto f = hdrm::companion(t);
      CHECK(f.l.rows() == proj.rank);
      CHECK((f.l.transpose() * f.l - t).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("kronecker projector rank product and factored companion") {
  const Matrix tw = hdrm::centering_matrix(3);
  const Matrix ts = hdrm::centering_matrix(4);
  const Matrix t = hdrm::kron(tw, ts);
  CHECK(hdrm::projector_rank(t) == hdrm::projector_rank(tw) * hdrm::projector_rank(ts));

  const Matrix lw = hdrm::companion(tw).l;
  const Matrix ls = hdrm::companion(ts).l;
  const Matrix l = hdrm::kron(lw, ls);
  CHECK((l * l.transpose() - Matrix::Identity(l.rows(), l.rows())).cwiseAbs().maxCoeff() <
        1e-12);
  CHECK((l.transpose() * l - t).cwiseAbs().maxCoeff() < 1e-12);
}
