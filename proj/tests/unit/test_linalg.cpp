#include <doctest.h>

#include "voytop/errors.hpp"
#include "voytop/linalg.hpp"
#include "voytop/rng.hpp"

using namespace voytop;
using linalg::sym_eigen_topk;
using linalg::truncated_svd;

namespace {

Eigen::MatrixXd seeded_random(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.next_double() - 0.5;
  return m;
}

}  // namespace

TEST_CASE("truncated_svd of a diagonal matrix") {
  Eigen::MatrixXd a(2, 2);
  a << 3, 0, 0, 2;
  auto svd = truncated_svd(a, 2);
  CHECK(svd.S(0) == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(svd.S(1) == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("truncated_svd of the identity") {
  auto svd = truncated_svd(Eigen::MatrixXd::Identity(3, 3), 3);
  for (int i = 0; i < 3; ++i) CHECK(svd.S(i) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("truncated_svd full-rank reconstruction (SVD oracle by multiplication)") {
  auto a = seeded_random(5, 4, 11);
  auto svd = truncated_svd(a, 4);
  const double err = (a - svd.U * svd.S.asDiagonal() * svd.V.transpose()).norm();
  CHECK(err <= 1e-8);
}

TEST_CASE("truncated_svd argument errors") {
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(3, 3);
  CHECK_THROWS_AS(truncated_svd(a, 0), ArgumentError);
  CHECK_THROWS_AS(truncated_svd(a, 4), ArgumentError);
}

TEST_CASE("svd orthonormality and ordering over seeded instances") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto a = seeded_random(8, 6, 100 + seed);
    const int k = 6;
    auto svd = truncated_svd(a, k);
    CHECK((svd.U.transpose() * svd.U - Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff() <=
          1e-8);
    CHECK((svd.V.transpose() * svd.V - Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff() <=
          1e-8);
    for (int i = 0; i + 1 < k; ++i) CHECK(svd.S(i) >= svd.S(i + 1));
    CHECK(svd.S(k - 1) >= 0.0);
  }
}

TEST_CASE("singular values equal sqrt of Gram eigenvalues") {
  auto a = seeded_random(7, 5, 21);
  auto svd = truncated_svd(a, 5);
  Eigen::MatrixXd gram = a.transpose() * a;
  auto eig = sym_eigen_topk(0.5 * (gram + gram.transpose()), 5);
  for (int i = 0; i < 5; ++i)
    CHECK(svd.S(i) == doctest::Approx(std::sqrt(std::max(eig.values(i), 0.0))).epsilon(1e-8));
}

TEST_CASE("svd sign convention: largest-magnitude V entry positive") {
  auto a = seeded_random(6, 4, 33);
  auto svd = truncated_svd(a, 4);
  for (int i = 0; i < 4; ++i) {
    Eigen::Index at = 0;
    svd.V.col(i).cwiseAbs().maxCoeff(&at);
    CHECK(svd.V(at, i) > 0.0);
  }
}

TEST_CASE("sym_eigen_topk analytic 2x2 cases") {
  Eigen::MatrixXd d(2, 2);
  d << 4, 0, 0, 1;
  auto eig = sym_eigen_topk(d, 2);
  CHECK(eig.values(0) == doctest::Approx(4.0).epsilon(1e-10));
  CHECK(eig.values(1) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(eig.vectors(0, 0)) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(std::abs(eig.vectors(1, 1)) == doctest::Approx(1.0).epsilon(1e-8));

  Eigen::MatrixXd a(2, 2);
  a << 2, 1, 1, 2;
  auto eig2 = sym_eigen_topk(a, 2);
  CHECK(eig2.values(0) == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(eig2.values(1) == doctest::Approx(1.0).epsilon(1e-10));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(eig2.vectors(0, 0) * eig2.vectors(1, 0)) ==
        doctest::Approx(inv_sqrt2 * inv_sqrt2).epsilon(1e-8));  // (1,1)/sqrt2 up to sign
  CHECK(eig2.vectors(0, 1) * eig2.vectors(1, 1) < 0.0);         // (1,-1)/sqrt2 up to sign
}

TEST_CASE("sym_eigen_topk residuals on seeded PSD matrices") {
  auto b = seeded_random(8, 8, 55);
  Eigen::MatrixXd a = b * b.transpose();  // PSD
  a = 0.5 * (a + a.transpose());
  auto eig = sym_eigen_topk(a, 3);
  for (int i = 0; i < 3; ++i)
    CHECK((a * eig.vectors.col(i) - eig.values(i) * eig.vectors.col(i)).norm() <= 1e-8);
}

TEST_CASE("sym_eigen_topk rejects asymmetric input") {
  Eigen::MatrixXd a(2, 2);
  a << 1, 2, 3, 4;
  CHECK_THROWS_AS(sym_eigen_topk(a, 1), ArgumentError);
}
