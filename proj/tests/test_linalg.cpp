#include <doctest.h>

#include <cmath>
#include <random>

#include "ricsel/linalg.hpp"

using namespace ricsel;

namespace {

Dataset make_123_ones() {
  Vector y(3);
  y << 1, 2, 3;
  Matrix X = Matrix::Ones(3, 1);
  return Dataset(y, X);
}

}  // namespace

TEST_CASE("build_correlation basics") {
  SUBCASE("ar1 with theta 0 collapses to identity") {
    const Matrix W = build_correlation(CorrelationSpec::ar1(0.0), 3);
    CHECK((W - Matrix::Identity(3, 3)).norm() == doctest::Approx(0.0));
  }
  SUBCASE("ar1 log-determinant matches the (1-theta^2)^(n-1) identity") {
    const Matrix W = build_correlation(CorrelationSpec::ar1(0.5), 3);
    const SpdFactor f = spd_factorize(W);
    CHECK(f.log_det() == doctest::Approx(2.0 * std::log(0.75)).epsilon(1e-12));
  }
  SUBCASE("exchangeable at the singular boundary is rejected") {
    CHECK_THROWS_AS(build_correlation(CorrelationSpec::exchangeable(1.0), 4),
                    invalid_correlation_error);
  }
  SUBCASE("exchangeable below the lower bound is rejected") {
    CHECK_THROWS_AS(build_correlation(CorrelationSpec::exchangeable(-0.5), 4),
                    invalid_correlation_error);
  }
  SUBCASE("n < 1 is a dimension error") {
    CHECK_THROWS_AS(build_correlation(CorrelationSpec::identity(), 0),
                    dimension_error);
  }
}

TEST_CASE("spd_factorize basics") {
  SUBCASE("identity has log-determinant 0") {
    CHECK(spd_factorize(Matrix::Identity(3, 3)).log_det() == doctest::Approx(0.0));
  }
  SUBCASE("diagonal case") {
    Matrix M = Matrix::Zero(2, 2);
    M(0, 0) = 4.0;
    M(1, 1) = 9.0;
    CHECK(spd_factorize(M).log_det() ==
          doctest::Approx(std::log(36.0)).epsilon(1e-12));
  }
  SUBCASE("indefinite matrix is rejected") {
    Matrix M(2, 2);
    M << 1, 2, 2, 1;
    CHECK_THROWS_AS(spd_factorize(M), not_spd_error);
  }
  SUBCASE("asymmetric input is rejected") {
    Matrix M(2, 2);
    M << 1, 0.5, 0.2, 1;
    CHECK_THROWS_AS(spd_factorize(M), dimension_error);
  }
  SUBCASE("solve inverts the matrix") {
    Matrix M(3, 3);
    M << 4, 1, 0, 1, 3, 1, 0, 1, 5;
    const SpdFactor f = spd_factorize(M);
    Vector b(3);
    b << 1, 2, 3;
    CHECK((M * f.solve(b) - b).norm() == doctest::Approx(0.0).epsilon(1e-10));
  }
}

TEST_CASE("correlation factors are SPD across the validity region") {
  std::mt19937 gen(42);
  std::uniform_int_distribution<int> n_dist(2, 50);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = n_dist(gen);
    {
      const double theta = -0.999 + 1.998 * u(gen);
      const Matrix W = build_correlation(CorrelationSpec::ar1(theta), n);
      const SpdFactor f = spd_factorize(W);
      CHECK(std::abs(f.log_det() - (n - 1) * std::log(1.0 - theta * theta)) < 1e-9);
      // reconstruction
      const Matrix L = f.lower();
      CHECK((L * L.transpose() - W).norm() / W.norm() < 1e-8);
    }
    {
      const double lo = -1.0 / static_cast<double>(n - 1);
      const double theta = lo + (1.0 - lo) * 0.999 * u(gen) + 1e-3 * (1.0 - lo);
      if (theta < 1.0) {
        const Matrix W = build_correlation(CorrelationSpec::exchangeable(theta), n);
        const SpdFactor f = spd_factorize(W);
        const Matrix L = f.lower();
        CHECK((L * L.transpose() - W).norm() / W.norm() < 1e-8);
      }
    }
  }
}

TEST_CASE("projector_pieces") {
  const Dataset data = make_123_ones();
  const SpdFactor w = SpdFactor::identity(3);

  SUBCASE("intercept-only model gives the centered sum of squares") {
    const ProjectorPieces pp = projector_pieces(data, CandidateModel({1}), w);
    CHECK(pp.q == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(pp.logdet_xx == doctest::Approx(std::log(3.0)).epsilon(1e-12));
    CHECK(pp.logdet_xwx == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  }
  SUBCASE("empty model gives q = y'y and zero log-determinants") {
    const ProjectorPieces pp = projector_pieces(data, CandidateModel(), w);
    CHECK(pp.q == doctest::Approx(14.0).epsilon(1e-12));
    CHECK(pp.logdet_xwx == 0.0);
    CHECK(pp.logdet_xx == 0.0);
  }
  SUBCASE("exactly collinear columns raise not_spd_error naming the model") {
    Matrix X(3, 2);
    X.col(0).setOnes();
    X.col(1).setOnes();
    const Dataset dup(data.y, X);
    try {
      projector_pieces(dup, CandidateModel({1, 2}), w);
      FAIL("expected not_spd_error");
    } catch (const not_spd_error& e) {
      CHECK(std::string(e.what()).find("{1,2}") != std::string::npos);
    }
  }
}

TEST_CASE("q depends only on the column space") {
  std::mt19937 gen(7);
  std::normal_distribution<double> z;
  const Index n = 20;
  const int k = 3;
  Matrix X(n, k);
  Vector y(n);
  for (Index i = 0; i < n; ++i) {
    y[i] = z(gen);
    for (int j = 0; j < k; ++j) X(i, j) = z(gen);
  }
  const Dataset data(y, X);
  const CandidateModel model({1, 2, 3});
  const SpdFactor w = spd_factorize(build_correlation(CorrelationSpec::ar1(0.4), n));
  const double q0 = projector_pieces(data, model, w).q;

  for (int trial = 0; trial < 20; ++trial) {
    Matrix T(k, k);
    do {
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) T(a, b) = z(gen);
    } while (std::abs(T.determinant()) < 1e-3);
    const Dataset reparam(y, X * T);
    const double q1 = projector_pieces(reparam, model, w).q;
    CHECK(std::abs(q1 - q0) / std::abs(q0) < 1e-8);
  }
}

TEST_CASE("q vanishes when y lies in the span of the active design") {
  std::mt19937 gen(11);
  std::normal_distribution<double> z;
  const Index n = 12;
  Matrix X(n, 2);
  for (Index i = 0; i < n; ++i) {
    X(i, 0) = z(gen);
    X(i, 1) = z(gen);
  }
  const Vector y = 2.0 * X.col(0) - 0.5 * X.col(1);
  const Dataset data(y, X);
  const SpdFactor w = SpdFactor::identity(n);
  const double q = projector_pieces(data, CandidateModel({1, 2}), w).q;
  CHECK(std::abs(q) / y.squaredNorm() < 1e-9);
}
