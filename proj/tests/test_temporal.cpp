#include <cmath>

#include "doctest.h"
#include "stfields/errors.hpp"
#include "stfields/temporal.hpp"

using namespace stfields;

namespace {

Matrix mat2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

TEST_CASE("scalar correlations equal one at zero") {
  for (auto f : {CorrelationFamily::Exponential, CorrelationFamily::Gaussian, CorrelationFamily::CosineDamped,
                 CorrelationFamily::WhiteNoise, CorrelationFamily::Constant}) {
    const ScalarCorrelation rho{f, 1.5, 0.7};
    CHECK(rho(0.0) == doctest::Approx(1.0));
    CHECK(rho(1.3) == doctest::Approx(rho(-1.3)));
    CHECK(std::abs(rho(2.0)) <= 1.0);
  }
  CHECK(ScalarCorrelation{CorrelationFamily::Exponential, 2.0}(1.0) == doctest::Approx(std::exp(-0.5)));
  CHECK(ScalarCorrelation{CorrelationFamily::WhiteNoise}(1.0) == 0.0);
}

TEST_CASE("separable model") {
  const Matrix A = mat2(1.0, 0.3, 0.3, 0.5);
  const TemporalCovariance B = separable_model({CorrelationFamily::Exponential, 1.0}, A);
  CHECK(B.m() == 2);
  CHECK(B.domain() == TimeDomain::Continuous);
  CHECK((B(0.0) - A).norm() == doctest::Approx(0.0));
  CHECK((B(1.0) - std::exp(-1.0) * A).norm() < 1e-15);
  CHECK(B.max_abs_at_zero() == doctest::Approx(1.0));
  CHECK_THROWS_AS(separable_model({}, mat2(1.0, 0.3, 0.2, 1.0)), ModelInvalid);
  CHECK_THROWS_AS(separable_model({}, mat2(1.0, 2.0, 2.0, 1.0)), ModelInvalid);
  CHECK_THROWS_AS(separable_model({CorrelationFamily::Exponential, 0.0}, A), InvalidParameter);
}

TEST_CASE("discrete models reject non-integer lags") {
  const TemporalCovariance B =
      separable_model({CorrelationFamily::Exponential, 1.0}, Matrix::Identity(1, 1), TimeDomain::Discrete);
  CHECK_NOTHROW(B(3.0));
  CHECK_THROWS_AS(B(0.5), DomainError);
}

TEST_CASE("white noise with variance 3") {
  const TemporalCovariance B =
      separable_model({CorrelationFamily::WhiteNoise}, Matrix::Constant(1, 1, 3.0), TimeDomain::Discrete);
  CHECK(B(0.0)(0, 0) == 3.0);
  CHECK(B(1.0)(0, 0) == 0.0);
  CHECK(B(-4.0)(0, 0) == 0.0);
  const StationarityAnalysis s = analyze_stationary_covariance(B, default_lag_grid());
  CHECK(s.min_eigenvalue == doctest::Approx(3.0));
  CHECK(s.trace == doctest::Approx(27.0));
}

TEST_CASE("MA(1) lags and transpose symmetry") {
  const Matrix sigma = mat2(1.0, 0.2, 0.2, 0.5);
  const Matrix phi = mat2(0.4, 0.1, -0.3, 0.2);
  const TemporalCovariance B = ma1_model(sigma, phi);
  CHECK((B(0.0) - (sigma + phi * sigma * phi.transpose())).norm() < 1e-15);
  CHECK((B(1.0) - sigma * phi.transpose()).norm() < 1e-15);
  CHECK((B(-1.0) - B(1.0).transpose()).norm() < 1e-15);
  CHECK(B(2.0).norm() == 0.0);
  const StationarityAnalysis s = analyze_stationary_covariance(B, default_lag_grid());
  CHECK(s.min_eigenvalue > -1e-12);
  CHECK(s.symmetry_residual < 1e-15);

  const TemporalCovariance scalar = ma1_model(Matrix::Identity(1, 1), Matrix::Constant(1, 1, 0.5));
  CHECK(0.5 * (scalar(1.0)(0, 0) + scalar(-1.0)(0, 0)) == doctest::Approx(0.5));
}

TEST_CASE("Hadamard combinations") {
  const Matrix A = mat2(0.8, 0.5, 0.5, 0.6);
  const TemporalCovariance B = separable_model({CorrelationFamily::Gaussian, 1.0}, A);
  const TemporalCovariance sq = hadamard_power_model(B, 2, 3.0);
  CHECK(sq(0.7)(0, 1) == doctest::Approx(3.0 * B(0.7)(0, 1) * B(0.7)(0, 1)));
  const TemporalCovariance prod = hadamard_product(B, B);
  CHECK(prod(0.4)(1, 1) == doctest::Approx(B(0.4)(1, 1) * B(0.4)(1, 1)));
  const TemporalCovariance lin = linear_combination({{2.0, B}, {-1.0, sq}});
  CHECK(lin(0.2)(0, 0) == doctest::Approx(2.0 * B(0.2)(0, 0) - sq(0.2)(0, 0)));
  CHECK_THROWS_AS(hadamard_power_model(B, 0), InvalidParameter);
  CHECK(zero_model(2, TimeDomain::Continuous)(1.0).norm() == 0.0);
  CHECK((constant_model(A, TimeDomain::Continuous)(9.0) - A).norm() == 0.0);
}

TEST_CASE("tabulated model and validity check") {
  const TemporalCovariance good = tabulated_model({Matrix::Constant(1, 1, 1.0), Matrix::Constant(1, 1, 0.4)});
  CHECK(good(-1.0)(0, 0) == 0.4);
  CHECK(good(5.0)(0, 0) == 0.0);
  CHECK(check_stationary_covariance(good, default_lag_grid()).pass());

  const TemporalCovariance bad = tabulated_model({Matrix::Constant(1, 1, 1.0), Matrix::Constant(1, 1, 1.5)});
  const VerificationReport r = check_stationary_covariance(bad, default_lag_grid());
  CHECK_FALSE(r.pass());
  CHECK(analyze_stationary_covariance(bad, default_lag_grid()).min_eigenvalue < 0.0);
}

TEST_CASE("block Gram layout") {
  const TemporalCovariance B = ma1_model(mat2(1.0, 0.0, 0.0, 1.0), mat2(0.0, 1.0, 0.0, 0.0));
  const Matrix G = block_gram(B, {0.0, 1.0});
  CHECK(G.rows() == 4);
  CHECK((G.block(0, 2, 2, 2) - B(-1.0)).norm() == 0.0);
  CHECK((G.block(2, 0, 2, 2) - B(1.0)).norm() == 0.0);
}

TEST_CASE("entry bound and eigenvalue helper") {
  const TemporalCovariance B =
      separable_model({CorrelationFamily::Exponential, 1.0}, mat2(0.9, 0.2, 0.2, 0.5));
  CHECK(entries_bounded_below_one(B, default_lag_grid()));
  const TemporalCovariance C = separable_model({}, mat2(1.0, 0.2, 0.2, 0.5));
  CHECK_FALSE(entries_bounded_below_one(C, default_lag_grid()));
  CHECK(min_symmetric_eigenvalue(mat2(2.0, 1.0, -1.0, 3.0)) == doctest::Approx(2.0));
}
