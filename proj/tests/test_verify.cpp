#include <cmath>
#include <numbers>

#include "doctest.h"
#include "stfields/errors.hpp"
#include "stfields/suite.hpp"
#include "stfields/verify.hpp"

using namespace stfields;
constexpr double kPi = std::numbers::pi;

namespace {

TemporalCovariance scalar_const(double b) {
  return constant_model(Matrix::Constant(1, 1, b), TimeDomain::Continuous);
}

Matrix mat2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

FieldRealization scalar_realization(std::size_t id, std::vector<double> values) {
  FieldRealization r;
  r.replicate_id = id;
  r.n_sites = values.size();
  r.n_times = 1;
  r.m = 1;
  r.values = std::move(values);
  return r;
}

}  // namespace

TEST_CASE("empirical covariance of known data") {
  const std::vector<FieldRealization> reps{scalar_realization(0, {1.0, 2.0}), scalar_realization(1, {3.0, 1.0}),
                                           scalar_realization(2, {5.0, 6.0})};
  const auto est = empirical_covariance(reps, {{{0, 0}, {1, 0}}, {{0, 0}, {0, 0}}});
  REQUIRE(est.size() == 2);
  // x = 1,3,5 (mean 3), y = 2,1,6 (mean 3): sum (x-3)(y-3) = 2 + 0 + 6 = 8.
  CHECK(est[0].value(0, 0) == doctest::Approx(4.0));
  CHECK(est[1].value(0, 0) == doctest::Approx(4.0));
  CHECK(est[0].std_error(0, 0) > 0.0);
  const auto means = empirical_mean(reps);
  CHECK(means[0].value(0) == doctest::Approx(3.0));
  CHECK(means[1].value(0) == doctest::Approx(3.0));

  CHECK_THROWS_AS(empirical_covariance({reps[0]}, {{{0, 0}, {1, 0}}}), InvalidParameter);
  std::vector<FieldRealization> mixed = reps;
  mixed.push_back(scalar_realization(3, {1.0}));
  CHECK_THROWS_AS(empirical_covariance(mixed, {{{0, 0}, {0, 0}}}), InvalidParameter);
}

TEST_CASE("compare_analytic band") {
  CovarianceEstimate e{{{0, 0}, {0, 0}}, Matrix::Constant(1, 1, 1.1), Matrix::Constant(1, 1, 0.03)};
  CHECK(compare_analytic({e}, {Matrix::Constant(1, 1, 1.0)}).pass());
  e.std_error(0, 0) = 0.01;
  const VerificationReport r = compare_analytic({e}, {Matrix::Constant(1, 1, 1.0)});
  CHECK_FALSE(r.pass());
  CHECK(r.items()[0].threshold == doctest::Approx(0.04 + 1e-6));
  CHECK(r.items()[0].stderr_estimate.has_value());
}

TEST_CASE("standard errors are calibrated") {
  const CoefficientSequence seq(SphereDimension::finite(2), {scalar_const(0.6), scalar_const(0.4)});
  SimulationConfig cfg{seq, {SpherePoint::on_s2(0.0, 0.0), SpherePoint::on_s2(1.0, 1.0)}, {0.0}, 1, 0};
  const SpaceTimeCovariance C(seq);
  const int trials = 1000;
  const std::size_t R = 400;
  int covered = 0;
  for (int k = 0; k < trials; ++k) {
    cfg.seed = 1000 + static_cast<std::uint64_t>(k);
    const FieldSimulator sim(cfg);
    const auto est = empirical_covariance(sim.simulate_replicates(0, R), {{{0, 0}, {1, 0}}});
    if (compare_analytic(est, C, cfg.sites, cfg.times, kDefaultSigmaBand, 0.0).pass()) ++covered;
  }
  CHECK(covered >= 999);
}

TEST_CASE("space-time Gram matrix uses transposes for negative lags") {
  const TemporalCovariance B = ma1_model(mat2(1.0, 0.2, 0.2, 0.7), mat2(0.3, 0.4, -0.2, 0.1));
  const SpaceTimeCovariance C(CoefficientSequence(SphereDimension::finite(2), {B}));
  const std::vector<SpherePoint> sites{SpherePoint::on_s2(0.1, 0.0), SpherePoint::on_s2(1.2, 2.0)};
  const Matrix G = space_time_gram(C, sites, {0.0, 1.0});
  CHECK(G.rows() == 4);
  CHECK((G - G.transpose()).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((G.block(2, 0, 2, 2) - B(1.0)).norm() < 1e-15);
}

TEST_CASE("Gram PSD check: valid model passes, parallel equals serial") {
  const TemporalCovariance B = separable_model({CorrelationFamily::Exponential, 1.0}, mat2(0.5, 0.3, 0.3, 0.4));
  const SpaceTimeCovariance C = make_example4(B, 2);
  const VerificationReport par = gram_psd_check(C, 6, 3, 12, 99);
  const VerificationReport ser = gram_psd_check_serial(C, 6, 3, 12, 99);
  CHECK(par.pass());
  CHECK(par.to_json() == ser.to_json());
  CHECK(par.items().size() == 12);
  Rng rng = make_stream(99, 0);
  const GramTrial t = gram_trial(C, 6, 3, rng);
  CHECK(t.trace == doctest::Approx(18.0 * (1.0 / 0.5 + 1.0 / 0.6)).epsilon(1e-8));
  CHECK(t.min_eigenvalue > -1e-10 * t.trace);
}

TEST_CASE("Gram PSD check flags an invalid model") {
  // A negative level on S^2 is not a valid covariance.
  const SpaceTimeCovariance C(CoefficientSequence(SphereDimension::finite(2),
                                                  {scalar_const(0.2), linear_combination({{-1.0, scalar_const(1.0)}})}));
  const VerificationReport r = gram_psd_check(C, 8, 2, 5, 3);
  CHECK_FALSE(r.pass());
}

TEST_CASE("orthogonality check") {
  const SphereQuadrature q = product_quadrature_s2(16, 32);
  const SpherePoint x1 = SpherePoint::on_s2(0.3, 0.2);
  const SpherePoint x2 = SpherePoint::on_s2(2.0, -1.0);
  for (int i = 0; i <= 6; ++i) {
    for (int j = 0; j <= 6; ++j) CHECK(orthogonality_check(i, j, x1, x2, q).pass());
  }
  CHECK_THROWS_AS(orthogonality_check(20, 20, x1, x2, q), ConfigError);
}

TEST_CASE("series against closed form") {
  const SpaceTimeCovariance C = make_example5(scalar_const(0.9));
  const VerificationReport r = series_vs_closed_form(C, {{0.0, 0.0}, {1.0, 0.0}, {kPi, 0.0}}, 1e-6);
  CHECK(r.pass());
  CHECK(r.items().size() == 3);
  const SpaceTimeCovariance bare(CoefficientSequence(SphereDimension::finite(2), {scalar_const(1.0)}));
  CHECK_THROWS_AS(series_vs_closed_form(bare, {{0.0, 0.0}}, 1e-6), InvalidParameter);
}

TEST_CASE("suite example models") {
  for (auto e : {ExampleModel::Example1, ExampleModel::Example2, ExampleModel::Example3, ExampleModel::Example4,
                 ExampleModel::Example5}) {
    const SpaceTimeCovariance C = suite_example_model(e);
    CHECK(C.has_closed_form());
    CHECK(C.closed_form_tag() == e);
  }
  CHECK(infinite_sphere_truncation().max_abs_cos == doctest::Approx(std::cos(kPi / 12)));
}

TEST_CASE("fast criteria pass") {
  CHECK(criterion_polynomial_oracle().pass());
  CHECK(criterion_monomial_expansion().pass());
}
