#include <cmath>
#include <numbers>

#include "doctest.h"
#include "stfields/errors.hpp"
#include "stfields/gegenbauer.hpp"
#include "stfields/simulate.hpp"
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

SimulationConfig small_config() {
  const TemporalCovariance B = separable_model({CorrelationFamily::Exponential, 1.0}, mat2(0.5, 0.3, 0.3, 0.4));
  SimulationConfig cfg{make_example4(B, 2).coefficients(), {}, {0.0, 0.5, 1.5}, 8, 42};
  cfg.sites = {SpherePoint::on_s2(0.0, 0.0), SpherePoint::on_s2(1.0, 0.5), SpherePoint::on_s2(2.0, 3.0)};
  return cfg;
}

}  // namespace

TEST_CASE("process sampler reproduces its covariance") {
  const TemporalCovariance B = separable_model({CorrelationFamily::Exponential, 1.0}, mat2(1.0, 0.4, 0.4, 0.5));
  const ProcessSampler s(B, 3.0, {0.0, 0.5, 2.0});
  CHECK(s.target_covariance().rows() == 6);
  CHECK(s.reconstruction_residual() < 1e-8);
  Rng rng = make_stream(1, 0);
  const Matrix draw = s.draw(rng);
  CHECK(draw.rows() == 3);
  CHECK(draw.cols() == 2);

  const ProcessSampler zero(zero_model(2, TimeDomain::Continuous), 1.0, {0.0, 1.0});
  CHECK(zero.draw(rng).norm() == 0.0);

  const TemporalCovariance bad = tabulated_model({Matrix::Constant(1, 1, 1.0), Matrix::Constant(1, 1, 1.5)});
  CHECK_THROWS_AS(ProcessSampler(bad, 1.0, {0.0, 1.0, 2.0}), ModelInvalid);
}

TEST_CASE("white noise process has variance 3") {
  const TemporalCovariance B = separable_model({CorrelationFamily::WhiteNoise}, Matrix::Constant(1, 1, 3.0),
                                               TimeDomain::Discrete);
  Rng rng = make_stream(2, 0);
  const int n = 20000;
  double sum = 0.0, sq = 0.0, lag = 0.0;
  for (int i = 0; i < n; ++i) {
    const Matrix z = sample_stationary_vector_process(B, 1.0, {0.0, 1.0}, rng);
    sum += z(0, 0);
    sq += z(0, 0) * z(0, 0);
    lag += z(0, 0) * z(1, 0);
  }
  CHECK(std::abs(sum / n) < 4.0 * std::sqrt(3.0 / n));
  CHECK(std::abs(sq / n - 3.0) < 4.0 * 3.0 * std::sqrt(2.0 / n));
  CHECK(std::abs(lag / n) < 4.0 * 3.0 / std::sqrt(n));
}

TEST_CASE("degree one elementary field on S^2") {
  const SpherePoint U = SpherePoint::on_s2(0.4, 1.0);
  const SpherePoint x = SpherePoint::on_s2(1.3, -0.2);
  CHECK(elementary_field_lemma2(2, 1, U, x) == doctest::Approx(std::sqrt(3.0) * x.dot(U)));
}

TEST_CASE("elementary and cos-power fields by Monte Carlo") {
  const SpherePoint x1 = SpherePoint::on_s2(0.5, 0.0);
  const SpherePoint x2 = SpherePoint::on_s2(1.6, 1.1);
  const double c = x1.dot(x2);
  const int draws = 100000;
  for (int n : {1, 2, 3}) {
    for (bool cospow : {false, true}) {
      CAPTURE(n);
      CAPTURE(cospow);
      Rng rng = make_stream(77, static_cast<std::uint64_t>(n * 2 + cospow));
      double mean = 0.0, prod = 0.0, prod_sq = 0.0;
      for (int i = 0; i < draws; ++i) {
        const SpherePoint U = sample_uniform(2, rng);
        const double a = cospow ? cospow_field_lemma3(2, n, U, x1) : elementary_field_lemma2(2, n, U, x1);
        const double b = cospow ? cospow_field_lemma3(2, n, U, x2) : elementary_field_lemma2(2, n, U, x2);
        mean += a / draws;
        prod += a * b / draws;
        prod_sq += a * a * b * b / draws;
      }
      const double se = std::sqrt((prod_sq - prod * prod) / draws);
      const double want = cospow ? std::pow(c, n) : gegenbauer(0.5, n, c);
      CHECK(std::abs(prod - want) < 4.0 * se + 1e-6);
      if (!cospow) CHECK(std::abs(mean) < 0.05);
    }
  }
}

TEST_CASE("replicates are reproducible and scheduling independent") {
  const FieldSimulator sim(small_config());
  const auto par = sim.simulate_replicates(0, 8);
  const auto ser = sim.simulate_replicates_serial(0, 8);
  REQUIRE(par.size() == 8);
  for (std::size_t r = 0; r < 8; ++r) {
    CHECK(par[r].replicate_id == r);
    CHECK(par[r].values == ser[r].values);
  }
  const FieldRealization again = sim.simulate(5);
  CHECK(again.values == par[5].values);
  CHECK(sim.simulate_replicates(5, 1)[0].values == par[5].values);
  CHECK(par[0].values != par[1].values);
  CHECK(par[0].values.size() == 3 * 3 * 2);
}

TEST_CASE("field evaluation matches the stored realization and level sum") {
  const FieldSimulator sim(small_config());
  Rng rng = make_stream(3, 3);
  const SeriesDraw draw = sim.draw_series(rng);
  const FieldRealization real = sim.realize(draw, 0);
  for (std::size_t s = 0; s < 3; ++s) {
    for (std::size_t t = 0; t < 3; ++t) {
      const Vector z = sim.evaluate(draw, sim.config().sites[s], t);
      Vector sum = Vector::Zero(2);
      for (int n = 0; n <= sim.truncation(); ++n) sum += sim.level_term(draw, n, sim.config().sites[s], t);
      for (int k = 0; k < 2; ++k) {
        CHECK(z(k) == doctest::Approx(real.at(s, t, k)).epsilon(1e-12));
        CHECK(z(k) == doctest::Approx(sum(k)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("circle simulator") {
  const TemporalCovariance B = separable_model({CorrelationFamily::Exponential, 1.0}, mat2(0.8, 0.4, 0.4, 0.6));
  SimulationConfig cfg{make_example5(B).coefficients(), {}, {0.0, 1.0}, 4000, 8};
  cfg.sites = {SpherePoint::on_circle(0.0), SpherePoint::on_circle(2.0)};
  const FieldSimulator sim(cfg);
  CHECK(sim.d() == 1);
  const auto reps = sim.simulate_replicates(0, cfg.replicates);
  const auto est = empirical_covariance(reps, {{{0, 0}, {1, 0}}, {{0, 1}, {1, 0}}});
  const VerificationReport r = compare_analytic(est, make_example5(B), cfg.sites, cfg.times);
  CHECK(r.pass());
  Rng rng = make_stream(1, 1);
  CHECK(simulate_circle_theorem5(cfg, rng).values.size() == 2 * 2 * 2);
}

TEST_CASE("one-shot simulation matches the simulator stream") {
  SimulationConfig cfg = small_config();
  Rng rng = make_stream(cfg.seed, 0);
  const FieldRealization a = simulate_theorem4(cfg, rng);
  CHECK(a.values == FieldSimulator(cfg).simulate(0).values);
}

TEST_CASE("simulator configuration errors") {
  SimulationConfig cfg = small_config();
  cfg.sites.push_back(SpherePoint::on_circle(0.3));
  CHECK_THROWS_AS(FieldSimulator{cfg}, InvalidParameter);

  cfg = small_config();
  cfg.times.clear();
  CHECK_THROWS_AS(FieldSimulator{cfg}, InvalidParameter);

  cfg = small_config();
  cfg.replicates = 0;
  CHECK_THROWS_AS(FieldSimulator{cfg}, InvalidParameter);

  TruncationOptions loose;
  loose.fixed_degree = 2;
  cfg = small_config();
  cfg.coefficients = make_example4(scalar_const(0.9), 2, loose).coefficients();
  cfg.sites = {SpherePoint::on_s2(0.0, 0.0)};
  CHECK_THROWS_AS(FieldSimulator{cfg}, TruncationError);

  cfg.coefficients = CoefficientSequence(SphereDimension::infinite(), {scalar_const(1.0)});
  CHECK_THROWS_AS(FieldSimulator{cfg}, InvalidParameter);

  const TemporalCovariance disc = ma1_model(Matrix::Identity(1, 1), Matrix::Constant(1, 1, 0.3));
  cfg.coefficients = CoefficientSequence(SphereDimension::finite(2), {disc});
  cfg.times = {0.0, 0.5};
  CHECK_THROWS(FieldSimulator{cfg});
}

TEST_CASE("level extraction recovers the level processes") {
  const CoefficientSequence seq(SphereDimension::finite(2),
                                {scalar_const(1.0), scalar_const(0.5), scalar_const(0.25), scalar_const(0.125)});
  SimulationConfig cfg{seq, {SpherePoint::on_s2(0.0, 0.0)}, {0.0}, 1, 4};
  const FieldSimulator sim(cfg);
  Rng rng = make_stream(4, 0);
  const SeriesDraw draw = sim.draw_series(rng);
  const SphereQuadrature quad = product_quadrature_s2(8, 16);
  for (int n = 0; n <= 5; ++n) {
    const Vector v = extract_level_coefficients(
        [&](const SpherePoint& x) { return sim.evaluate(draw, x, 0); }, n, *draw.U, quad, 3);
    const double want = n <= 3 ? draw.levels[n](0, 0) : 0.0;
    CHECK(std::abs(v(0) - want) < 1e-12);
  }
  CHECK_THROWS_AS(extract_level_coefficients([&](const SpherePoint& x) { return sim.evaluate(draw, x, 0); }, 14,
                                             *draw.U, quad, 3),
                  ConfigError);
}

TEST_CASE("thread control") {
  set_num_threads(1);
  CHECK(max_threads() >= 1);
}
