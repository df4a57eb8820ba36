#include "stfields/suite.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "stfields/errors.hpp"
#include "stfields/gegenbauer.hpp"
#include "stfields/simulate.hpp"
#include "stfields/sphere.hpp"
#include "stfields/verify.hpp"

namespace stfields {

namespace {

constexpr double kPi = std::numbers::pi;

// Stream ids are offset per criterion so no two criteria share draws.
constexpr std::uint64_t kStreamStride = 1ULL << 40;

std::uint64_t criterion_seed(const SuiteOptions& opts, int criterion) {
  return opts.seed + static_cast<std::uint64_t>(criterion) * kStreamStride;
}

Matrix suite_a() {
  Matrix A(2, 2);
  A << 0.5, 0.3, 0.3, 0.4;
  return A;
}

TemporalCovariance exp_model(const Matrix& A, double tau = 1.0) {
  return separable_model(ScalarCorrelation{CorrelationFamily::Exponential, tau, 0.0}, A);
}

std::vector<double> cosine_grid() {
  std::vector<double> x;
  for (int k = 0; k <= 40; ++k) x.push_back(-1.0 + k / 20.0);
  return x;
}

// Random 2x2 correlation-like matrix with diagonal in [lo, hi].
Matrix random_a(Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> diag(lo, hi);
  std::uniform_real_distribution<double> corr(-0.9, 0.9);
  const double a11 = diag(rng);
  const double a22 = diag(rng);
  const double a12 = corr(rng) * std::sqrt(a11 * a22);
  Matrix A(2, 2);
  A << a11, a12, a12, a22;
  return A;
}

SpaceTimeCovariance example2_from_scales(const TemporalCovariance& B, double c0, double c1,
                                         double c2, const TruncationOptions& opts) {
  // B2 = c2 B, -B1 - pi B2 = c1 B, B0 + pi/2 B1 + pi^2/4 B2 = c0 B.
  const TemporalCovariance B2 = linear_combination({{c2, B}});
  const TemporalCovariance B1 = linear_combination({{-(c1 + kPi * c2), B}});
  const TemporalCovariance B0 =
      linear_combination({{c0 + 0.5 * kPi * (c1 + kPi * c2) - 0.25 * kPi * kPi * c2, B}});
  return make_example2(B0, B1, B2, opts);
}

// Six (theta, lag) points: site 0 against sites 0, 1, 2 at lags 0 and 1.
std::vector<CovariancePair> design_pairs() {
  std::vector<CovariancePair> pairs;
  for (std::size_t lag = 0; lag < 2; ++lag) {
    for (std::size_t s = 0; s < 3; ++s) pairs.push_back({{0, lag}, {s, 0}});
  }
  return pairs;
}

// Per entry, at most one of the six design points may leave the band.
VerificationReport design_verdict(const std::string& name, const VerificationReport& detail, int m) {
  VerificationReport report(name);
  const std::size_t n_points = detail.items().size() / static_cast<std::size_t>(m * m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      double outside = 0.0;
      for (std::size_t p = 0; p < n_points; ++p) {
        if (!detail.items()[p * m * m + i * m + j].pass) outside += 1.0;
      }
      report.add("entry [" + std::to_string(i) + "," + std::to_string(j) + "] points outside band",
                 outside, 1.0);
    }
  }
  return report;
}

VerificationReport simulator_design(const std::string& name, const SpaceTimeCovariance& C,
                                    std::vector<SpherePoint> sites, const SuiteOptions& opts,
                                    int criterion) {
  SimulationConfig config{C.coefficients(), std::move(sites), {0.0, 1.0}, opts.replicates,
                          criterion_seed(opts, criterion)};
  const FieldSimulator sim(config);
  const std::vector<FieldRealization> reps = sim.simulate_replicates(0, opts.replicates);
  const VerificationReport detail =
      compare_analytic(empirical_covariance(reps, design_pairs()), C, config.sites, config.times);
  VerificationReport report = design_verdict(name, detail, C.m());
  report.metadata().seed = config.seed;
  report.metadata().replicates = opts.replicates;
  report.metadata().truncation = C.coefficients().truncation();
  return report;
}

}  // namespace

TruncationOptions infinite_sphere_truncation() {
  TruncationOptions opts;
  opts.tolerance = 1e-7;
  opts.max_degree = 5000;
  opts.max_abs_cos = std::cos(kPi / 12.0);
  return opts;
}

SpaceTimeCovariance suite_example_model(ExampleModel model) {
  const TemporalCovariance B = exp_model(suite_a());
  switch (model) {
    case ExampleModel::Example1:
      return make_example1(B);
    case ExampleModel::Example2:
      return example2_from_scales(B, 1.0, 0.3, 0.2, infinite_sphere_truncation());
    case ExampleModel::Example3:
      return make_example3(B, infinite_sphere_truncation());
    case ExampleModel::Example4:
      return make_example4(B, 2);
    case ExampleModel::Example5:
      return make_example5(B);
  }
  throw InvalidParameter("unknown example model");
}

VerificationReport criterion_polynomial_oracle() {
  VerificationReport report("polynomial_oracle");
  constexpr int kMaxDegree = 20;
  for (double lambda : {0.5, 1.0, 1.5, 2.5}) {
    double worst = 0.0;
    for (double x : cosine_grid()) {
      const std::vector<double> oracle = generating_function_coeffs(lambda, x, kMaxDegree);
      const std::vector<double> sweep = gegenbauer_all(lambda, kMaxDegree, x);
      for (int n = 0; n <= kMaxDegree; ++n) {
        worst = std::max(worst, std::abs(gegenbauer(lambda, n, x) - oracle[n]));
        worst = std::max(worst, std::abs(sweep[n] - oracle[n]));
      }
    }
    char label[48];
    std::snprintf(label, sizeof label, "lambda=%g", lambda);
    report.add(label, worst, 1e-10);
  }
  return report;
}

VerificationReport criterion_funk_hecke(const SuiteOptions& opts) {
  VerificationReport report("funk_hecke");
  const SphereQuadrature quad = product_quadrature_s2(32, 64);
  Rng rng = make_stream(criterion_seed(opts, 2), 0);
  for (int pair = 0; pair < 20; ++pair) {
    const SpherePoint x1 = sample_uniform(2, rng);
    const SpherePoint x2 = sample_uniform(2, rng);
    double diagonal = 0.0;
    double off_diagonal = 0.0;
    for (int i = 0; i <= 6; ++i) {
      for (int j = 0; j <= 6; ++j) {
        const double r = orthogonality_check(i, j, x1, x2, quad).max_residual();
        if (i == j) {
          diagonal = std::max(diagonal, r);
        } else {
          off_diagonal = std::max(off_diagonal, r);
        }
      }
    }
    report.add("pair " + std::to_string(pair) + " diagonal", diagonal, 1e-8);
    report.add("pair " + std::to_string(pair) + " off-diagonal", off_diagonal,
               1e-8 * sphere_surface_area(2));
  }
  report.metadata().seed = criterion_seed(opts, 2);
  return report;
}

VerificationReport criterion_monomial_expansion() {
  VerificationReport report("monomial_expansion");
  for (int d : {2, 3, 4}) {
    const double lambda = sphere_lambda(d);
    double worst = 0.0;
    for (int n = 0; n <= 12; ++n) {
      const std::vector<double> beta = monomial_expansion_coeffs(d, n);
      for (double x : cosine_grid()) {
        const std::vector<double> p = gegenbauer_all(lambda, n, x);
        double sum = 0.0;
        for (int k = 0; k <= n / 2; ++k) sum += beta[k] * p[n - 2 * k];
        worst = std::max(worst, std::abs(std::pow(x, n) - sum));
      }
    }
    report.add("d=" + std::to_string(d), worst, 1e-10);
  }
  const std::vector<double> beta = monomial_expansion_coeffs(2, 2);
  report.add("d=2 n=2 coefficients",
             std::max(std::abs(beta[0] - 2.0 / 3.0), std::abs(beta[1] - 1.0 / 3.0)), 1e-14);
  return report;
}

VerificationReport criterion_closed_form_series(const SuiteOptions& opts) {
  VerificationReport report("closed_form_series");
  const std::uint64_t seed = criterion_seed(opts, 4);
  const ExampleModel models[] = {ExampleModel::Example1, ExampleModel::Example2,
                                 ExampleModel::Example3, ExampleModel::Example4,
                                 ExampleModel::Example5};
  for (std::size_t k = 0; k < std::size(models); ++k) {
    const ExampleModel model = models[k];
    Rng rng = make_stream(seed, k);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const bool infinite = model == ExampleModel::Example2 || model == ExampleModel::Example3;
    const double theta_lo = infinite ? kPi / 12.0 : 0.0;
    const double theta_hi = infinite ? 11.0 * kPi / 12.0 : kPi;
    double worst = 0.0;
    int max_degree = 0;
    for (int point = 0; point < 20; ++point) {
      const Matrix A = random_a(rng, 0.2, model == ExampleModel::Example5 ? 1.0 : 0.8);
      const TemporalCovariance B = exp_model(A, 0.5 + 1.5 * unit(rng));
      const double theta = theta_lo + (theta_hi - theta_lo) * unit(rng);
      const double t = -3.0 + 6.0 * unit(rng);
      SpaceTimeCovariance C = [&]() {
        switch (model) {
          case ExampleModel::Example1:
            return make_example1(B);
          case ExampleModel::Example2: {
            const double c0 = 0.1 + 0.9 * unit(rng);
            const double c1 = 0.1 + 0.9 * unit(rng);
            const double c2 = 0.1 + 0.9 * unit(rng);
            return example2_from_scales(B, c0, c1, c2, infinite_sphere_truncation());
          }
          case ExampleModel::Example3:
            return make_example3(B, infinite_sphere_truncation());
          case ExampleModel::Example4:
            return make_example4(B, unit(rng) < 0.5 ? 2 : 3);
          case ExampleModel::Example5:
            return make_example5(B);
        }
        throw InvalidParameter("unknown example model");
      }();
      worst = std::max(worst, (C.closed_form(theta, t) - C.series(theta, t)).cwiseAbs().maxCoeff());
      max_degree = std::max(max_degree, C.coefficients().truncation());
    }
    report.add(std::string(to_string(model)) + " (max N " + std::to_string(max_degree) + ")", worst,
               1e-6);
  }
  report.metadata().seed = seed;
  return report;
}

VerificationReport criterion_gram_psd(const SuiteOptions& opts) {
  VerificationReport report("gram_psd");
  const std::uint64_t seed = criterion_seed(opts, 5);
  for (ExampleModel model : {ExampleModel::Example1, ExampleModel::Example2, ExampleModel::Example3,
                             ExampleModel::Example4, ExampleModel::Example5}) {
    const SpaceTimeCovariance C = suite_example_model(model);
    const VerificationReport trials = gram_psd_check(C, 10, 5, 50, seed);
    // Each trial item is max(0, -lambda_min) against tol * trace.
    double worst = 0.0;
    for (const auto& item : trials.items()) {
      worst = std::max(worst, item.residual * kPsdRelativeTolerance / item.threshold);
    }
    report.add(std::string(to_string(model)) + " worst -lambda_min / trace", worst,
               kPsdRelativeTolerance);
    report.add(std::string(to_string(model)) + " failing trials of 50",
               static_cast<double>(trials.failures()), 0.0);
  }
  report.metadata().seed = seed;
  return report;
}

VerificationReport criterion_sphere_simulator(const SuiteOptions& opts) {
  const SpaceTimeCovariance C = suite_example_model(ExampleModel::Example4);
  std::vector<SpherePoint> sites{SpherePoint::on_s2(0.0, 0.0), SpherePoint::on_s2(kPi / 3.0, 0.0),
                                 SpherePoint::on_s2(2.0 * kPi / 3.0, 0.0)};
  return simulator_design("sphere_simulator", C, std::move(sites), opts, 6);
}

VerificationReport criterion_circle_simulator(const SuiteOptions& opts) {
  Matrix A(2, 2);
  A << 0.8, 0.4, 0.4, 0.6;
  const SpaceTimeCovariance C = make_example5(exp_model(A));
  std::vector<SpherePoint> sites{SpherePoint::on_circle(0.0), SpherePoint::on_circle(kPi / 2.0),
                                 SpherePoint::on_circle(2.0 * kPi / 3.0)};
  return simulator_design("circle_simulator", C, std::move(sites), opts, 7);
}

VerificationReport criterion_level_orthogonality(const SuiteOptions& opts) {
  VerificationReport report("level_orthogonality");
  const SpaceTimeCovariance C = suite_example_model(ExampleModel::Example4);
  const std::uint64_t seed = criterion_seed(opts, 8);
  SimulationConfig config{C.coefficients(),
                          {SpherePoint::on_s2(0.0, 0.0), SpherePoint::on_s2(kPi / 3.0, 0.0)},
                          {0.0, 1.0},
                          opts.replicates,
                          seed};
  const FieldSimulator sim(config);
  constexpr int kLevels = 4;
  const std::size_t n_sites = config.sites.size();
  const std::size_t n_times = config.times.size();
  const int m = C.m();

  // Level terms packed as pseudo-sites: index level * n_sites + site.
  std::vector<FieldRealization> fields(opts.replicates);
  std::vector<FieldRealization> levels(opts.replicates);
  const auto R = static_cast<std::ptrdiff_t>(opts.replicates);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < R; ++r) {
    Rng rng = make_stream(seed, static_cast<std::uint64_t>(r));
    const SeriesDraw draw = sim.draw_series(rng);
    fields[r] = sim.realize(draw, static_cast<std::size_t>(r));
    FieldRealization& lv = levels[r];
    lv.replicate_id = static_cast<std::size_t>(r);
    lv.n_sites = kLevels * n_sites;
    lv.n_times = n_times;
    lv.m = m;
    lv.values.resize(lv.n_sites * n_times * static_cast<std::size_t>(m));
    for (int n = 0; n < kLevels; ++n) {
      for (std::size_t s = 0; s < n_sites; ++s) {
        for (std::size_t t = 0; t < n_times; ++t) {
          const Vector z = sim.level_term(draw, n, config.sites[s], t);
          for (int c = 0; c < m; ++c) lv.at(n * n_sites + s, t, c) = z(c);
        }
      }
    }
  }

  std::vector<CovariancePair> pairs;
  for (int a = 0; a < kLevels; ++a) {
    for (int b = a + 1; b < kLevels; ++b) {
      for (std::size_t s1 = 0; s1 < n_sites; ++s1) {
        for (std::size_t s2 = 0; s2 < n_sites; ++s2) {
          for (std::size_t t1 = 0; t1 < n_times; ++t1) {
            pairs.push_back({{a * n_sites + s1, t1}, {b * n_sites + s2, 0}});
          }
        }
      }
    }
  }
  const std::vector<CovarianceEstimate> estimates = empirical_covariance(levels, pairs);
  report.merge(compare_analytic(estimates, std::vector<Matrix>(estimates.size(), Matrix::Zero(m, m))),
               "cross-level ");

  const double Rd = static_cast<double>(opts.replicates);
  const Matrix c00 = C(0.0, 0.0);
  for (const MeanEstimate& mean : empirical_mean(fields)) {
    for (int c = 0; c < m; ++c) {
      report.add("mean site " + std::to_string(mean.at.site) + " time " +
                     std::to_string(mean.at.time) + " component " + std::to_string(c),
                 std::abs(mean.value(c)), kDefaultSigmaBand * std::sqrt(c00(c, c) / Rd),
                 mean.std_error(c));
    }
  }
  report.metadata().seed = seed;
  report.metadata().replicates = opts.replicates;
  report.metadata().truncation = C.coefficients().truncation();
  return report;
}

VerificationReport criterion_round_trip(const SuiteOptions& opts) {
  VerificationReport report("round_trip");
  const TemporalCovariance B = exp_model(suite_a());
  std::vector<TemporalCovariance> levels{constant_model(Matrix::Ones(2, 2), TimeDomain::Continuous)};
  for (int n = 1; n <= 4; ++n) levels.push_back(hadamard_power_model(B, n));
  const std::uint64_t seed = criterion_seed(opts, 9);
  SimulationConfig config{CoefficientSequence(SphereDimension::finite(2), std::move(levels)),
                          {SpherePoint::on_s2(0.0, 0.0)},
                          {0.0, 0.5, 1.0},
                          3,
                          seed};
  const FieldSimulator sim(config);
  const SphereQuadrature quad = product_quadrature_s2(64, 128);
  for (std::size_t r = 0; r < config.replicates; ++r) {
    Rng rng = make_stream(seed, r);
    const SeriesDraw draw = sim.draw_series(rng);
    double recovered = 0.0;
    double beyond = 0.0;
    for (std::size_t t = 0; t < config.times.size(); ++t) {
      const auto field = [&](const SpherePoint& x) { return sim.evaluate(draw, x, t); };
      for (int n = 0; n <= 4; ++n) {
        const Vector v = extract_level_coefficients(field, n, *draw.U, quad, 4);
        recovered = std::max(recovered,
                             (v - draw.levels[n].row(static_cast<Eigen::Index>(t)).transpose())
                                 .cwiseAbs()
                                 .maxCoeff());
      }
      beyond = std::max(beyond, extract_level_coefficients(field, 5, *draw.U, quad, 4).cwiseAbs().maxCoeff());
    }
    report.add("replicate " + std::to_string(r) + " levels 0-4", recovered, 1e-6);
    report.add("replicate " + std::to_string(r) + " level 5", beyond, 1e-8);
  }
  report.metadata().seed = seed;
  report.metadata().truncation = 4;
  return report;
}

std::vector<VerificationReport> run_verify_suite(const SuiteOptions& opts) {
  std::vector<VerificationReport> out;
  out.push_back(criterion_polynomial_oracle());
  out.push_back(criterion_funk_hecke(opts));
  out.push_back(criterion_monomial_expansion());
  out.push_back(criterion_closed_form_series(opts));
  out.push_back(criterion_gram_psd(opts));
  out.push_back(criterion_sphere_simulator(opts));
  out.push_back(criterion_circle_simulator(opts));
  out.push_back(criterion_level_orthogonality(opts));
  out.push_back(criterion_round_trip(opts));
  return out;
}

std::vector<VerificationReport> run_acceptance_suite(const SuiteOptions& opts) {
  std::vector<VerificationReport> first = run_verify_suite(opts);
  const std::string a = reports_to_json(first);
  const std::string b = reports_to_json(run_verify_suite(opts));
  std::size_t mismatch = 0;
  while (mismatch < std::min(a.size(), b.size()) && a[mismatch] == b[mismatch]) ++mismatch;
  VerificationReport det("determinism");
  det.add_verdict("first differing byte", a == b ? 0.0 : static_cast<double>(mismatch), 0.0, a == b);
  det.add("report length difference", std::abs(static_cast<double>(a.size()) - static_cast<double>(b.size())),
          0.0);
  det.metadata().seed = opts.seed;
  first.push_back(std::move(det));
  return first;
}

}  // namespace stfields
