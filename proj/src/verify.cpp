#include "stfields/verify.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>

#include "stfields/errors.hpp"
#include "stfields/gegenbauer.hpp"

namespace stfields {

namespace {

void require_same_shape(const std::vector<FieldRealization>& reps) {
  if (reps.size() < 2) throw InvalidParameter("covariance estimation needs at least 2 replicates");
  const FieldRealization& ref = reps.front();
  for (const auto& r : reps) {
    if (r.n_sites != ref.n_sites || r.n_times != ref.n_times || r.m != ref.m ||
        r.values.size() != ref.values.size()) {
      throw InvalidParameter("realizations come from different configurations");
    }
  }
}

void require_in_range(const FieldRealization& ref, const SiteTime& at) {
  if (at.site >= ref.n_sites || at.time >= ref.n_times) {
    throw InvalidParameter("site/time index outside the realization");
  }
}

std::string point_label(const SiteTime& a) {
  return "(" + std::to_string(a.site) + "," + std::to_string(a.time) + ")";
}

std::string entry_label(Eigen::Index i, Eigen::Index j) {
  return "[" + std::to_string(i) + "," + std::to_string(j) + "]";
}

Matrix lagged_block(const SpaceTimeCovariance& C, double theta, double lag) {
  return lag >= 0.0 ? C(theta, lag) : Matrix(C(theta, -lag).transpose());
}

int check_dimension(const SpaceTimeCovariance& C) {
  return C.d().is_infinite() ? 3 : C.d().value();
}

VerificationReport gram_report(const std::vector<GramTrial>& trials, double tol) {
  VerificationReport report("gram_psd");
  for (std::size_t k = 0; k < trials.size(); ++k) {
    report.add("trial " + std::to_string(k), std::max(0.0, -trials[k].min_eigenvalue),
               tol * trials[k].trace);
  }
  return report;
}

}  // namespace

std::vector<CovarianceEstimate> empirical_covariance(const std::vector<FieldRealization>& realizations,
                                                     const std::vector<CovariancePair>& pairs) {
  require_same_shape(realizations);
  const FieldRealization& ref = realizations.front();
  const int m = ref.m;
  const auto R = static_cast<double>(realizations.size());

  std::vector<CovarianceEstimate> out;
  out.reserve(pairs.size());
  for (const auto& pair : pairs) {
    require_in_range(ref, pair.first);
    require_in_range(ref, pair.second);
    Vector mean1 = Vector::Zero(m);
    Vector mean2 = Vector::Zero(m);
    for (const auto& r : realizations) {
      for (int c = 0; c < m; ++c) {
        mean1(c) += r.at(pair.first.site, pair.first.time, c);
        mean2(c) += r.at(pair.second.site, pair.second.time, c);
      }
    }
    mean1 /= R;
    mean2 /= R;

    Matrix sum = Matrix::Zero(m, m);
    Matrix sum_sq = Matrix::Zero(m, m);
    for (const auto& r : realizations) {
      for (int i = 0; i < m; ++i) {
        const double a = r.at(pair.first.site, pair.first.time, i) - mean1(i);
        for (int j = 0; j < m; ++j) {
          const double p = a * (r.at(pair.second.site, pair.second.time, j) - mean2(j));
          sum(i, j) += p;
          sum_sq(i, j) += p * p;
        }
      }
    }
    CovarianceEstimate est{pair, sum / (R - 1.0), Matrix::Zero(m, m)};
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        const double mean_p = sum(i, j) / R;
        const double var_p = std::max(0.0, (sum_sq(i, j) - R * mean_p * mean_p) / (R - 1.0));
        est.std_error(i, j) = std::sqrt(var_p / R);
      }
    }
    out.push_back(std::move(est));
  }
  return out;
}

std::vector<MeanEstimate> empirical_mean(const std::vector<FieldRealization>& realizations) {
  require_same_shape(realizations);
  const FieldRealization& ref = realizations.front();
  const auto R = static_cast<double>(realizations.size());
  std::vector<MeanEstimate> out;
  out.reserve(ref.n_sites * ref.n_times);
  for (std::size_t s = 0; s < ref.n_sites; ++s) {
    for (std::size_t t = 0; t < ref.n_times; ++t) {
      Vector sum = Vector::Zero(ref.m);
      Vector sum_sq = Vector::Zero(ref.m);
      for (const auto& r : realizations) {
        for (int c = 0; c < ref.m; ++c) {
          const double v = r.at(s, t, c);
          sum(c) += v;
          sum_sq(c) += v * v;
        }
      }
      MeanEstimate est{{s, t}, sum / R, Vector::Zero(ref.m)};
      for (int c = 0; c < ref.m; ++c) {
        const double var = std::max(0.0, (sum_sq(c) - R * est.value(c) * est.value(c)) / (R - 1.0));
        est.std_error(c) = std::sqrt(var / R);
      }
      out.push_back(std::move(est));
    }
  }
  return out;
}

VerificationReport compare_analytic(const std::vector<CovarianceEstimate>& estimates,
                                    const std::vector<Matrix>& targets, double k_sigma,
                                    double floor) {
  if (targets.size() != estimates.size()) {
    throw InvalidParameter("one analytic target per estimate is required");
  }
  VerificationReport report("covariance_match");
  for (std::size_t k = 0; k < estimates.size(); ++k) {
    const CovarianceEstimate& e = estimates[k];
    if (targets[k].rows() != e.value.rows() || targets[k].cols() != e.value.cols()) {
      throw InvalidParameter("analytic target has the wrong shape");
    }
    const std::string pair = point_label(e.pair.first) + "-" + point_label(e.pair.second);
    for (Eigen::Index i = 0; i < e.value.rows(); ++i) {
      for (Eigen::Index j = 0; j < e.value.cols(); ++j) {
        const double se = e.std_error(i, j);
        report.add(pair + entry_label(i, j), std::abs(e.value(i, j) - targets[k](i, j)),
                   k_sigma * se + floor, se);
      }
    }
  }
  return report;
}

VerificationReport compare_analytic(const std::vector<CovarianceEstimate>& estimates,
                                    const SpaceTimeCovariance& C,
                                    const std::vector<SpherePoint>& sites,
                                    const std::vector<double>& times, double k_sigma,
                                    double floor) {
  std::vector<Matrix> targets;
  targets.reserve(estimates.size());
  for (const auto& e : estimates) {
    const double theta = geodesic_distance(sites.at(e.pair.first.site), sites.at(e.pair.second.site));
    targets.push_back(lagged_block(C, theta, times.at(e.pair.first.time) - times.at(e.pair.second.time)));
  }
  return compare_analytic(estimates, targets, k_sigma, floor);
}

Matrix space_time_gram(const SpaceTimeCovariance& C, const std::vector<SpherePoint>& sites,
                       const std::vector<double>& times) {
  if (sites.size() != times.size()) throw InvalidParameter("one time per site is required");
  const int m = C.m();
  const auto n = static_cast<Eigen::Index>(sites.size());
  Matrix G(n * m, n * m);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const double theta = geodesic_distance(sites[i], sites[j]);
      const Matrix block = lagged_block(C, theta, times[i] - times[j]);
      G.block(i * m, j * m, m, m) = block;
      if (j != i) G.block(j * m, i * m, m, m) = block.transpose();
    }
  }
  return G;
}

GramTrial gram_trial(const SpaceTimeCovariance& C, std::size_t n_sites, std::size_t n_times,
                     Rng& rng) {
  const int d = check_dimension(C);
  std::vector<SpherePoint> sites;
  for (std::size_t s = 0; s < n_sites; ++s) sites.push_back(sample_uniform(d, rng));
  std::vector<double> times;
  if (C.domain() == TimeDomain::Discrete) {
    std::uniform_int_distribution<int> lag(0, 9);
    for (std::size_t k = 0; k < n_times; ++k) times.push_back(lag(rng));
  } else {
    std::uniform_real_distribution<double> lag(0.0, 5.0);
    for (std::size_t k = 0; k < n_times; ++k) times.push_back(lag(rng));
  }
  std::vector<SpherePoint> point_sites;
  std::vector<double> point_times;
  for (const auto& x : sites) {
    for (double t : times) {
      point_sites.push_back(x);
      point_times.push_back(t);
    }
  }
  const Matrix G = space_time_gram(C, point_sites, point_times);
  return {min_symmetric_eigenvalue(G), G.trace()};
}

VerificationReport gram_psd_check(const SpaceTimeCovariance& C, std::size_t n_sites,
                                  std::size_t n_times, std::size_t trials, std::uint64_t seed,
                                  double tol) {
  std::vector<GramTrial> results(trials);
  const auto n = static_cast<std::ptrdiff_t>(trials);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    Rng rng = make_stream(seed, static_cast<std::uint64_t>(k));
    results[static_cast<std::size_t>(k)] = gram_trial(C, n_sites, n_times, rng);
  }
  VerificationReport report = gram_report(results, tol);
  report.metadata().seed = seed;
  return report;
}

VerificationReport gram_psd_check_serial(const SpaceTimeCovariance& C, std::size_t n_sites,
                                         std::size_t n_times, std::size_t trials,
                                         std::uint64_t seed, double tol) {
  std::vector<GramTrial> results;
  results.reserve(trials);
  for (std::size_t k = 0; k < trials; ++k) {
    Rng rng = make_stream(seed, k);
    results.push_back(gram_trial(C, n_sites, n_times, rng));
  }
  VerificationReport report = gram_report(results, tol);
  report.metadata().seed = seed;
  return report;
}

VerificationReport orthogonality_check(int i, int j, const SpherePoint& x1, const SpherePoint& x2,
                                       const SphereQuadrature& quad) {
  if (i < 0 || j < 0) throw InvalidParameter("negative degree");
  if (x1.dim() != 2 || x2.dim() != 2) throw InvalidParameter("orthogonality check is on S^2");
  if (quad.exactness_degree < i + j) {
    throw ConfigError("quadrature exact to degree " + std::to_string(quad.exactness_degree) +
                      " cannot integrate degree " + std::to_string(i + j));
  }
  const double value = integrate_s2(
      [&](const SpherePoint& z) { return gegenbauer(0.5, i, x1.dot(z)) * gegenbauer(0.5, j, x2.dot(z)); },
      quad);
  VerificationReport report("orthogonality");
  const std::string label = "P" + std::to_string(i) + " x P" + std::to_string(j);
  if (i == j) {
    const double expected =
        sphere_surface_area(2) / (alpha(2, i) * alpha(2, i)) * gegenbauer(0.5, i, x1.dot(x2));
    report.add(label, std::abs(value - expected), 1e-8);
  } else {
    report.add(label, std::abs(value), 1e-8 * sphere_surface_area(2));
  }
  return report;
}

VerificationReport series_vs_closed_form(const SpaceTimeCovariance& C,
                                         const std::vector<AngleLag>& grid, double tol) {
  if (!C.has_closed_form()) throw InvalidParameter("model has no closed form to compare against");
  VerificationReport report(std::string("series_vs_closed_form ") + to_string(*C.closed_form_tag()));
  for (const auto& p : grid) {
    const double diff = (C.closed_form(p.theta, p.t) - C.series(p.theta, p.t)).cwiseAbs().maxCoeff();
    char label[64];
    std::snprintf(label, sizeof label, "theta=%.6g t=%.6g", p.theta, p.t);
    report.add(label, diff, tol);
  }
  report.metadata().truncation = C.coefficients().truncation();
  return report;
}

VerificationReport transpose_symmetry_check(const SpaceTimeCovariance& C,
                                            const std::vector<AngleLag>& grid) {
  VerificationReport report("transpose_symmetry");
  for (const auto& p : grid) {
    const double diff = (C(p.theta, -p.t) - C(p.theta, p.t).transpose()).cwiseAbs().maxCoeff();
    char label[64];
    std::snprintf(label, sizeof label, "theta=%.6g t=%.6g", p.theta, p.t);
    report.add(label, diff, 1e-12);
  }
  return report;
}

}  // namespace stfields
