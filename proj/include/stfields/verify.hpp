#pragma once

#include <cstdint>
#include <vector>

#include "stfields/covariance.hpp"
#include "stfields/report.hpp"
#include "stfields/simulate.hpp"
#include "stfields/sphere.hpp"

namespace stfields {

struct SiteTime {
  std::size_t site = 0;
  std::size_t time = 0;
};

/// cov(Z(first), Z(second)); the analytic target is C(theta; t_first - t_second).
struct CovariancePair {
  SiteTime first;
  SiteTime second;
};

struct CovarianceEstimate {
  CovariancePair pair;
  Matrix value;      // m x m sample cross-covariance
  Matrix std_error;  // entrywise, from the spread of replicate-level products
};

struct MeanEstimate {
  SiteTime at;
  Vector value;
  Vector std_error;
};

/// Sample cross-covariances, mean-subtracted, divisor R - 1.
/// Throws InvalidParameter for R < 2 or realizations of different shape.
std::vector<CovarianceEstimate> empirical_covariance(const std::vector<FieldRealization>& realizations,
                                                     const std::vector<CovariancePair>& pairs);

/// Sample means at every (site, time) with standard errors.
std::vector<MeanEstimate> empirical_mean(const std::vector<FieldRealization>& realizations);

inline constexpr double kDefaultSigmaBand = 4.0;
inline constexpr double kDefaultBandFloor = 1e-6;

/// Entry passes iff |empirical - analytic| <= k_sigma * stderr + floor.
/// `targets[k]` is the analytic matrix for `estimates[k]`.
VerificationReport compare_analytic(const std::vector<CovarianceEstimate>& estimates,
                                    const std::vector<Matrix>& targets,
                                    double k_sigma = kDefaultSigmaBand,
                                    double floor = kDefaultBandFloor);

/// Same, with targets C(theta(x_i, x_j); t_i - t_j) taken from the model.
VerificationReport compare_analytic(const std::vector<CovarianceEstimate>& estimates,
                                    const SpaceTimeCovariance& C,
                                    const std::vector<SpherePoint>& sites,
                                    const std::vector<double>& times,
                                    double k_sigma = kDefaultSigmaBand,
                                    double floor = kDefaultBandFloor);

/// Block matrix [C(theta(x_i, x_j); t_i - t_j)] over the points (x_k, t_k),
/// with C(theta; t)^T used for negative lags.
Matrix space_time_gram(const SpaceTimeCovariance& C, const std::vector<SpherePoint>& sites,
                       const std::vector<double>& times);

struct GramTrial {
  double min_eigenvalue = 0.0;
  double trace = 0.0;
};

/// One random trial: n_sites uniform sites and n_times random times
/// (integers 0..9 for discrete models, uniform on [0, 5] otherwise), every
/// site paired with every time. Models on the infinite sphere are checked
/// on S^3.
GramTrial gram_trial(const SpaceTimeCovariance& C, std::size_t n_sites, std::size_t n_times,
                     Rng& rng);

/// Trials run in parallel, trial k on stream (seed, k); the report lists
/// max(0, -lambda_min) against tol * trace per trial.
VerificationReport gram_psd_check(const SpaceTimeCovariance& C, std::size_t n_sites,
                                  std::size_t n_times, std::size_t trials, std::uint64_t seed,
                                  double tol = kPsdRelativeTolerance);
/// Serial reference for gram_psd_check; reports are identical.
VerificationReport gram_psd_check_serial(const SpaceTimeCovariance& C, std::size_t n_sites,
                                         std::size_t n_times, std::size_t trials,
                                         std::uint64_t seed, double tol = kPsdRelativeTolerance);

/// Quadrature value of the integral over S^2 of P_i(x1'z) P_j(x2'z) dz
/// (Legendre polynomials) against omega_2 / alpha_i^2 P_i(x1'x2) for i = j and 0
/// otherwise. Thresholds 1e-8 and 1e-8 * omega_2. ConfigError when the
/// rule is not exact to degree i + j.
VerificationReport orthogonality_check(int i, int j, const SpherePoint& x1, const SpherePoint& x2,
                                       const SphereQuadrature& quad);

struct AngleLag {
  double theta = 0.0;
  double t = 0.0;
};

/// Max |closed form - truncated series| over the grid, per grid point.
VerificationReport series_vs_closed_form(const SpaceTimeCovariance& C,
                                         const std::vector<AngleLag>& grid, double tol);

/// Transpose symmetry C(theta; -t) = C(theta; t)^T on the grid, threshold 1e-12.
VerificationReport transpose_symmetry_check(const SpaceTimeCovariance& C,
                                            const std::vector<AngleLag>& grid);

}  // namespace stfields
