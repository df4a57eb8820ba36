#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "stfields/report.hpp"

namespace stfields {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class TimeDomain { Discrete, Continuous };

const char* to_string(TimeDomain domain);

struct ModelDescriptor {
  std::string family;
  std::vector<std::pair<std::string, double>> params;

  std::string to_string() const;
};

/// Stationary m x m matrix covariance B(t) on the integers or the reals.
///
/// Immutable; copies share the evaluator. Discrete models reject
/// non-integer lags instead of rounding them.
class TemporalCovariance {
 public:
  using Evaluator = std::function<Matrix(double)>;

  TemporalCovariance(int m, TimeDomain domain, Evaluator evaluator, ModelDescriptor descriptor);

  int m() const noexcept { return m_; }
  TimeDomain domain() const noexcept { return domain_; }
  const ModelDescriptor& descriptor() const noexcept { return descriptor_; }

  Matrix operator()(double t) const;

  /// Largest |b_ij(0)|. For a valid model this bounds |b_ij(t)| for every t.
  double max_abs_at_zero() const;

 private:
  int m_;
  TimeDomain domain_;
  std::shared_ptr<const Evaluator> evaluator_;
  ModelDescriptor descriptor_;
};

enum class CorrelationFamily { Exponential, Gaussian, CosineDamped, WhiteNoise, Constant };

/// Scalar stationary correlation rho(t) with rho(0) = 1.
struct ScalarCorrelation {
  CorrelationFamily family = CorrelationFamily::Exponential;
  double tau = 1.0;    // scale for exponential, gaussian, cosine-damped
  double omega = 0.0;  // oscillation frequency for cosine-damped

  double operator()(double t) const;
  std::string name() const;
};

/// Relative PSD tolerance shared by the validity checks.
inline constexpr double kPsdRelativeTolerance = 1e-8;

/// Lags 0..8, the default sampled validity grid.
std::vector<double> default_lag_grid();

/// B(t) = rho(t) A with A symmetric positive semidefinite.
TemporalCovariance separable_model(const ScalarCorrelation& rho, const Matrix& A,
                                   TimeDomain domain = TimeDomain::Continuous);

/// Covariance of Z(t) = eps(t) + Phi eps(t-1) with var(eps) = Sigma.
TemporalCovariance ma1_model(const Matrix& sigma, const Matrix& phi);

/// Entrywise p-th power times a positive constant.
TemporalCovariance hadamard_power_model(const TemporalCovariance& B, int p, double scale = 1.0);

TemporalCovariance hadamard_product(const TemporalCovariance& a, const TemporalCovariance& b);

/// sum_k c_k B_k. Negative weights are allowed; validity is the caller's to check.
TemporalCovariance linear_combination(
    const std::vector<std::pair<double, TemporalCovariance>>& terms);

TemporalCovariance zero_model(int m, TimeDomain domain);

/// B(t) = A for every t (the all-ones level-0 matrix of the generating-function models).
TemporalCovariance constant_model(const Matrix& A, TimeDomain domain);

/// Discrete model from lags 0..K: B(k) = lags[k], B(-k) = lags[k]^T, zero beyond K.
TemporalCovariance tabulated_model(std::vector<Matrix> lags);

struct StationarityAnalysis {
  double min_eigenvalue = 0.0;
  double trace = 0.0;
  double symmetry_residual = 0.0;  // max |B(-t) - B(t)^T| over grid differences
};

/// Spectrum and symmetry of the block Gram matrix [B(t_i - t_j)].
StationarityAnalysis analyze_stationary_covariance(const TemporalCovariance& B,
                                                   const std::vector<double>& grid);

/// Block Gram matrix [B(t_i - t_j)]_{i,j}, unsymmetrised.
Matrix block_gram(const TemporalCovariance& B, const std::vector<double>& grid);

VerificationReport check_stationary_covariance(const TemporalCovariance& B,
                                               const std::vector<double>& grid,
                                               double tol = kPsdRelativeTolerance);

bool entries_bounded_below_one(const TemporalCovariance& B, const std::vector<double>& grid);

/// Smallest eigenvalue of the symmetric part of a square matrix.
double min_symmetric_eigenvalue(const Matrix& A);

}  // namespace stfields
