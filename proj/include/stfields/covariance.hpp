#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stfields/gegenbauer.hpp"
#include "stfields/temporal.hpp"

namespace stfields {

/// Sphere dimension d in {1, 2, ...} or the infinite-dimensional sphere.
/// The infinite case selects the cos^n basis.
class SphereDimension {
 public:
  static SphereDimension finite(int d);
  static SphereDimension infinite() noexcept { return SphereDimension(kInfinite); }

  bool is_infinite() const noexcept { return d_ == kInfinite; }
  int value() const;  // throws for the infinite sphere
  std::string to_string() const;

  friend bool operator==(SphereDimension, SphereDimension) = default;

 private:
  static constexpr int kInfinite = -1;
  explicit SphereDimension(int d) : d_(d) {}
  int d_;
};

/// Coefficient matrices B_0..B_N of one of the three series forms:
///   d = 1:  sum B_n(t) cos(n theta)
///   d >= 2: sum B_n(t) P_n^{((d-1)/2)}(cos theta)
///   d = oo: sum B_n(t) cos^n(theta)
///
/// `tail_bound` bounds the entrywise magnitude of the discarded terms
/// (0 for a sequence that is exactly finite).
class CoefficientSequence {
 public:
  CoefficientSequence(SphereDimension d, std::vector<TemporalCovariance> levels,
                      double tail_bound = 0.0);

  SphereDimension d() const noexcept { return d_; }
  const std::vector<TemporalCovariance>& levels() const noexcept { return levels_; }
  const TemporalCovariance& level(int n) const { return levels_.at(static_cast<std::size_t>(n)); }
  int truncation() const noexcept { return static_cast<int>(levels_.size()) - 1; }
  int m() const noexcept { return levels_.front().m(); }
  TimeDomain domain() const noexcept { return levels_.front().domain(); }
  double tail_bound() const noexcept { return tail_bound_; }

  /// Basis magnitude at theta = 0: 1 for d = 1 and d = oo, P_n(1) otherwise.
  double weight(int n) const;

  /// max|B_N(0)| * weight(N): magnitude of the last retained term.
  double last_term_magnitude() const;

  /// Basis values b_0(theta)..b_N(theta).
  std::vector<double> basis(double theta) const;

 private:
  SphereDimension d_;
  std::vector<TemporalCovariance> levels_;
  double tail_bound_;
};

enum class ExampleModel { Example1, Example2, Example3, Example4, Example5 };

const char* to_string(ExampleModel model);

/// Space-time covariance C(theta; t): a truncated coefficient sequence,
/// optionally paired with the closed form it truncates.
class SpaceTimeCovariance {
 public:
  using ClosedForm = std::function<Matrix(double theta, double t)>;

  explicit SpaceTimeCovariance(CoefficientSequence coefficients);
  SpaceTimeCovariance(CoefficientSequence coefficients, ExampleModel tag, ClosedForm closed_form);

  SphereDimension d() const noexcept { return coefficients_.d(); }
  int m() const noexcept { return coefficients_.m(); }
  TimeDomain domain() const noexcept { return coefficients_.domain(); }
  const CoefficientSequence& coefficients() const noexcept { return coefficients_; }
  double tail_bound() const noexcept { return coefficients_.tail_bound(); }

  std::optional<ExampleModel> closed_form_tag() const noexcept { return tag_; }
  bool has_closed_form() const noexcept { return static_cast<bool>(closed_form_); }

  /// Closed form when available, truncated series otherwise.
  Matrix operator()(double theta, double t) const;
  Matrix series(double theta, double t) const;
  Matrix closed_form(double theta, double t) const;

 private:
  CoefficientSequence coefficients_;
  std::optional<ExampleModel> tag_;
  ClosedForm closed_form_;
};

/// Truncated series value of C(theta; t) in the basis chosen by d.
Matrix eval_series_covariance(const SpaceTimeCovariance& C, double theta, double t);

/// (C(theta; t) + C(theta; -t)) / 2.
Matrix symmetrize(const SpaceTimeCovariance& C, double theta, double t);

struct TruncationOptions {
  double tolerance = 1e-8;
  int max_degree = kDefaultDegreeLimit;
  std::optional<int> fixed_degree;
  // Largest |cos theta| the caller will evaluate at; only the slowly
  // converging polynomial model needs it below 1.
  double max_abs_cos = 1.0;
};

// Closed forms, entrywise in b_ij(t).
Matrix example1_log_model(const TemporalCovariance& B, double theta, double t);
Matrix example2_polynomial_model(const TemporalCovariance& B0, const TemporalCovariance& B1,
                                 const TemporalCovariance& B2, double theta, double t);
Matrix example3_exp_model(const TemporalCovariance& B, double theta, double t);
Matrix example4_model(const TemporalCovariance& B, int d, double theta, double t);
Matrix example5_model(const TemporalCovariance& B, double theta, double t);

// Closed form paired with its coefficient sequence. Each factory checks
// the model's validity conditions on the default lag grid and throws
// ModelInvalid when they fail.
SpaceTimeCovariance make_example1(const TemporalCovariance& B, const TruncationOptions& opts = {});
SpaceTimeCovariance make_example2(const TemporalCovariance& B0, const TemporalCovariance& B1,
                                  const TemporalCovariance& B2, const TruncationOptions& opts = {});
SpaceTimeCovariance make_example3(const TemporalCovariance& B, const TruncationOptions& opts = {});
SpaceTimeCovariance make_example4(const TemporalCovariance& B, int d,
                                  const TruncationOptions& opts = {});
SpaceTimeCovariance make_example5(const TemporalCovariance& B, const TruncationOptions& opts = {});

/// Series coefficients of arcsin(x) and arcsin(x)^2 in powers of x, up to x^N.
std::vector<double> arcsin_series(int max_power);
std::vector<double> arcsin_squared_series(int max_power);

/// Re-expand a cos^n series in the Gegenbauer basis of S^d:
/// A_j = sum_k beta_{k, j+2k} B_{j+2k}. Throws TruncationError when the input
/// tail bound is not below `tolerance`.
CoefficientSequence lift_s_infinity_to_sd(const CoefficientSequence& cos_power, int d,
                                          double tolerance = 1e-8);

/// The same lift applied to a whole model; the closed form (if any) carries over.
SpaceTimeCovariance lift_s_infinity_to_sd(const SpaceTimeCovariance& C, int d,
                                          double tolerance = 1e-8);

/// Validate theta in [0, pi], clamping rounding drift of 1e-12.
double checked_angle(double theta);

}  // namespace stfields
