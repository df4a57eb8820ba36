#include "stfields/covariance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "stfields/errors.hpp"

namespace stfields {

namespace {

constexpr double kPi = std::numbers::pi;

Matrix ones(int m) { return Matrix::Ones(m, m); }

void require_valid(const TemporalCovariance& B, const char* what) {
  if (!check_stationary_covariance(B, default_lag_grid()).pass()) {
    throw ModelInvalid(std::string(what) + " is not a stationary covariance on the lag grid");
  }
}

void require_bounded(const TemporalCovariance& B, const char* what) {
  if (!entries_bounded_below_one(B, default_lag_grid())) {
    throw ModelInvalid(std::string(what) + " has an entry with |b_ij(t)| >= 1");
  }
}

// Smallest N (or the fixed one) whose tail bound is below tolerance.
struct Truncation {
  int degree;
  double bound;
};

template <class TailFn>
Truncation choose_truncation(const TruncationOptions& opts, TailFn tail) {
  if (opts.fixed_degree) {
    if (*opts.fixed_degree < 0) throw InvalidParameter("negative truncation degree");
    return {*opts.fixed_degree, tail(*opts.fixed_degree)};
  }
  double bound = std::numeric_limits<double>::infinity();
  for (int n = 0; n <= opts.max_degree; ++n) {
    bound = tail(n);
    if (bound < opts.tolerance) return {n, bound};
  }
  throw TruncationError("series tail does not fall below " + std::to_string(opts.tolerance) +
                            " by degree " + std::to_string(opts.max_degree),
                        bound);
}

// Sum_{n > N} r^n over the retained basis magnitudes (coefficients <= 1).
double geometric_tail(double r, int N) {
  if (r >= 1.0) return std::numeric_limits<double>::infinity();
  return std::pow(r, N + 1) / (1.0 - r);
}

// Taylor coefficients of exp(b arcsin x): (n+2)(n+1) c_{n+2} = (n^2 + b^2) c_n.
double exp_arcsin_coeff(double b, int n) {
  double c = (n % 2 == 0) ? 1.0 : b;
  for (int k = n % 2; k + 2 <= n; k += 2) c *= (k * k + b * b) / ((k + 1.0) * (k + 2.0));
  return c;
}

double example1_entry(double b, double c) {
  return -std::log(0.5 * (1.0 - b * c + std::sqrt(1.0 - 2.0 * b * c + b * b)));
}

}  // namespace

SphereDimension SphereDimension::finite(int d) {
  if (d < 1) throw InvalidParameter("sphere dimension must be >= 1, got " + std::to_string(d));
  return SphereDimension(d);
}

int SphereDimension::value() const {
  if (is_infinite()) throw InvalidParameter("the infinite-dimensional sphere has no finite d");
  return d_;
}

std::string SphereDimension::to_string() const {
  return is_infinite() ? std::string("inf") : std::to_string(d_);
}

double checked_angle(double theta) {
  constexpr double kBand = 1e-12;
  if (std::isnan(theta) || theta < -kBand || theta > kPi + kBand) {
    throw DomainError("angle " + std::to_string(theta) + " outside [0, pi]");
  }
  return std::clamp(theta, 0.0, kPi);
}

CoefficientSequence::CoefficientSequence(SphereDimension d, std::vector<TemporalCovariance> levels,
                                         double tail_bound)
    : d_(d), levels_(std::move(levels)), tail_bound_(tail_bound) {
  if (levels_.empty()) throw InvalidParameter("coefficient sequence needs at least one level");
  for (const auto& B : levels_) {
    if (B.m() != levels_.front().m() || B.domain() != levels_.front().domain()) {
      throw InvalidParameter("coefficient levels differ in dimension or time domain");
    }
  }
  if (!d_.is_infinite() && d_.value() >= 2 && truncation() > kDefaultDegreeLimit) {
    throw InvalidParameter("truncation degree exceeds the Gegenbauer degree limit");
  }
  if (!(tail_bound_ >= 0.0)) throw InvalidParameter("tail bound must be non-negative");
}

double CoefficientSequence::weight(int n) const {
  if (d_.is_infinite() || d_.value() == 1) return 1.0;
  return gegenbauer_at_one(sphere_lambda(d_.value()), n);
}

double CoefficientSequence::last_term_magnitude() const {
  return levels_.back().max_abs_at_zero() * weight(truncation());
}

std::vector<double> CoefficientSequence::basis(double theta) const {
  theta = checked_angle(theta);
  const int N = truncation();
  const double c = std::cos(theta);
  std::vector<double> out(static_cast<std::size_t>(N) + 1);
  if (d_.is_infinite()) {
    double p = 1.0;
    for (int n = 0; n <= N; ++n, p *= c) out[n] = p;
  } else if (d_.value() == 1) {
    for (int n = 0; n <= N; ++n) out[n] = std::cos(n * theta);
  } else {
    gegenbauer_all(sphere_lambda(d_.value()), N, c, out);
  }
  return out;
}

const char* to_string(ExampleModel model) {
  switch (model) {
    case ExampleModel::Example1:
      return "example1";
    case ExampleModel::Example2:
      return "example2";
    case ExampleModel::Example3:
      return "example3";
    case ExampleModel::Example4:
      return "example4";
    case ExampleModel::Example5:
      return "example5";
  }
  return "unknown";
}

SpaceTimeCovariance::SpaceTimeCovariance(CoefficientSequence coefficients)
    : coefficients_(std::move(coefficients)) {}

SpaceTimeCovariance::SpaceTimeCovariance(CoefficientSequence coefficients, ExampleModel tag,
                                         ClosedForm closed_form)
    : coefficients_(std::move(coefficients)), tag_(tag), closed_form_(std::move(closed_form)) {}

Matrix SpaceTimeCovariance::operator()(double theta, double t) const {
  return closed_form_ ? closed_form(theta, t) : series(theta, t);
}

Matrix SpaceTimeCovariance::series(double theta, double t) const {
  const std::vector<double> basis = coefficients_.basis(theta);
  const int m = coefficients_.m();
  Matrix out = Matrix::Zero(m, m);
  for (std::size_t n = 0; n < basis.size(); ++n) {
    out += basis[n] * coefficients_.levels()[n](t);
  }
  return out;
}

Matrix SpaceTimeCovariance::closed_form(double theta, double t) const {
  if (!closed_form_) throw InvalidParameter("model has no closed form");
  return closed_form_(checked_angle(theta), t);
}

Matrix eval_series_covariance(const SpaceTimeCovariance& C, double theta, double t) {
  return C.series(theta, t);
}

Matrix symmetrize(const SpaceTimeCovariance& C, double theta, double t) {
  return 0.5 * (C(theta, t) + C(theta, -t));
}

// ---------------------------------------------------------------------------
// Closed forms

Matrix example1_log_model(const TemporalCovariance& B, double theta, double t) {
  const Matrix b = B(t);
  if (b.cwiseAbs().maxCoeff() >= 1.0) throw ModelInvalid("log model needs |b_ij(t)| < 1");
  const double c = std::cos(checked_angle(theta));
  return b.unaryExpr([c](double v) { return example1_entry(v, c); });
}

Matrix example2_polynomial_model(const TemporalCovariance& B0, const TemporalCovariance& B1,
                                 const TemporalCovariance& B2, double theta, double t) {
  theta = checked_angle(theta);
  return B0(t) + theta * B1(t) + theta * theta * B2(t);
}

Matrix example3_exp_model(const TemporalCovariance& B, double theta, double t) {
  theta = checked_angle(theta);
  return B(t).unaryExpr([theta](double b) { return std::exp(-0.5 * kPi * b - b * theta); });
}

Matrix example4_model(const TemporalCovariance& B, int d, double theta, double t) {
  if (d < 2) throw InvalidParameter("generating-function model needs d >= 2");
  const Matrix b = B(t);
  if (b.cwiseAbs().maxCoeff() >= 1.0) throw ModelInvalid("generating-function model needs |b_ij(t)| < 1");
  const double c = std::cos(checked_angle(theta));
  const double power = -0.5 * (d - 1);
  return b.unaryExpr([c, power](double v) { return std::pow(1.0 - 2.0 * v * c + v * v, power); });
}

Matrix example5_model(const TemporalCovariance& B, double theta, double t) {
  theta = checked_angle(theta);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return B(t).unaryExpr([c, s](double b) { return std::exp(b * c) * std::cos(b * s); });
}

// ---------------------------------------------------------------------------
// Factories

SpaceTimeCovariance make_example1(const TemporalCovariance& B, const TruncationOptions& opts) {
  require_valid(B, "log model B(t)");
  require_bounded(B, "log model B(t)");
  const double b = B.max_abs_at_zero();
  const Truncation tr = choose_truncation(opts, [b](int N) {
    return b == 0.0 ? 0.0 : std::pow(b, N + 1) / ((N + 1) * (1.0 - b));
  });
  std::vector<TemporalCovariance> levels;
  levels.push_back(zero_model(B.m(), B.domain()));
  for (int n = 1; n <= tr.degree; ++n) levels.push_back(hadamard_power_model(B, n, 1.0 / n));
  return SpaceTimeCovariance(
      CoefficientSequence(SphereDimension::finite(2), std::move(levels), tr.bound),
      ExampleModel::Example1,
      [B](double theta, double t) { return example1_log_model(B, theta, t); });
}

std::vector<double> arcsin_series(int max_power) {
  std::vector<double> c(static_cast<std::size_t>(std::max(max_power, 0)) + 1, 0.0);
  double central = 1.0;  // binomial(2k, k) / 4^k
  for (int k = 0; 2 * k + 1 <= max_power; ++k) {
    if (k > 0) central *= (2.0 * k - 1.0) / (2.0 * k);
    c[2 * k + 1] = central / (2 * k + 1);
  }
  return c;
}

std::vector<double> arcsin_squared_series(int max_power) {
  std::vector<double> c(static_cast<std::size_t>(std::max(max_power, 0)) + 1, 0.0);
  double central = 1.0;
  for (int k = 1; 2 * k <= max_power; ++k) {
    central *= (2.0 * k - 1.0) / (2.0 * k);
    // 2^{2k-1} ((k-1)!)^2 / (2k)!  ==  1 / (2 k^2 binomial(2k, k) / 4^k)
    c[2 * k] = 1.0 / (2.0 * k * k * central);
  }
  return c;
}

SpaceTimeCovariance make_example2(const TemporalCovariance& B0, const TemporalCovariance& B1,
                                  const TemporalCovariance& B2, const TruncationOptions& opts) {
  const TemporalCovariance slope = linear_combination({{-1.0, B1}, {-kPi, B2}});
  const TemporalCovariance constant =
      linear_combination({{1.0, B0}, {0.5 * kPi, B1}, {0.25 * kPi * kPi, B2}});
  require_valid(B2, "polynomial model B2(t)");
  require_valid(slope, "polynomial model -B1(t) - pi B2(t)");
  require_valid(constant, "polynomial model B0(t) + pi/2 B1(t) + pi^2/4 B2(t)");

  const double slope_norm = slope.max_abs_at_zero();
  const double curve_norm = B2.max_abs_at_zero();
  const double r = opts.max_abs_cos;
  const Truncation tr = choose_truncation(opts, [&](int N) {
    if (slope_norm == 0.0 && curve_norm == 0.0) return 0.0;
    // Coefficients are positive and at most 1; at |x| = 1 the exact tails
    // are arcsin(1) and arcsin(1)^2 minus the partial sums.
    const std::vector<double> a = arcsin_series(N);
    const std::vector<double> q = arcsin_squared_series(N);
    double sa = 0.0, sq = 0.0;
    for (int n = 0; n <= N; ++n) {
      sa += a[n];
      sq += q[n];
    }
    const double at_one = slope_norm * std::max(0.0, 0.5 * kPi - sa) +
                          curve_norm * std::max(0.0, 0.25 * kPi * kPi - sq);
    return std::min(at_one, (slope_norm + curve_norm) * geometric_tail(r, N));
  });

  const std::vector<double> a = arcsin_series(tr.degree);
  const std::vector<double> q = arcsin_squared_series(tr.degree);
  std::vector<TemporalCovariance> levels;
  levels.push_back(constant);
  for (int n = 1; n <= tr.degree; ++n) {
    if (n % 2 == 1) {
      levels.push_back(linear_combination({{a[n], slope}}));
    } else {
      levels.push_back(linear_combination({{q[n], B2}}));
    }
  }
  return SpaceTimeCovariance(
      CoefficientSequence(SphereDimension::infinite(), std::move(levels), tr.bound),
      ExampleModel::Example2, [B0, B1, B2](double theta, double t) {
        return example2_polynomial_model(B0, B1, B2, theta, t);
      });
}

SpaceTimeCovariance make_example3(const TemporalCovariance& B, const TruncationOptions& opts) {
  require_valid(B, "exponential model B(t)");
  // exp(-pi/2 b - b theta) = exp(-pi b) exp(b arcsin(cos theta)); level n is
  // exp(-pi b) c_n(b) entrywise, with c_n the Taylor coefficients of exp(b arcsin x).
  const double b = B.max_abs_at_zero();
  const double r = opts.max_abs_cos;
  std::vector<double> coeffs;  // c_n(b), grown on demand
  const Truncation tr = choose_truncation(opts, [b, r, &coeffs](int N) {
    if (b == 0.0) return 0.0;
    const double prefactor = std::exp(kPi * b);
    while (static_cast<int>(coeffs.size()) <= N) {
      const int n = static_cast<int>(coeffs.size());
      coeffs.push_back(n < 2 ? exp_arcsin_coeff(b, n)
                             : coeffs[n - 2] * ((n - 2.0) * (n - 2.0) + b * b) / ((n - 1.0) * n));
    }
    double partial = 0.0;
    for (int n = 0; n <= N; ++n) partial += coeffs[n];
    const double at_one = prefactor * std::max(0.0, std::exp(0.5 * kPi * b) - partial);
    return std::min(at_one, prefactor * std::exp(0.5 * kPi * b) * geometric_tail(r, N));
  });
  std::vector<TemporalCovariance> levels;
  levels.reserve(static_cast<std::size_t>(tr.degree) + 1);
  for (int n = 0; n <= tr.degree; ++n) {
    levels.emplace_back(
        B.m(), B.domain(),
        [B, n](double t) -> Matrix {
          return B(t).unaryExpr([n](double v) { return std::exp(-kPi * v) * exp_arcsin_coeff(v, n); });
        },
        ModelDescriptor{"exp_arcsin_level", {{"n", n}}});
  }
  return SpaceTimeCovariance(
      CoefficientSequence(SphereDimension::infinite(), std::move(levels), tr.bound),
      ExampleModel::Example3, [B](double theta, double t) { return example3_exp_model(B, theta, t); });
}

SpaceTimeCovariance make_example4(const TemporalCovariance& B, int d, const TruncationOptions& opts) {
  if (d < 2) throw InvalidParameter("generating-function model needs d >= 2");
  require_valid(B, "generating-function model B(t)");
  require_bounded(B, "generating-function model B(t)");
  const double lambda = sphere_lambda(d);
  const double b = B.max_abs_at_zero();
  const Truncation tr = choose_truncation(opts, [b, lambda](int N) {
    if (b == 0.0) return 0.0;
    // term_n = b^n P_n(1); ratios b (2 lambda + n) / (n + 1) decrease towards b.
    const double next = std::pow(b, N + 1) * gegenbauer_at_one(lambda, N + 1);
    const double ratio = b * (2.0 * lambda + N + 1) / (N + 2);
    if (ratio >= 1.0) return std::numeric_limits<double>::infinity();
    return next / (1.0 - ratio);
  });
  std::vector<TemporalCovariance> levels;
  levels.push_back(constant_model(ones(B.m()), B.domain()));
  for (int n = 1; n <= tr.degree; ++n) levels.push_back(hadamard_power_model(B, n));
  return SpaceTimeCovariance(
      CoefficientSequence(SphereDimension::finite(d), std::move(levels), tr.bound),
      ExampleModel::Example4,
      [B, d](double theta, double t) { return example4_model(B, d, theta, t); });
}

SpaceTimeCovariance make_example5(const TemporalCovariance& B, const TruncationOptions& opts) {
  require_valid(B, "circle model B(t)");
  const double b = B.max_abs_at_zero();
  const Truncation tr = choose_truncation(opts, [b](int N) {
    if (b == 0.0) return 0.0;
    const double next = std::exp((N + 1) * std::log(b) - std::lgamma(N + 2.0));
    const double ratio = b / (N + 2);
    if (ratio >= 1.0) return std::numeric_limits<double>::infinity();
    return next / (1.0 - ratio);
  });
  std::vector<TemporalCovariance> levels;
  levels.push_back(constant_model(ones(B.m()), B.domain()));
  double inv_factorial = 1.0;
  for (int n = 1; n <= tr.degree; ++n) {
    inv_factorial /= n;
    levels.push_back(hadamard_power_model(B, n, inv_factorial));
  }
  return SpaceTimeCovariance(
      CoefficientSequence(SphereDimension::finite(1), std::move(levels), tr.bound),
      ExampleModel::Example5, [B](double theta, double t) { return example5_model(B, theta, t); });
}

// ---------------------------------------------------------------------------
// S^oo -> S^d

CoefficientSequence lift_s_infinity_to_sd(const CoefficientSequence& cos_power, int d,
                                          double tolerance) {
  if (!cos_power.d().is_infinite()) {
    throw InvalidParameter("lift expects a cos^n (infinite-sphere) coefficient sequence");
  }
  if (d < 2) throw InvalidParameter("lift target needs d >= 2");
  if (!(cos_power.tail_bound() < tolerance)) {
    throw TruncationError("input tail bound " + std::to_string(cos_power.tail_bound()) +
                              " is not below " + std::to_string(tolerance),
                          cos_power.tail_bound());
  }
  const int N = cos_power.truncation();
  std::vector<std::vector<std::pair<double, TemporalCovariance>>> terms(
      static_cast<std::size_t>(N) + 1);
  for (int n = 0; n <= N; ++n) {
    const std::vector<double> beta = monomial_expansion_coeffs(d, n);
    for (int k = 0; k <= n / 2; ++k) terms[n - 2 * k].emplace_back(beta[k], cos_power.level(n));
  }
  std::vector<TemporalCovariance> levels;
  levels.reserve(terms.size());
  for (auto& t : terms) levels.push_back(linear_combination(t));
  return CoefficientSequence(SphereDimension::finite(d), std::move(levels), cos_power.tail_bound());
}

SpaceTimeCovariance lift_s_infinity_to_sd(const SpaceTimeCovariance& C, int d, double tolerance) {
  CoefficientSequence lifted = lift_s_infinity_to_sd(C.coefficients(), d, tolerance);
  if (!C.has_closed_form()) return SpaceTimeCovariance(std::move(lifted));
  return SpaceTimeCovariance(std::move(lifted), *C.closed_form_tag(),
                             [C](double theta, double t) { return C.closed_form(theta, t); });
}

}  // namespace stfields
