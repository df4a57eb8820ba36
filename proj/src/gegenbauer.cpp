#include "stfields/gegenbauer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "stfields/errors.hpp"

namespace stfields {

namespace {

void require_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw InvalidParameter("Gegenbauer index lambda must be positive, got " +
                           std::to_string(lambda));
  }
}

void require_degree(int n) {
  if (n < 0) throw InvalidParameter("negative polynomial degree " + std::to_string(n));
}

}  // namespace

double clamp_cosine(double x) {
  if (std::isnan(x) || std::abs(x) > 1.0 + kCosineClampBand) {
    throw DomainError("argument " + std::to_string(x) + " outside [-1, 1]");
  }
  return std::clamp(x, -1.0, 1.0);
}

double gegenbauer(double lambda, int n, double x) {
  require_lambda(lambda);
  require_degree(n);
  x = clamp_cosine(x);
  if (n == 0) return 1.0;
  double prev = 1.0;
  double curr = 2.0 * lambda * x;
  for (int k = 2; k <= n; ++k) {
    const double next = (2.0 * (lambda + k - 1) * x * curr - (2.0 * lambda + k - 2) * prev) / k;
    prev = curr;
    curr = next;
  }
  return curr;
}

void gegenbauer_all(double lambda, int max_degree, double x, std::vector<double>& out) {
  require_lambda(lambda);
  require_degree(max_degree);
  x = clamp_cosine(x);
  out.resize(static_cast<std::size_t>(max_degree) + 1);
  out[0] = 1.0;
  if (max_degree == 0) return;
  out[1] = 2.0 * lambda * x;
  for (int k = 2; k <= max_degree; ++k) {
    out[k] = (2.0 * (lambda + k - 1) * x * out[k - 1] - (2.0 * lambda + k - 2) * out[k - 2]) / k;
  }
}

std::vector<double> gegenbauer_all(double lambda, int max_degree, double x) {
  std::vector<double> out;
  gegenbauer_all(lambda, max_degree, x, out);
  return out;
}

double gegenbauer_at_one(double lambda, int n) {
  require_lambda(lambda);
  require_degree(n);
  if (n == 0) return 1.0;
  const double two_lambda = 2.0 * lambda;
  double value;
  if (two_lambda == std::floor(two_lambda)) {
    // Integer top argument: exact running product of binomial(2 lambda + n - 1, n).
    value = 1.0;
    for (int k = 1; k <= n; ++k) value = value * (two_lambda + k - 1) / k;
  } else {
    const double log_value =
        std::lgamma(two_lambda + n) - std::lgamma(n + 1.0) - std::lgamma(two_lambda);
    value = std::exp(log_value);
  }
  if (!std::isfinite(value)) {
    throw RangeError("P_n(1) overflows at degree " + std::to_string(n));
  }
  return value;
}

std::vector<double> generating_function_coeffs(double lambda, double x, int max_degree) {
  require_lambda(lambda);
  require_degree(max_degree);
  x = clamp_cosine(x);
  const double theta = std::acos(x);
  // a_k = (lambda)_k / k!, the binomial-series coefficients of (1 - v)^{-lambda}.
  std::vector<double> a(static_cast<std::size_t>(max_degree) + 1);
  a[0] = 1.0;
  for (int k = 1; k <= max_degree; ++k) a[k] = a[k - 1] * (lambda + k - 1) / k;
  std::vector<double> coeffs(a.size(), 0.0);
  for (int n = 0; n <= max_degree; ++n) {
    double sum = 0.0;
    for (int k = 0; k <= n; ++k) sum += a[k] * a[n - k] * std::cos((n - 2 * k) * theta);
    coeffs[n] = sum;
  }
  return coeffs;
}

double alpha(int d, int n) {
  if (d < 2) throw InvalidParameter("alpha_n requires d >= 2, got d=" + std::to_string(d));
  require_degree(n);
  return std::sqrt(static_cast<double>(2 * n + d - 1) / (d - 1));
}

double sphere_surface_area(int d) {
  if (d < 1) throw InvalidParameter("sphere dimension must be >= 1, got " + std::to_string(d));
  const double half = 0.5 * (d + 1);
  return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

std::uint64_t harmonic_dimension(int d, int n) {
  if (d < 1) throw InvalidParameter("sphere dimension must be >= 1, got " + std::to_string(d));
  require_degree(n);
  if (n == 0) return 1;
  if (d == 1) return 2;
  // (2n + d - 1) * binomial(n + d - 2, n) / (d - 1), built exactly in 128 bits.
  __extension__ using u128 = unsigned __int128;
  u128 binom = 1;
  constexpr auto kMax = static_cast<u128>(std::numeric_limits<std::uint64_t>::max());
  for (int k = 1; k <= n; ++k) {
    binom = binom * static_cast<unsigned>(d - 2 + k) / static_cast<unsigned>(k);
    if (binom > kMax) {
      throw RangeError("harmonic dimension overflows at degree " + std::to_string(n));
    }
  }
  const u128 h = binom * static_cast<unsigned>(2 * n + d - 1) / static_cast<unsigned>(d - 1);
  if (h > kMax) throw RangeError("harmonic dimension overflows at degree " + std::to_string(n));
  return static_cast<std::uint64_t>(h);
}

std::vector<double> monomial_expansion_coeffs(int d, int n) {
  if (d < 2) throw InvalidParameter("monomial expansion requires d >= 2");
  require_degree(n);
  const double lambda = sphere_lambda(d);
  std::vector<double> beta(static_cast<std::size_t>(n / 2) + 1);
  for (int k = 0; k <= n / 2; ++k) {
    const double log_beta = std::lgamma(n + 1.0) + std::log(n - 2 * k + lambda) + std::lgamma(lambda) -
                            n * std::numbers::ln2 - std::lgamma(k + 1.0) -
                            std::lgamma(n - k + lambda + 1.0);
    const double value = std::exp(log_beta);
    if (!(value > 0.0) || !std::isfinite(value)) {
      throw RangeError("monomial expansion coefficient out of range at n=" + std::to_string(n) +
                       ", k=" + std::to_string(k));
    }
    beta[k] = value;
  }
  return beta;
}

double gegenbauer_norm_squared(double lambda, int n) {
  require_lambda(lambda);
  require_degree(n);
  const double log_value = std::log(std::numbers::pi) + (1.0 - 2.0 * lambda) * std::numbers::ln2 +
                           std::lgamma(n + 2.0 * lambda) - std::lgamma(n + 1.0) -
                           std::log(lambda + n) - 2.0 * std::lgamma(lambda);
  return std::exp(log_value);
}

GegenbauerBasis::GegenbauerBasis(double lambda, int max_degree, int degree_limit)
    : lambda_(lambda), max_degree_(max_degree) {
  require_lambda(lambda);
  require_degree(max_degree);
  if (max_degree > degree_limit) {
    throw InvalidParameter("degree " + std::to_string(max_degree) + " exceeds the limit " +
                           std::to_string(degree_limit));
  }
  at_one_.reserve(static_cast<std::size_t>(max_degree) + 1);
  for (int n = 0; n <= max_degree; ++n) at_one_.push_back(gegenbauer_at_one(lambda, n));
}

std::vector<double> GegenbauerBasis::evaluate(double x) const {
  return gegenbauer_all(lambda_, max_degree_, x);
}

void GegenbauerBasis::evaluate(double x, std::vector<double>& out) const {
  gegenbauer_all(lambda_, max_degree_, x, out);
}

double GegenbauerBasis::at_one(int n) const {
  if (n < 0 || n > max_degree_) throw InvalidParameter("degree outside basis range");
  return at_one_[static_cast<std::size_t>(n)];
}

SphereConstants::SphereConstants(int d) : d_(d), omega_(sphere_surface_area(d)) {}

double SphereConstants::alpha(int n) const { return stfields::alpha(d_, n); }

}  // namespace stfields
