#pragma once

#include <cstdint>
#include <vector>

namespace stfields {

inline constexpr int kDefaultDegreeLimit = 512;

// Arguments within this distance outside [-1, 1] are clamped onto the
// interval; anything further is a domain error.
inline constexpr double kCosineClampBand = 1e-12;

/// Gegenbauer index attached to S^d.
constexpr double sphere_lambda(int d) { return 0.5 * (d - 1); }

/// Clamp a cosine that drifted past +-1 by rounding; throws DomainError
/// outside the clamp band.
double clamp_cosine(double x);

/// P_n^{(lambda)}(x) by the three-term recurrence.
double gegenbauer(double lambda, int n, double x);

/// P_0..P_N at x from one recurrence sweep.
std::vector<double> gegenbauer_all(double lambda, int max_degree, double x);
void gegenbauer_all(double lambda, int max_degree, double x, std::vector<double>& out);

/// P_n^{(lambda)}(1) = binomial(2 lambda + n - 1, n).
double gegenbauer_at_one(double lambda, int n);

/// Taylor coefficients in u of (1 - 2ux + u^2)^{-lambda} up to u^N.
///
/// Computed as the Cauchy product of the two binomial series of
/// (1 - u e^{i theta})^{-lambda} and (1 - u e^{-i theta})^{-lambda}, x = cos theta.
/// Shares no code with the recurrence and serves as its oracle.
std::vector<double> generating_function_coeffs(double lambda, double x, int max_degree);

/// Normalising factor alpha_n = sqrt((2n + d - 1) / (d - 1)), d >= 2.
double alpha(int d, int n);

/// Surface area of the unit sphere S^d in R^{d+1}.
double sphere_surface_area(int d);

/// Dimension of the space of degree-n spherical harmonics on S^d.
std::uint64_t harmonic_dimension(int d, int n);

/// beta_{k,n}, k = 0..floor(n/2): x^n = sum_k beta_{k,n} P_{n-2k}^{((d-1)/2)}(x).
std::vector<double> monomial_expansion_coeffs(int d, int n);

/// Diagonal constant of the weighted orthogonality relation on [-1, 1]
/// with weight (1 - x^2)^{lambda - 1/2}.
double gegenbauer_norm_squared(double lambda, int n);

/// Degree-bounded evaluator for a fixed lambda.
class GegenbauerBasis {
 public:
  GegenbauerBasis(double lambda, int max_degree, int degree_limit = kDefaultDegreeLimit);

  double lambda() const noexcept { return lambda_; }
  int max_degree() const noexcept { return max_degree_; }

  std::vector<double> evaluate(double x) const;
  void evaluate(double x, std::vector<double>& out) const;
  double at_one(int n) const;

 private:
  double lambda_;
  int max_degree_;
  std::vector<double> at_one_;
};

/// Per-dimension constants for S^d.
class SphereConstants {
 public:
  explicit SphereConstants(int d);

  int d() const noexcept { return d_; }
  double lambda() const noexcept { return sphere_lambda(d_); }
  double omega() const noexcept { return omega_; }
  double alpha(int n) const;  // d >= 2 only
  std::uint64_t h(int n) const { return harmonic_dimension(d_, n); }

 private:
  int d_;
  double omega_;
};

}  // namespace stfields
