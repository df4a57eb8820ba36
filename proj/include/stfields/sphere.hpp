#pragma once

#include <functional>
#include <span>
#include <vector>

#include "stfields/random.hpp"

namespace stfields {

/// Unit vector in R^{d+1}.
class SpherePoint {
 public:
  /// Normalises `coords`; throws InvalidParameter for empty or zero input.
  explicit SpherePoint(std::vector<double> coords);

  /// Point on S^1 at polar angle theta.
  static SpherePoint on_circle(double theta);
  /// Point on S^2 from colatitude and longitude.
  static SpherePoint on_s2(double colatitude, double longitude);

  int dim() const noexcept { return static_cast<int>(coords_.size()) - 1; }
  std::span<const double> coords() const noexcept { return coords_; }
  double operator[](std::size_t i) const { return coords_[i]; }

  /// Inner product; throws InvalidParameter on dimension mismatch.
  double dot(const SpherePoint& other) const;

 private:
  struct Unchecked {};
  SpherePoint(std::vector<double> coords, Unchecked) : coords_(std::move(coords)) {}
  std::vector<double> coords_;
};

double geodesic_distance(const SpherePoint& a, const SpherePoint& b);
double chordal_distance(const SpherePoint& a, const SpherePoint& b);

/// Uniform draw on S^d by normalising a (d+1)-vector of standard normals.
SpherePoint sample_uniform(int d, Rng& rng);

/// Point at geodesic angle `theta` from `from`, moving towards `towards`
/// along the great circle they span.
SpherePoint rotate_towards(const SpherePoint& from, const SpherePoint& towards, double theta);

struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1], exact to degree 2n - 1.
GaussLegendreRule gauss_legendre(int n);

struct SphereQuadrature {
  std::vector<SpherePoint> nodes;
  std::vector<double> weights;
  int exactness_degree = 0;
};

inline constexpr int kDefaultPolarOrder = 64;
inline constexpr int kDefaultAzimuthOrder = 128;

/// Gauss-Legendre in the polar cosine times the trapezoid rule in azimuth.
SphereQuadrature product_quadrature_s2(int polar_order = kDefaultPolarOrder,
                                       int azimuth_order = kDefaultAzimuthOrder);

double integrate_s2(const std::function<double(const SpherePoint&)>& integrand,
                    const SphereQuadrature& quad);

struct MonteCarloIntegral {
  double estimate = 0.0;
  double standard_error = 0.0;
};

/// Plain Monte Carlo over S^d (used for d > 2, where no product rule is built).
MonteCarloIntegral integrate_monte_carlo(int d,
                                         const std::function<double(const SpherePoint&)>& integrand,
                                         std::size_t samples, Rng& rng);

}  // namespace stfields
