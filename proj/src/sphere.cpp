#include "stfields/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "stfields/errors.hpp"
#include "stfields/gegenbauer.hpp"

namespace stfields {

namespace {

void require_same_dim(const SpherePoint& a, const SpherePoint& b) {
  if (a.dim() != b.dim()) {
    throw InvalidParameter("sphere points of different dimension (" + std::to_string(a.dim()) +
                           " vs " + std::to_string(b.dim()) + ")");
  }
}

}  // namespace

SpherePoint::SpherePoint(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.size() < 2) throw InvalidParameter("sphere point needs at least two coordinates");
  double norm2 = 0.0;
  for (double c : coords_) {
    if (!std::isfinite(c)) throw InvalidParameter("non-finite sphere point coordinate");
    norm2 += c * c;
  }
  if (!(norm2 > 0.0)) throw InvalidParameter("cannot normalise the zero vector");
  const double inv = 1.0 / std::sqrt(norm2);
  for (double& c : coords_) c *= inv;
}

SpherePoint SpherePoint::on_circle(double theta) {
  return SpherePoint({std::cos(theta), std::sin(theta)}, Unchecked{});
}

SpherePoint SpherePoint::on_s2(double colatitude, double longitude) {
  const double s = std::sin(colatitude);
  return SpherePoint({s * std::cos(longitude), s * std::sin(longitude), std::cos(colatitude)},
                     Unchecked{});
}

double SpherePoint::dot(const SpherePoint& other) const {
  require_same_dim(*this, other);
  double sum = 0.0;
  for (std::size_t i = 0; i < coords_.size(); ++i) sum += coords_[i] * other.coords_[i];
  return sum;
}

double geodesic_distance(const SpherePoint& a, const SpherePoint& b) {
  return std::acos(std::clamp(a.dot(b), -1.0, 1.0));
}

double chordal_distance(const SpherePoint& a, const SpherePoint& b) {
  require_same_dim(a, b);
  double sum = 0.0;
  for (std::size_t i = 0; i < a.coords().size(); ++i) {
    const double diff = a[i] - b[i];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

SpherePoint sample_uniform(int d, Rng& rng) {
  if (d < 1) throw InvalidParameter("sphere dimension must be >= 1");
  std::vector<double> v(static_cast<std::size_t>(d) + 1);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (;;) {
    double norm2 = 0.0;
    for (double& c : v) {
      c = normal(rng);
      norm2 += c * c;
    }
    if (norm2 > 1e-300) return SpherePoint(std::move(v));
  }
}

SpherePoint rotate_towards(const SpherePoint& from, const SpherePoint& towards, double theta) {
  const double c = from.dot(towards);
  std::vector<double> tangent(from.coords().size());
  double norm2 = 0.0;
  for (std::size_t i = 0; i < tangent.size(); ++i) {
    tangent[i] = towards[i] - c * from[i];
    norm2 += tangent[i] * tangent[i];
  }
  if (!(norm2 > 1e-24)) throw InvalidParameter("rotation direction is parallel to the start point");
  const double inv = 1.0 / std::sqrt(norm2);
  std::vector<double> out(tangent.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = std::cos(theta) * from[i] + std::sin(theta) * tangent[i] * inv;
  }
  return SpherePoint(std::move(out));
}

GaussLegendreRule gauss_legendre(int n) {
  if (n < 1) throw InvalidParameter("Gauss-Legendre order must be positive");
  if (n == 1) return {{0.0}, {2.0}};
  GaussLegendreRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Newton iteration on P_n from the usual cosine initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double derivative = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p_prev = 1.0;
      double p = x;
      for (int k = 2; k <= n; ++k) {
        const double p_next = ((2.0 * k - 1.0) * x * p - (k - 1.0) * p_prev) / k;
        p_prev = p;
        p = p_next;
      }
      derivative = n * (x * p - p_prev) / (x * x - 1.0);
      const double step = p / derivative;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * derivative * derivative);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

SphereQuadrature product_quadrature_s2(int polar_order, int azimuth_order) {
  if (polar_order < 2 || azimuth_order < 2) {
    throw InvalidParameter("quadrature orders must be >= 2");
  }
  const GaussLegendreRule gl = gauss_legendre(polar_order);
  SphereQuadrature quad;
  quad.nodes.reserve(static_cast<std::size_t>(polar_order) * azimuth_order);
  quad.weights.reserve(quad.nodes.capacity());
  const double dphi = 2.0 * std::numbers::pi / azimuth_order;
  for (int i = 0; i < polar_order; ++i) {
    const double z = gl.nodes[i];
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    for (int j = 0; j < azimuth_order; ++j) {
      const double phi = j * dphi;
      quad.nodes.push_back(SpherePoint({r * std::cos(phi), r * std::sin(phi), z}));
      quad.weights.push_back(gl.weights[i] * dphi);
    }
  }
  quad.exactness_degree = std::min(2 * polar_order - 1, azimuth_order - 1);
  return quad;
}

double integrate_s2(const std::function<double(const SpherePoint&)>& integrand,
                    const SphereQuadrature& quad) {
  double sum = 0.0;
  for (std::size_t k = 0; k < quad.nodes.size(); ++k) {
    const double value = integrand(quad.nodes[k]);
    if (!std::isfinite(value)) {
      throw NumericError("non-finite integrand at quadrature node " + std::to_string(k));
    }
    sum += quad.weights[k] * value;
  }
  return sum;
}

MonteCarloIntegral integrate_monte_carlo(int d,
                                         const std::function<double(const SpherePoint&)>& integrand,
                                         std::size_t samples, Rng& rng) {
  if (samples < 2) throw InvalidParameter("Monte Carlo integration needs at least two samples");
  const double omega = sphere_surface_area(d);
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    const double value = integrand(sample_uniform(d, rng));
    if (!std::isfinite(value)) {
      throw NumericError("non-finite integrand at Monte Carlo sample " + std::to_string(k));
    }
    const double delta = value - mean;
    mean += delta / static_cast<double>(k + 1);
    m2 += delta * (value - mean);
  }
  const double variance = m2 / static_cast<double>(samples - 1);
  return {omega * mean, omega * std::sqrt(variance / static_cast<double>(samples))};
}

}  // namespace stfields
