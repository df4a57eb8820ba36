#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "stfields/covariance.hpp"
#include "stfields/random.hpp"
#include "stfields/sphere.hpp"

namespace stfields {

/// Zero-mean Gaussian sampler for a stationary vector process on a fixed
/// time grid, with covariance scale * [B(t_i - t_j)].
///
/// The block covariance is factorised once: Cholesky with a 1e-10 * trace
/// diagonal jitter, falling back to an eigendecomposition with negative
/// eigenvalues clipped to zero. Eigenvalues below -1e-6 * trace are a
/// ModelInvalid error, never clipped.
class ProcessSampler {
 public:
  ProcessSampler(const TemporalCovariance& B, double variance_scale, std::vector<double> times);

  /// |times| x m draw; row i is the process value at times[i].
  Matrix draw(Rng& rng) const;

  const Matrix& target_covariance() const noexcept { return target_; }
  const Matrix& factor() const noexcept { return factor_; }
  /// max |L L^T - K| over entries.
  double reconstruction_residual() const;

 private:
  int m_;
  std::vector<double> times_;
  Matrix target_;
  Matrix factor_;
  bool zero_ = false;
};

Matrix sample_stationary_vector_process(const TemporalCovariance& B, double variance_scale,
                                        const std::vector<double>& times, Rng& rng);

struct SimulationConfig {
  CoefficientSequence coefficients;
  std::vector<SpherePoint> sites;  // points on S^d; on S^1 use SpherePoint::on_circle
  std::vector<double> times;
  std::size_t replicates = 1;
  std::uint64_t seed = 0;
  double tail_tolerance = 1e-8;
};

/// Values Z(x_k; t_j) in R^m for one replicate, stored (site, time, component).
struct FieldRealization {
  std::size_t replicate_id = 0;
  std::size_t n_sites = 0;
  std::size_t n_times = 0;
  int m = 0;
  std::vector<double> values;
  std::optional<SpherePoint> U;

  double at(std::size_t site, std::size_t time, int component) const {
    return values[(site * n_times + time) * static_cast<std::size_t>(m) + component];
  }
  double& at(std::size_t site, std::size_t time, int component) {
    return values[(site * n_times + time) * static_cast<std::size_t>(m) + component];
  }
};

/// The random ingredients of one replicate: U (d >= 2) and the level
/// processes on the time grid. On the circle `levels` holds V_{n1} and
/// `sine_levels` V_{n2}.
struct SeriesDraw {
  std::optional<SpherePoint> U;
  std::vector<Matrix> levels;
  std::vector<Matrix> sine_levels;
};

/// Truncated series simulator.
///   d >= 2: Z(x; t) = sum_n V_n(t) P_n(x'U), cov V_n = alpha_n^2 B_n
///   d = 1:  Z(x; t) = sum_n V_n1(t) cos(n theta) + V_n2(t) sin(n theta), cov V_nk = B_n
class FieldSimulator {
 public:
  explicit FieldSimulator(SimulationConfig config);

  const SimulationConfig& config() const noexcept { return config_; }
  int d() const noexcept { return d_; }
  int m() const noexcept { return config_.coefficients.m(); }
  int truncation() const noexcept { return config_.coefficients.truncation(); }

  SeriesDraw draw_series(Rng& rng) const;

  /// Field value at an arbitrary point for time index `time`.
  Vector evaluate(const SeriesDraw& draw, const SpherePoint& x, std::size_t time) const;

  /// Contribution of level n alone (V_n(t) P_n(x'U), or its circle analogue).
  Vector level_term(const SeriesDraw& draw, int n, const SpherePoint& x, std::size_t time) const;

  FieldRealization realize(const SeriesDraw& draw, std::size_t replicate_id) const;

  /// Replicate `replicate_id` drawn from its own stream (seed, replicate_id).
  FieldRealization simulate(std::size_t replicate_id) const;

  /// Replicates first..first+count-1, OpenMP-parallel over replicates.
  std::vector<FieldRealization> simulate_replicates(std::size_t first, std::size_t count) const;
  /// Serial reference for simulate_replicates; results are bit-identical.
  std::vector<FieldRealization> simulate_replicates_serial(std::size_t first,
                                                           std::size_t count) const;

 private:
  SimulationConfig config_;
  int d_;
  std::vector<ProcessSampler> samplers_;
};

FieldRealization simulate_theorem4(const SimulationConfig& config, Rng& rng);
FieldRealization simulate_circle_theorem5(const SimulationConfig& config, Rng& rng);

/// alpha_n P_n^{((d-1)/2)}(x'U): mean zero (n >= 1), covariance P_n(cos theta) over U.
double elementary_field_lemma2(int d, int n, const SpherePoint& U, const SpherePoint& x);

/// sum_k sqrt(beta_{k,n}) alpha_{n-2k} P_{n-2k}(x'U), whose second moment
/// E[Z(x1) Z(x2)] over U equals cos^n theta. For even n the k = n/2 term is
/// the constant sqrt(beta_{n/2,n}), so that moment is not centred.
double cospow_field_lemma3(int d, int n, const SpherePoint& U, const SpherePoint& x);

/// V_n(t) = alpha_n^2 / (omega_2 P_n(1)) * integral over S^2 of Z(x; t) P_n(x'U),
/// evaluated with `quad`. `field_degree` is the field's highest level; the
/// rule must integrate degree field_degree + n exactly.
Vector extract_level_coefficients(const std::function<Vector(const SpherePoint&)>& field, int n,
                                  const SpherePoint& U, const SphereQuadrature& quad,
                                  int field_degree);

/// Same integral from field values already evaluated at quad.nodes, in order.
Vector extract_level_coefficients(const std::vector<Vector>& values_at_nodes, int n,
                                  const SpherePoint& U, const SphereQuadrature& quad,
                                  int field_degree);

void set_num_threads(int threads);
int max_threads();

}  // namespace stfields
