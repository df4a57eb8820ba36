#include "stfields/simulate.hpp"

#include <cmath>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "stfields/errors.hpp"
#include "stfields/gegenbauer.hpp"

namespace stfields {

// ---------------------------------------------------------------------------
// ProcessSampler

ProcessSampler::ProcessSampler(const TemporalCovariance& B, double variance_scale,
                               std::vector<double> times)
    : m_(B.m()), times_(std::move(times)) {
  if (times_.empty()) throw InvalidParameter("process sampler needs a non-empty time grid");
  if (!(variance_scale >= 0.0)) throw InvalidParameter("variance scale must be non-negative");
  const Matrix gram = variance_scale * block_gram(B, times_);
  target_ = 0.5 * (gram + gram.transpose());
  const auto dim = target_.rows();
  const double trace = target_.trace();
  if (target_.cwiseAbs().maxCoeff() == 0.0) {
    zero_ = true;
    factor_ = Matrix::Zero(dim, dim);
    return;
  }
  if (!(trace > 0.0)) throw ModelInvalid("block covariance has non-positive trace");

  Matrix jittered = target_;
  jittered.diagonal().array() += 1e-10 * trace;
  Eigen::LLT<Matrix> llt(jittered);
  if (llt.info() == Eigen::Success) {
    factor_ = llt.matrixL();
    return;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(target_);
  if (eig.info() != Eigen::Success) throw NumericError("eigendecomposition of block covariance failed");
  const double min_eig = eig.eigenvalues().minCoeff();
  if (min_eig < -1e-6 * trace) {
    throw ModelInvalid("block covariance is not positive semidefinite (min eigenvalue " +
                       std::to_string(min_eig) + ", trace " + std::to_string(trace) + ")");
  }
  const Vector root = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  factor_ = eig.eigenvectors() * root.asDiagonal();
}

Matrix ProcessSampler::draw(Rng& rng) const {
  const auto n = static_cast<Eigen::Index>(times_.size());
  Matrix out(n, m_);
  if (zero_) {
    out.setZero();
    return out;
  }
  Vector xi(factor_.cols());
  fill_standard_normal(rng, std::span<double>(xi.data(), static_cast<std::size_t>(xi.size())));
  const Vector z = factor_ * xi;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (int c = 0; c < m_; ++c) out(i, c) = z(i * m_ + c);
  }
  return out;
}

double ProcessSampler::reconstruction_residual() const {
  return (factor_ * factor_.transpose() - target_).cwiseAbs().maxCoeff();
}

Matrix sample_stationary_vector_process(const TemporalCovariance& B, double variance_scale,
                                        const std::vector<double>& times, Rng& rng) {
  return ProcessSampler(B, variance_scale, times).draw(rng);
}

// ---------------------------------------------------------------------------
// FieldSimulator

FieldSimulator::FieldSimulator(SimulationConfig config) : config_(std::move(config)), d_(0) {
  const CoefficientSequence& coeffs = config_.coefficients;
  if (coeffs.d().is_infinite()) {
    throw InvalidParameter("no series simulator for the infinite-dimensional sphere");
  }
  d_ = coeffs.d().value();
  if (config_.sites.empty()) throw InvalidParameter("simulation needs at least one site");
  if (config_.times.empty()) throw InvalidParameter("simulation needs at least one time");
  if (config_.replicates < 1) throw InvalidParameter("replicate count must be >= 1");
  for (const auto& x : config_.sites) {
    if (x.dim() != d_) {
      throw InvalidParameter("site dimension " + std::to_string(x.dim()) +
                             " does not match sphere dimension " + std::to_string(d_));
    }
  }
  if (coeffs.domain() == TimeDomain::Discrete) {
    for (double t : config_.times) {
      if (t != std::round(t)) throw DomainError("discrete-time model with non-integer time " + std::to_string(t));
    }
  }
  if (!(coeffs.tail_bound() < config_.tail_tolerance) && coeffs.tail_bound() != 0.0) {
    throw TruncationError("coefficient tail bound " + std::to_string(coeffs.tail_bound()) +
                              " is not below " + std::to_string(config_.tail_tolerance),
                          coeffs.tail_bound());
  }
  samplers_.reserve(coeffs.levels().size());
  for (int n = 0; n <= coeffs.truncation(); ++n) {
    const double scale = d_ >= 2 ? 1.0 * (2 * n + d_ - 1) / (d_ - 1) : 1.0;  // alpha_n^2
    samplers_.emplace_back(coeffs.level(n), scale, config_.times);
  }
}

SeriesDraw FieldSimulator::draw_series(Rng& rng) const {
  SeriesDraw draw;
  if (d_ >= 2) draw.U = sample_uniform(d_, rng);
  draw.levels.reserve(samplers_.size());
  for (const auto& s : samplers_) draw.levels.push_back(s.draw(rng));
  if (d_ == 1) {
    draw.sine_levels.reserve(samplers_.size());
    for (const auto& s : samplers_) draw.sine_levels.push_back(s.draw(rng));
  }
  return draw;
}

Vector FieldSimulator::evaluate(const SeriesDraw& draw, const SpherePoint& x, std::size_t time) const {
  const int N = truncation();
  const auto row = static_cast<Eigen::Index>(time);
  Vector z = Vector::Zero(m());
  if (d_ >= 2) {
    const std::vector<double> p = gegenbauer_all(sphere_lambda(d_), N, x.dot(*draw.U));
    for (int n = 0; n <= N; ++n) z += p[n] * draw.levels[n].row(row).transpose();
  } else {
    const double theta = std::atan2(x[1], x[0]);
    for (int n = 0; n <= N; ++n) {
      z += std::cos(n * theta) * draw.levels[n].row(row).transpose() +
           std::sin(n * theta) * draw.sine_levels[n].row(row).transpose();
    }
  }
  return z;
}

Vector FieldSimulator::level_term(const SeriesDraw& draw, int n, const SpherePoint& x,
                                  std::size_t time) const {
  if (n < 0 || n > truncation()) throw InvalidParameter("level outside the truncated series");
  const auto row = static_cast<Eigen::Index>(time);
  if (d_ >= 2) {
    return gegenbauer(sphere_lambda(d_), n, x.dot(*draw.U)) * draw.levels[n].row(row).transpose();
  }
  const double theta = std::atan2(x[1], x[0]);
  return std::cos(n * theta) * draw.levels[n].row(row).transpose() +
         std::sin(n * theta) * draw.sine_levels[n].row(row).transpose();
}

FieldRealization FieldSimulator::realize(const SeriesDraw& draw, std::size_t replicate_id) const {
  FieldRealization out;
  out.replicate_id = replicate_id;
  out.n_sites = config_.sites.size();
  out.n_times = config_.times.size();
  out.m = m();
  out.U = draw.U;
  out.values.resize(out.n_sites * out.n_times * static_cast<std::size_t>(out.m));
  for (std::size_t s = 0; s < out.n_sites; ++s) {
    for (std::size_t j = 0; j < out.n_times; ++j) {
      const Vector z = evaluate(draw, config_.sites[s], j);
      for (int c = 0; c < out.m; ++c) out.at(s, j, c) = z(c);
    }
  }
  return out;
}

FieldRealization FieldSimulator::simulate(std::size_t replicate_id) const {
  Rng rng = make_stream(config_.seed, replicate_id);
  return realize(draw_series(rng), replicate_id);
}

std::vector<FieldRealization> FieldSimulator::simulate_replicates(std::size_t first,
                                                                  std::size_t count) const {
  std::vector<FieldRealization> out(count);
  const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < n; ++r) {
    out[static_cast<std::size_t>(r)] = simulate(first + static_cast<std::size_t>(r));
  }
  return out;
}

std::vector<FieldRealization> FieldSimulator::simulate_replicates_serial(std::size_t first,
                                                                         std::size_t count) const {
  std::vector<FieldRealization> out;
  out.reserve(count);
  for (std::size_t r = 0; r < count; ++r) out.push_back(simulate(first + r));
  return out;
}

FieldRealization simulate_theorem4(const SimulationConfig& config, Rng& rng) {
  if (config.coefficients.d().is_infinite() || config.coefficients.d().value() < 2) {
    throw InvalidParameter("the ultraspherical series simulator needs 2 <= d < oo");
  }
  FieldSimulator sim(config);
  return sim.realize(sim.draw_series(rng), 0);
}

FieldRealization simulate_circle_theorem5(const SimulationConfig& config, Rng& rng) {
  if (config.coefficients.d().is_infinite() || config.coefficients.d().value() != 1) {
    throw InvalidParameter("the circle simulator needs d = 1");
  }
  FieldSimulator sim(config);
  return sim.realize(sim.draw_series(rng), 0);
}

// ---------------------------------------------------------------------------
// Elementary fields and coefficient recovery

double elementary_field_lemma2(int d, int n, const SpherePoint& U, const SpherePoint& x) {
  if (U.dim() != d || x.dim() != d) throw InvalidParameter("point dimension does not match d");
  return alpha(d, n) * gegenbauer(sphere_lambda(d), n, x.dot(U));
}

double cospow_field_lemma3(int d, int n, const SpherePoint& U, const SpherePoint& x) {
  if (U.dim() != d || x.dim() != d) throw InvalidParameter("point dimension does not match d");
  const std::vector<double> beta = monomial_expansion_coeffs(d, n);
  const std::vector<double> p = gegenbauer_all(sphere_lambda(d), n, x.dot(U));
  double z = 0.0;
  for (int k = 0; k <= n / 2; ++k) {
    // Weight alpha_{n-2k}: the level's own normalising factor.
    z += std::sqrt(beta[k]) * alpha(d, n - 2 * k) * p[n - 2 * k];
  }
  return z;
}

Vector extract_level_coefficients(const std::vector<Vector>& values_at_nodes, int n,
                                  const SpherePoint& U, const SphereQuadrature& quad,
                                  int field_degree) {
  if (U.dim() != 2) throw InvalidParameter("coefficient extraction is implemented on S^2");
  if (n < 0 || field_degree < 0) throw InvalidParameter("negative degree");
  if (quad.exactness_degree < field_degree + n) {
    throw ConfigError("quadrature exact to degree " + std::to_string(quad.exactness_degree) +
                      " cannot resolve degree " + std::to_string(field_degree + n));
  }
  if (values_at_nodes.size() != quad.nodes.size() || values_at_nodes.empty()) {
    throw InvalidParameter("one field value per quadrature node is required");
  }
  constexpr double kLambda = 0.5;
  Vector sum = Vector::Zero(values_at_nodes.front().size());
  for (std::size_t k = 0; k < quad.nodes.size(); ++k) {
    const Vector& z = values_at_nodes[k];
    if (z.size() != sum.size()) throw InvalidParameter("field values differ in length");
    if (!z.allFinite()) throw NumericError("non-finite field value at node " + std::to_string(k));
    sum += quad.weights[k] * gegenbauer(kLambda, n, quad.nodes[k].dot(U)) * z;
  }
  const double scale = alpha(2, n) * alpha(2, n) / (sphere_surface_area(2) * gegenbauer_at_one(kLambda, n));
  return scale * sum;
}

Vector extract_level_coefficients(const std::function<Vector(const SpherePoint&)>& field, int n,
                                  const SpherePoint& U, const SphereQuadrature& quad,
                                  int field_degree) {
  std::vector<Vector> values;
  values.reserve(quad.nodes.size());
  for (const auto& x : quad.nodes) values.push_back(field(x));
  return extract_level_coefficients(values, n, U, quad, field_degree);
}

}  // namespace stfields
