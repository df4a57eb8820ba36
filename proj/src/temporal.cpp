#include "stfields/temporal.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "stfields/errors.hpp"

namespace stfields {

namespace {

void require_square(const Matrix& A, const char* what) {
  if (A.rows() != A.cols() || A.rows() == 0) {
    throw InvalidParameter(std::string(what) + " must be a non-empty square matrix");
  }
}

void require_psd(const Matrix& A, const char* what) {
  require_square(A, what);
  if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, A.cwiseAbs().maxCoeff())) {
    throw ModelInvalid(std::string(what) + " is not symmetric");
  }
  const double trace = A.trace();
  if (min_symmetric_eigenvalue(A) < -1e-10 * std::max(trace, 0.0)) {
    throw ModelInvalid(std::string(what) + " is not positive semidefinite");
  }
}

std::string format_param(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

const char* to_string(TimeDomain domain) {
  return domain == TimeDomain::Discrete ? "discrete" : "continuous";
}

std::string ModelDescriptor::to_string() const {
  std::string out = family;
  if (!params.empty()) {
    out += "(";
    for (std::size_t i = 0; i < params.size(); ++i) {
      if (i) out += ", ";
      out += params[i].first + "=" + format_param(params[i].second);
    }
    out += ")";
  }
  return out;
}

TemporalCovariance::TemporalCovariance(int m, TimeDomain domain, Evaluator evaluator,
                                       ModelDescriptor descriptor)
    : m_(m),
      domain_(domain),
      evaluator_(std::make_shared<const Evaluator>(std::move(evaluator))),
      descriptor_(std::move(descriptor)) {
  if (m < 1) throw InvalidParameter("matrix dimension must be >= 1");
  if (!*evaluator_) throw InvalidParameter("empty covariance evaluator");
}

Matrix TemporalCovariance::operator()(double t) const {
  if (!std::isfinite(t)) throw DomainError("non-finite time lag");
  if (domain_ == TimeDomain::Discrete && t != std::round(t)) {
    throw DomainError("discrete-time model evaluated at non-integer lag " + std::to_string(t));
  }
  return (*evaluator_)(t);
}

double TemporalCovariance::max_abs_at_zero() const { return (*this)(0.0).cwiseAbs().maxCoeff(); }

double ScalarCorrelation::operator()(double t) const {
  switch (family) {
    case CorrelationFamily::Exponential:
      return std::exp(-std::abs(t) / tau);
    case CorrelationFamily::Gaussian:
      return std::exp(-(t / tau) * (t / tau));
    case CorrelationFamily::CosineDamped:
      return std::exp(-std::abs(t) / tau) * std::cos(omega * t);
    case CorrelationFamily::WhiteNoise:
      return t == 0.0 ? 1.0 : 0.0;
    case CorrelationFamily::Constant:
      return 1.0;
  }
  return 0.0;
}

std::string ScalarCorrelation::name() const {
  switch (family) {
    case CorrelationFamily::Exponential:
      return "exponential";
    case CorrelationFamily::Gaussian:
      return "gaussian";
    case CorrelationFamily::CosineDamped:
      return "cosine_damped";
    case CorrelationFamily::WhiteNoise:
      return "white_noise";
    case CorrelationFamily::Constant:
      return "constant";
  }
  return "unknown";
}

std::vector<double> default_lag_grid() {
  std::vector<double> grid(9);
  for (int k = 0; k < 9; ++k) grid[k] = k;
  return grid;
}

TemporalCovariance separable_model(const ScalarCorrelation& rho, const Matrix& A,
                                   TimeDomain domain) {
  require_psd(A, "separable model matrix A");
  const bool scaled = rho.family == CorrelationFamily::Exponential ||
                      rho.family == CorrelationFamily::Gaussian ||
                      rho.family == CorrelationFamily::CosineDamped;
  if (scaled && !(rho.tau > 0.0)) throw InvalidParameter("correlation scale tau must be positive");
  ModelDescriptor desc{rho.name(), {}};
  if (scaled) desc.params.emplace_back("tau", rho.tau);
  if (rho.family == CorrelationFamily::CosineDamped) desc.params.emplace_back("omega", rho.omega);
  return TemporalCovariance(
      static_cast<int>(A.rows()), domain, [rho, A](double t) -> Matrix { return rho(t) * A; },
      std::move(desc));
}

TemporalCovariance ma1_model(const Matrix& sigma, const Matrix& phi) {
  require_psd(sigma, "MA(1) innovation covariance");
  require_square(phi, "MA(1) coefficient");
  if (phi.rows() != sigma.rows()) throw InvalidParameter("MA(1) dimension mismatch");
  const Matrix lag0 = sigma + phi * sigma * phi.transpose();
  const Matrix lag_plus = sigma * phi.transpose();
  const Matrix lag_minus = phi * sigma;
  const auto m = sigma.rows();
  return TemporalCovariance(
      static_cast<int>(m), TimeDomain::Discrete,
      [=](double t) -> Matrix {
        if (t == 0.0) return lag0;
        if (t == 1.0) return lag_plus;
        if (t == -1.0) return lag_minus;
        return Matrix::Zero(m, m);
      },
      ModelDescriptor{"ma1", {}});
}

TemporalCovariance hadamard_power_model(const TemporalCovariance& B, int p, double scale) {
  if (p < 1) throw InvalidParameter("Hadamard power must be >= 1");
  if (!(scale > 0.0)) throw InvalidParameter("Hadamard power scale must be positive");
  ModelDescriptor desc{"hadamard_power", {{"p", p}, {"scale", scale}}};
  return TemporalCovariance(
      B.m(), B.domain(),
      [B, p, scale](double t) -> Matrix {
        Matrix base = B(t);
        Matrix out = base;
        for (int k = 1; k < p; ++k) out = out.cwiseProduct(base);
        return scale * out;
      },
      std::move(desc));
}

TemporalCovariance hadamard_product(const TemporalCovariance& a, const TemporalCovariance& b) {
  if (a.m() != b.m() || a.domain() != b.domain()) {
    throw InvalidParameter("Hadamard product of incompatible models");
  }
  return TemporalCovariance(
      a.m(), a.domain(), [a, b](double t) -> Matrix { return a(t).cwiseProduct(b(t)); },
      ModelDescriptor{"hadamard_product", {}});
}

TemporalCovariance linear_combination(
    const std::vector<std::pair<double, TemporalCovariance>>& terms) {
  if (terms.empty()) throw InvalidParameter("empty linear combination");
  const int m = terms.front().second.m();
  const TimeDomain domain = terms.front().second.domain();
  for (const auto& [c, B] : terms) {
    if (B.m() != m || B.domain() != domain) {
      throw InvalidParameter("linear combination of incompatible models");
    }
  }
  return TemporalCovariance(
      m, domain,
      [terms, m](double t) -> Matrix {
        Matrix out = Matrix::Zero(m, m);
        for (const auto& [c, B] : terms) out += c * B(t);
        return out;
      },
      ModelDescriptor{"linear_combination", {{"terms", static_cast<double>(terms.size())}}});
}

TemporalCovariance zero_model(int m, TimeDomain domain) {
  return TemporalCovariance(
      m, domain, [m](double) -> Matrix { return Matrix::Zero(m, m); }, ModelDescriptor{"zero", {}});
}

TemporalCovariance constant_model(const Matrix& A, TimeDomain domain) {
  return separable_model(ScalarCorrelation{CorrelationFamily::Constant}, A, domain);
}

TemporalCovariance tabulated_model(std::vector<Matrix> lags) {
  if (lags.empty()) throw InvalidParameter("tabulated model needs at least lag 0");
  const auto m = lags.front().rows();
  for (const auto& L : lags) {
    if (L.rows() != m || L.cols() != m) throw InvalidParameter("tabulated lag matrices differ in size");
  }
  return TemporalCovariance(
      static_cast<int>(m), TimeDomain::Discrete,
      [lags = std::move(lags), m](double t) -> Matrix {
        const long k = std::lround(std::abs(t));
        if (k >= static_cast<long>(lags.size())) return Matrix::Zero(m, m);
        return t >= 0.0 ? lags[static_cast<std::size_t>(k)]
                        : Matrix(lags[static_cast<std::size_t>(k)].transpose());
      },
      ModelDescriptor{"tabulated", {}});
}

double min_symmetric_eigenvalue(const Matrix& A) {
  const Matrix sym = 0.5 * (A + A.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericError("eigenvalue solver failed");
  return solver.eigenvalues().minCoeff();
}

Matrix block_gram(const TemporalCovariance& B, const std::vector<double>& grid) {
  const auto m = B.m();
  const auto n = static_cast<Eigen::Index>(grid.size());
  Matrix G(n * m, n * m);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      G.block(i * m, j * m, m, m) = B(grid[i] - grid[j]);
    }
  }
  return G;
}

StationarityAnalysis analyze_stationary_covariance(const TemporalCovariance& B,
                                                   const std::vector<double>& grid) {
  if (grid.empty()) throw InvalidParameter("empty time grid");
  const Matrix G = block_gram(B, grid);
  StationarityAnalysis out;
  out.min_eigenvalue = min_symmetric_eigenvalue(G);
  out.trace = G.trace();
  for (double ti : grid) {
    for (double tj : grid) {
      const double t = ti - tj;
      const double r = (B(-t) - B(t).transpose()).cwiseAbs().maxCoeff();
      out.symmetry_residual = std::max(out.symmetry_residual, r);
    }
  }
  return out;
}

VerificationReport check_stationary_covariance(const TemporalCovariance& B,
                                               const std::vector<double>& grid, double tol) {
  VerificationReport report("stationary_covariance[" + B.descriptor().to_string() + "]");
  const StationarityAnalysis a = analyze_stationary_covariance(B, grid);
  const double scale = std::max(a.trace, 0.0);
  report.add("min_eigenvalue", std::max(0.0, -a.min_eigenvalue), tol * scale);
  report.add("symmetry_residual", a.symmetry_residual,
             1e-12 * std::max(1.0, B.max_abs_at_zero()));
  return report;
}

bool entries_bounded_below_one(const TemporalCovariance& B, const std::vector<double>& grid) {
  double worst = 0.0;
  for (double t : grid) worst = std::max(worst, B(t).cwiseAbs().maxCoeff());
  return worst < 1.0 - 1e-9;
}

}  // namespace stfields
