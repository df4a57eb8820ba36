#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stfields/covariance.hpp"
#include "stfields/report.hpp"

namespace stfields {

struct SuiteOptions {
  std::uint64_t seed = 20240611;
  std::size_t replicates = 20000;
};

VerificationReport criterion_polynomial_oracle();
VerificationReport criterion_funk_hecke(const SuiteOptions& opts);
VerificationReport criterion_monomial_expansion();
VerificationReport criterion_closed_form_series(const SuiteOptions& opts);
VerificationReport criterion_gram_psd(const SuiteOptions& opts);
VerificationReport criterion_sphere_simulator(const SuiteOptions& opts);
VerificationReport criterion_circle_simulator(const SuiteOptions& opts);
VerificationReport criterion_level_orthogonality(const SuiteOptions& opts);
VerificationReport criterion_round_trip(const SuiteOptions& opts);

/// Criteria 1..9 in order.
std::vector<VerificationReport> run_verify_suite(const SuiteOptions& opts);

/// Criteria 1..9 followed by the determinism criterion, which runs the
/// suite a second time and compares the serialised reports byte for byte.
std::vector<VerificationReport> run_acceptance_suite(const SuiteOptions& opts);

/// Example models built the way the suite builds them; the infinite-sphere
/// ones are truncated for |cos theta| <= cos(pi/12).
SpaceTimeCovariance suite_example_model(ExampleModel model);

/// Truncation used for models on the infinite sphere, whose cos^n series
/// converge slowly at theta = 0 and pi.
TruncationOptions infinite_sphere_truncation();

}  // namespace stfields
