// Acceptance gate: one line per criterion, exit status 1 if any is red.
#include <chrono>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "stfields/suite.hpp"

namespace {

struct Criterion {
  const char* title;
  double budget_seconds;
};

constexpr Criterion kCriteria[] = {
    {"polynomial oracle equivalence", 1.0},
    {"Funk-Hecke orthogonality on S^2", 10.0},
    {"monomial expansion identity", 1.0},
    {"closed form vs series, examples 1-5", 5.0},
    {"Gram positive definiteness, examples 1-5", 30.0},
    {"sphere simulator covariance (d=2, m=2)", 120.0},
    {"circle simulator covariance (d=1, m=2)", 60.0},
    {"level orthogonality and zero mean", 60.0},
    {"coefficient round trip", 30.0},
    {"determinism of the verify suite", 0.0},
};

double ratio(const stfields::ReportItem& item) {
  if (item.threshold > 0.0) return item.residual / item.threshold;
  return item.residual > 0.0 ? 1e300 : 0.0;
}

// Largest residual/threshold among the red items, or among all when green.
const stfields::ReportItem* worst_item(const stfields::VerificationReport& r) {
  const stfields::ReportItem* worst = nullptr;
  for (const auto& item : r.items()) {
    if (item.pass && !r.pass()) continue;
    if (!worst || ratio(item) > ratio(*worst)) worst = &item;
  }
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  stfields::SuiteOptions opts;
  const char* json_path = nullptr;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--json") == 0 && i + 1 < argc) json_path = argv[++i];
  }

  using Clock = std::chrono::steady_clock;
  using stfields::VerificationReport;
  std::vector<VerificationReport> reports;
  std::vector<double> seconds;
  const auto timed = [&](auto&& fn) {
    const auto start = Clock::now();
    reports.push_back(fn());
    seconds.push_back(std::chrono::duration<double>(Clock::now() - start).count());
  };

  timed([] { return stfields::criterion_polynomial_oracle(); });
  timed([&] { return stfields::criterion_funk_hecke(opts); });
  timed([] { return stfields::criterion_monomial_expansion(); });
  timed([&] { return stfields::criterion_closed_form_series(opts); });
  timed([&] { return stfields::criterion_gram_psd(opts); });
  timed([&] { return stfields::criterion_sphere_simulator(opts); });
  timed([&] { return stfields::criterion_circle_simulator(opts); });
  timed([&] { return stfields::criterion_level_orthogonality(opts); });
  timed([&] { return stfields::criterion_round_trip(opts); });

  // Determinism: a second full pass must serialise to the same bytes.
  {
    const auto start = Clock::now();
    const std::string first = stfields::reports_to_json(reports);
    const std::string second = stfields::reports_to_json(stfields::run_verify_suite(opts));
    VerificationReport det("determinism");
    det.add_verdict("reports byte-identical", first == second ? 0.0 : 1.0, 0.0, first == second);
    det.metadata().seed = opts.seed;
    reports.push_back(std::move(det));
    seconds.push_back(std::chrono::duration<double>(Clock::now() - start).count());
  }

  int failed = 0;
  for (std::size_t k = 0; k < reports.size(); ++k) {
    const VerificationReport& r = reports[k];
    const Criterion& c = kCriteria[k];
    const bool in_budget = c.budget_seconds <= 0.0 || seconds[k] <= c.budget_seconds;
    const bool pass = r.pass() && in_budget;
    if (!pass) ++failed;
    const stfields::ReportItem* w = worst_item(r);
    std::printf("criterion %2zu %s  %-42s worst %-38s %.3g / %.3g  %.2fs%s\n", k + 1,
                pass ? "PASS" : "FAIL", c.title, w ? ("'" + w->label + "'").c_str() : "-",
                w ? w->residual : 0.0, w ? w->threshold : 0.0, seconds[k],
                in_budget ? "" : " (over time budget)");
    if (!r.pass()) {
      for (const auto& item : r.items()) {
        if (!item.pass) {
          std::printf("             red item %-40s residual %.6g threshold %.6g\n", item.label.c_str(),
                      item.residual, item.threshold);
        }
      }
    }
  }
  std::printf("%d of %zu criteria failed\n", failed, reports.size());

  if (json_path) {
    std::ofstream out(json_path);
    out << stfields::reports_to_json(reports) << '\n';
  }
  return failed == 0 ? 0 : 1;
}
