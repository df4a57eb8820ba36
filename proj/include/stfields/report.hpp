#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace stfields {

struct ReportItem {
  std::string label;
  double residual = 0.0;
  double threshold = 0.0;
  std::optional<double> stderr_estimate;
  bool pass = true;
};

struct RunMetadata {
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> replicates;
  std::optional<int> truncation;
};

/// Outcome of one named check. `pass` holds iff every item is within its
/// threshold; use add() so the two never disagree.
class VerificationReport {
 public:
  explicit VerificationReport(std::string name) : name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }
  const std::vector<ReportItem>& items() const noexcept { return items_; }
  bool pass() const noexcept { return pass_; }
  RunMetadata& metadata() noexcept { return metadata_; }
  const RunMetadata& metadata() const noexcept { return metadata_; }

  // Item passes iff residual <= threshold (NaN never passes).
  const ReportItem& add(std::string label, double residual, double threshold,
                        std::optional<double> stderr_estimate = std::nullopt);
  // Item with an externally decided verdict, e.g. a count-based criterion.
  const ReportItem& add_verdict(std::string label, double residual, double threshold, bool pass);

  void merge(const VerificationReport& other, const std::string& prefix = {});

  double max_residual() const;
  std::size_t failures() const;

  std::string to_json(int indent = 2) const;
  std::string to_table() const;

 private:
  std::string name_;
  std::vector<ReportItem> items_;
  RunMetadata metadata_;
  bool pass_ = true;
};

std::string reports_to_json(const std::vector<VerificationReport>& reports, int indent = 2);

}  // namespace stfields
