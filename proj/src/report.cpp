#include "stfields/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace stfields {

namespace {

nlohmann::json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

nlohmann::json report_json(const VerificationReport& report) {
  nlohmann::json items = nlohmann::json::array();
  const ReportItem* worst = nullptr;
  double worst_ratio = -1.0;
  for (const auto& item : report.items()) {
    nlohmann::json j;
    j["label"] = item.label;
    j["residual"] = number(item.residual);
    j["threshold"] = number(item.threshold);
    if (item.stderr_estimate) j["stderr"] = number(*item.stderr_estimate);
    j["pass"] = item.pass;
    items.push_back(std::move(j));
    const double ratio = item.threshold > 0.0 ? item.residual / item.threshold : item.residual;
    if (worst == nullptr || !(ratio <= worst_ratio)) {
      worst = &item;
      worst_ratio = std::isnan(ratio) ? INFINITY : ratio;
    }
  }
  nlohmann::json out;
  out["schema"] = "stfields.report/1";
  out["name"] = report.name();
  out["pass"] = report.pass();
  out["residual"] = worst ? number(worst->residual) : nlohmann::json(0.0);
  out["threshold"] = worst ? number(worst->threshold) : nlohmann::json(0.0);
  out["items"] = std::move(items);
  nlohmann::json meta = nlohmann::json::object();
  const auto& md = report.metadata();
  if (md.seed) meta["seed"] = *md.seed;
  if (md.replicates) meta["replicates"] = *md.replicates;
  if (md.truncation) meta["truncation"] = *md.truncation;
  out["metadata"] = std::move(meta);
  return out;
}

}  // namespace

const ReportItem& VerificationReport::add(std::string label, double residual, double threshold,
                                          std::optional<double> stderr_estimate) {
  const bool ok = residual <= threshold;
  add_verdict(std::move(label), residual, threshold, ok);
  items_.back().stderr_estimate = stderr_estimate;
  return items_.back();
}

const ReportItem& VerificationReport::add_verdict(std::string label, double residual,
                                                  double threshold, bool pass) {
  items_.push_back(ReportItem{std::move(label), residual, threshold, std::nullopt, pass});
  pass_ = pass_ && pass;
  return items_.back();
}

void VerificationReport::merge(const VerificationReport& other, const std::string& prefix) {
  for (const auto& item : other.items()) {
    ReportItem copy = item;
    if (!prefix.empty()) copy.label = prefix + item.label;
    pass_ = pass_ && copy.pass;
    items_.push_back(std::move(copy));
  }
}

double VerificationReport::max_residual() const {
  double worst = 0.0;
  for (const auto& item : items_) worst = std::max(worst, item.residual);
  return worst;
}

std::size_t VerificationReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(items_.begin(), items_.end(), [](const ReportItem& i) { return !i.pass; }));
}

std::string VerificationReport::to_json(int indent) const { return report_json(*this).dump(indent); }

std::string VerificationReport::to_table() const {
  std::ostringstream os;
  os << name_ << ": " << (pass_ ? "PASS" : "FAIL") << " (" << items_.size() << " items, "
     << failures() << " failed)\n";
  char line[256];
  for (const auto& item : items_) {
    std::snprintf(line, sizeof line, "  %-4s %-48s residual=%-12.4e threshold=%-12.4e\n",
                  item.pass ? "ok" : "FAIL", item.label.c_str(), item.residual, item.threshold);
    os << line;
  }
  return os.str();
}

std::string reports_to_json(const std::vector<VerificationReport>& reports, int indent) {
  nlohmann::json out;
  out["schema"] = "stfields.report-set/1";
  bool all = true;
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) {
    all = all && r.pass();
    arr.push_back(report_json(r));
  }
  out["pass"] = all;
  out["reports"] = std::move(arr);
  return out.dump(indent);
}

}  // namespace stfields
