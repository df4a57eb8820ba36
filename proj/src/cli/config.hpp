#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "stfields/covariance.hpp"
#include "stfields/sphere.hpp"
#include "stfields/verify.hpp"

namespace stfields::cli {

using Json = nlohmann::json;

inline constexpr const char* kConfigSchema = "stfields.config/1";

/// Parsed model plus what is needed to describe it in outputs.
struct ModelConfig {
  SpaceTimeCovariance covariance;
  std::string type;  // "series" or "example1".."example5"
};

struct SimulateConfig {
  ModelConfig model;
  std::vector<SpherePoint> sites;
  std::vector<double> times;
  std::size_t replicates = 1;
  std::uint64_t seed = 0;
  double tail_tolerance = 1e-8;
};

struct CovConfig {
  ModelConfig model;
  std::vector<double> thetas;
  std::vector<double> lags;
  bool series = false;
  std::optional<int> d_lift{};
  double lift_tolerance = 1e-8;
};

struct PsdOptions {
  std::size_t sites = 10;
  std::size_t times = 5;
  std::size_t trials = 50;
};

struct VerifyConfig {
  std::optional<std::string> suite;
  std::vector<std::string> checks;
  std::optional<ModelConfig> model;
  std::optional<std::uint64_t> seed;
  std::size_t replicates = 20000;
  PsdOptions psd;
  std::vector<AngleLag> series_grid;
  double series_tolerance = 1e-6;
  std::vector<double> lags;  // grid for the temporal check
};

struct ExpandConfig {
  int n = 0;
  int d = 2;
};

struct ExtractConfig {
  std::string realization;
  std::string manifest;
  std::vector<int> levels;
  int polar = kDefaultPolarOrder;
  int azimuth = kDefaultAzimuthOrder;
};

/// Read and parse a JSON file; ConfigError on I/O or syntax problems.
Json load_json(const std::string& path);

/// Checks the schema header and the optional "command" field, then
/// parses the command's section. Unknown keys anywhere are ConfigError.
SimulateConfig parse_simulate(const Json& doc);
CovConfig parse_cov(const Json& doc);
VerifyConfig parse_verify(const Json& doc);
ExpandConfig parse_expand(const Json& doc);
ExtractConfig parse_extract(const Json& doc);

ModelConfig parse_model(const Json& node);
TemporalCovariance parse_temporal(const Json& node, const std::string& where);
std::vector<SpherePoint> parse_sites(const Json& node, int d);

}  // namespace stfields::cli
