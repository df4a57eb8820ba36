#include "cli/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "stfields/errors.hpp"
#include "stfields/temporal.hpp"

namespace stfields::cli {

namespace {

// Rejects keys outside `allowed`; `where` names the node in messages.
void require_keys(const Json& node, const std::set<std::string>& allowed, const std::string& where) {
  if (!node.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, value] : node.items()) {
    if (!allowed.contains(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

const Json& required(const Json& node, const std::string& key, const std::string& where) {
  const auto it = node.find(key);
  if (it == node.end()) throw ConfigError(where + ": missing key '" + key + "'");
  return *it;
}

double as_number(const Json& v, const std::string& where) {
  if (!v.is_number()) throw ConfigError(where + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(where + ": expected a finite number");
  return x;
}

long long as_integer(const Json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ConfigError(where + ": expected an integer");
  return v.get<long long>();
}

std::size_t as_count(const Json& v, const std::string& where) {
  const long long n = as_integer(v, where);
  if (n < 1) throw ConfigError(where + ": expected a positive integer");
  return static_cast<std::size_t>(n);
}

std::uint64_t as_seed(const Json& v, const std::string& where) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    throw ConfigError(where + ": expected a non-negative integer seed");
  }
  return v.get<std::uint64_t>();
}

std::string as_string(const Json& v, const std::string& where) {
  if (!v.is_string()) throw ConfigError(where + ": expected a string");
  return v.get<std::string>();
}

std::vector<double> as_numbers(const Json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) throw ConfigError(where + ": expected a non-empty array of numbers");
  std::vector<double> out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    out.push_back(as_number(v[k], where + "[" + std::to_string(k) + "]"));
  }
  return out;
}

// A number is read as a 1 x 1 matrix.
Matrix as_matrix(const Json& v, const std::string& where) {
  if (v.is_number()) return Matrix::Constant(1, 1, as_number(v, where));
  if (!v.is_array() || v.empty()) throw ConfigError(where + ": expected a square matrix");
  const auto n = static_cast<Eigen::Index>(v.size());
  Matrix M(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::vector<double> row = as_numbers(v[i], where + "[" + std::to_string(i) + "]");
    if (static_cast<Eigen::Index>(row.size()) != n) throw ConfigError(where + ": matrix is not square");
    for (Eigen::Index j = 0; j < n; ++j) M(i, j) = row[j];
  }
  return M;
}

TimeDomain as_domain(const Json& node, const std::string& where) {
  const auto it = node.find("domain");
  if (it == node.end()) return TimeDomain::Continuous;
  const std::string s = as_string(*it, where + ".domain");
  if (s == "continuous") return TimeDomain::Continuous;
  if (s == "discrete") return TimeDomain::Discrete;
  throw ConfigError(where + ".domain: expected 'continuous' or 'discrete'");
}

void check_header(const Json& doc, const std::string& command) {
  if (!doc.is_object()) throw ConfigError("config: expected a JSON object");
  const auto it = doc.find("schema");
  if (it == doc.end()) throw ConfigError("config: missing key 'schema'");
  if (as_string(*it, "schema") != kConfigSchema) {
    throw ConfigError("config: unsupported schema '" + it->get<std::string>() + "', expected " +
                      kConfigSchema);
  }
  if (const auto c = doc.find("command"); c != doc.end() && as_string(*c, "command") != command) {
    throw ConfigError("config: written for command '" + c->get<std::string>() + "', not '" +
                      command + "'");
  }
}

TruncationOptions parse_truncation(const Json& node, const std::string& where) {
  require_keys(node, {"tolerance", "max_degree", "fixed_degree", "max_abs_cos"}, where);
  TruncationOptions opts;
  if (node.contains("tolerance")) {
    opts.tolerance = as_number(node["tolerance"], where + ".tolerance");
    if (!(opts.tolerance > 0.0)) throw ConfigError(where + ".tolerance: must be positive");
  }
  if (node.contains("max_degree")) {
    opts.max_degree = static_cast<int>(as_count(node["max_degree"], where + ".max_degree"));
  }
  if (node.contains("fixed_degree")) {
    const long long n = as_integer(node["fixed_degree"], where + ".fixed_degree");
    if (n < 0) throw ConfigError(where + ".fixed_degree: must be >= 0");
    opts.fixed_degree = static_cast<int>(n);
  }
  if (node.contains("max_abs_cos")) {
    opts.max_abs_cos = as_number(node["max_abs_cos"], where + ".max_abs_cos");
    if (!(opts.max_abs_cos > 0.0 && opts.max_abs_cos <= 1.0)) {
      throw ConfigError(where + ".max_abs_cos: must lie in (0, 1]");
    }
  }
  return opts;
}

SphereDimension parse_dimension(const Json& v, const std::string& where) {
  if (v.is_string()) {
    if (v.get<std::string>() == "inf") return SphereDimension::infinite();
    throw ConfigError(where + ": expected a positive integer or \"inf\"");
  }
  const long long d = as_integer(v, where);
  if (d < 1) throw ConfigError(where + ": expected a positive integer or \"inf\"");
  return SphereDimension::finite(static_cast<int>(d));
}

std::vector<AngleLag> parse_grid(const Json& node, const std::string& where) {
  const std::vector<double> thetas = as_numbers(required(node, "thetas", where), where + ".thetas");
  const std::vector<double> lags = as_numbers(required(node, "lags", where), where + ".lags");
  std::vector<AngleLag> grid;
  for (double theta : thetas) {
    for (double t : lags) grid.push_back({theta, t});
  }
  return grid;
}

}  // namespace

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return Json::parse(buffer.str());
  } catch (const Json::parse_error& e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
}

TemporalCovariance parse_temporal(const Json& node, const std::string& where) {
  if (!node.is_object()) throw ConfigError(where + ": expected an object");
  const std::string family = as_string(required(node, "family", where), where + ".family");
  if (family == "ma1") {
    require_keys(node, {"family", "sigma", "phi"}, where);
    return ma1_model(as_matrix(required(node, "sigma", where), where + ".sigma"),
                     as_matrix(required(node, "phi", where), where + ".phi"));
  }
  if (family == "tabulated") {
    require_keys(node, {"family", "lags"}, where);
    const Json& lags = required(node, "lags", where);
    if (!lags.is_array() || lags.empty()) throw ConfigError(where + ".lags: expected a non-empty array");
    std::vector<Matrix> mats;
    for (std::size_t k = 0; k < lags.size(); ++k) {
      mats.push_back(as_matrix(lags[k], where + ".lags[" + std::to_string(k) + "]"));
    }
    return tabulated_model(std::move(mats));
  }
  if (family == "zero") {
    require_keys(node, {"family", "m", "domain"}, where);
    return zero_model(static_cast<int>(as_count(required(node, "m", where), where + ".m")),
                      as_domain(node, where));
  }
  if (family == "constant") {
    require_keys(node, {"family", "A", "domain"}, where);
    return constant_model(as_matrix(required(node, "A", where), where + ".A"), as_domain(node, where));
  }

  ScalarCorrelation rho;
  if (family == "exponential") {
    rho.family = CorrelationFamily::Exponential;
  } else if (family == "gaussian") {
    rho.family = CorrelationFamily::Gaussian;
  } else if (family == "cosine_damped") {
    rho.family = CorrelationFamily::CosineDamped;
  } else if (family == "white_noise") {
    rho.family = CorrelationFamily::WhiteNoise;
  } else {
    throw ConfigError(where + ".family: unknown temporal family '" + family + "'");
  }
  require_keys(node, {"family", "A", "tau", "omega", "domain"}, where);
  if (node.contains("tau")) rho.tau = as_number(node["tau"], where + ".tau");
  if (node.contains("omega")) rho.omega = as_number(node["omega"], where + ".omega");
  return separable_model(rho, as_matrix(required(node, "A", where), where + ".A"), as_domain(node, where));
}

ModelConfig parse_model(const Json& node) {
  const std::string where = "model";
  if (!node.is_object()) throw ConfigError("model: expected an object");
  const std::string type = as_string(required(node, "type", where), "model.type");
  const TruncationOptions trunc =
      node.contains("truncation") ? parse_truncation(node["truncation"], "model.truncation")
                                  : TruncationOptions{};

  if (type == "series") {
    require_keys(node, {"type", "d", "levels", "tail_bound"}, where);
    const SphereDimension d = parse_dimension(required(node, "d", where), "model.d");
    const Json& levels = required(node, "levels", where);
    if (!levels.is_array() || levels.empty()) throw ConfigError("model.levels: expected a non-empty array");
    std::vector<TemporalCovariance> bs;
    for (std::size_t k = 0; k < levels.size(); ++k) {
      bs.push_back(parse_temporal(levels[k], "model.levels[" + std::to_string(k) + "]"));
    }
    const double tail = node.contains("tail_bound") ? as_number(node["tail_bound"], "model.tail_bound") : 0.0;
    return {SpaceTimeCovariance(CoefficientSequence(d, std::move(bs), tail)), type};
  }
  if (type == "example2") {
    require_keys(node, {"type", "B0", "B1", "B2", "truncation"}, where);
    return {make_example2(parse_temporal(required(node, "B0", where), "model.B0"),
                          parse_temporal(required(node, "B1", where), "model.B1"),
                          parse_temporal(required(node, "B2", where), "model.B2"), trunc),
            type};
  }
  if (type == "example4") {
    require_keys(node, {"type", "B", "d", "truncation"}, where);
    const long long d = as_integer(required(node, "d", where), "model.d");
    if (d < 2) throw ConfigError("model.d: example4 needs d >= 2");
    return {make_example4(parse_temporal(required(node, "B", where), "model.B"), static_cast<int>(d), trunc),
            type};
  }
  if (type == "example1" || type == "example3" || type == "example5") {
    require_keys(node, {"type", "B", "truncation"}, where);
    const TemporalCovariance B = parse_temporal(required(node, "B", where), "model.B");
    if (type == "example1") return {make_example1(B, trunc), type};
    if (type == "example3") return {make_example3(B, trunc), type};
    return {make_example5(B, trunc), type};
  }
  throw ConfigError("model.type: unknown model type '" + type + "'");
}

std::vector<SpherePoint> parse_sites(const Json& node, int d) {
  const std::string where = "sites";
  require_keys(node, {"points", "angles", "s2", "quadrature"}, where);
  if (node.size() != 1) throw ConfigError("sites: give exactly one of points, angles, s2, quadrature");
  std::vector<SpherePoint> sites;
  if (node.contains("points")) {
    const Json& pts = node["points"];
    if (!pts.is_array() || pts.empty()) throw ConfigError("sites.points: expected a non-empty array");
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const std::string w = "sites.points[" + std::to_string(k) + "]";
      std::vector<double> x = as_numbers(pts[k], w);
      if (static_cast<int>(x.size()) != d + 1) {
        throw ConfigError(w + ": expected " + std::to_string(d + 1) + " coordinates");
      }
      double norm = 0.0;
      for (double v : x) norm += v * v;
      if (std::abs(std::sqrt(norm) - 1.0) > 1e-9) throw ConfigError(w + ": not a unit vector");
      sites.emplace_back(std::move(x));
    }
  } else if (node.contains("angles")) {
    if (d != 1) throw ConfigError("sites.angles: only for the circle (d = 1)");
    for (double a : as_numbers(node["angles"], "sites.angles")) sites.push_back(SpherePoint::on_circle(a));
  } else if (node.contains("s2")) {
    if (d != 2) throw ConfigError("sites.s2: only for d = 2");
    const Json& pts = node["s2"];
    if (!pts.is_array() || pts.empty()) throw ConfigError("sites.s2: expected a non-empty array");
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const std::vector<double> cl = as_numbers(pts[k], "sites.s2[" + std::to_string(k) + "]");
      if (cl.size() != 2) throw ConfigError("sites.s2: expected [colatitude, longitude] pairs");
      sites.push_back(SpherePoint::on_s2(cl[0], cl[1]));
    }
  } else {
    if (d != 2) throw ConfigError("sites.quadrature: only for d = 2");
    const Json& q = node["quadrature"];
    require_keys(q, {"polar", "azimuth"}, "sites.quadrature");
    const int polar = static_cast<int>(as_count(required(q, "polar", "sites.quadrature"), "sites.quadrature.polar"));
    const int azimuth =
        static_cast<int>(as_count(required(q, "azimuth", "sites.quadrature"), "sites.quadrature.azimuth"));
    sites = product_quadrature_s2(polar, azimuth).nodes;
  }
  return sites;
}

SimulateConfig parse_simulate(const Json& doc) {
  check_header(doc, "simulate");
  require_keys(doc, {"schema", "command", "model", "sites", "times", "replicates", "seed", "tail_tolerance"},
               "config");
  ModelConfig model = parse_model(required(doc, "model", "config"));
  if (model.covariance.d().is_infinite()) {
    throw ConfigError("model: no simulator for the infinite-dimensional sphere");
  }
  const int d = model.covariance.d().value();
  SimulateConfig cfg{std::move(model), parse_sites(required(doc, "sites", "config"), d),
                     as_numbers(required(doc, "times", "config"), "times")};
  if (doc.contains("replicates")) cfg.replicates = as_count(doc["replicates"], "replicates");
  if (doc.contains("seed")) cfg.seed = as_seed(doc["seed"], "seed");
  if (doc.contains("tail_tolerance")) {
    cfg.tail_tolerance = as_number(doc["tail_tolerance"], "tail_tolerance");
    if (!(cfg.tail_tolerance > 0.0)) throw ConfigError("tail_tolerance: must be positive");
  }
  if (cfg.model.covariance.domain() == TimeDomain::Discrete) {
    for (double t : cfg.times) {
      if (t != std::round(t)) throw ConfigError("times: discrete-time model needs integer times");
    }
  }
  return cfg;
}

CovConfig parse_cov(const Json& doc) {
  check_header(doc, "cov");
  require_keys(doc, {"schema", "command", "model", "thetas", "lags", "series", "d_lift", "lift_tolerance"}, "config");
  CovConfig cfg{parse_model(required(doc, "model", "config")),
                as_numbers(required(doc, "thetas", "config"), "thetas"),
                as_numbers(required(doc, "lags", "config"), "lags")};
  for (double theta : cfg.thetas) {
    if (theta < 0.0 || theta > std::numbers::pi) throw ConfigError("thetas: angles must lie in [0, pi]");
  }
  if (doc.contains("series")) {
    if (!doc["series"].is_boolean()) throw ConfigError("series: expected true or false");
    cfg.series = doc["series"].get<bool>();
  }
  if (doc.contains("d_lift")) {
    const long long d = as_integer(doc["d_lift"], "d_lift");
    if (d < 2) throw ConfigError("d_lift: expected d >= 2");
    cfg.d_lift = static_cast<int>(d);
  }
  if (doc.contains("lift_tolerance")) {
    cfg.lift_tolerance = as_number(doc["lift_tolerance"], "lift_tolerance");
    if (!(cfg.lift_tolerance > 0.0)) throw ConfigError("lift_tolerance: must be positive");
  }
  return cfg;
}

VerifyConfig parse_verify(const Json& doc) {
  check_header(doc, "verify");
  require_keys(doc,
               {"schema", "command", "suite", "checks", "model", "seed", "replicates", "psd", "series", "lags"},
               "config");
  VerifyConfig cfg;
  if (doc.contains("seed")) cfg.seed = as_seed(doc["seed"], "seed");
  if (doc.contains("replicates")) cfg.replicates = as_count(doc["replicates"], "replicates");
  if (doc.contains("suite")) {
    if (doc.contains("checks") || doc.contains("model")) {
      throw ConfigError("config: 'suite' cannot be combined with 'checks' or 'model'");
    }
    cfg.suite = as_string(doc["suite"], "suite");
    if (*cfg.suite != "acceptance") throw ConfigError("suite: the only suite is 'acceptance'");
    return cfg;
  }
  const Json& checks = required(doc, "checks", "config");
  if (!checks.is_array() || checks.empty()) throw ConfigError("checks: expected a non-empty array");
  for (std::size_t k = 0; k < checks.size(); ++k) {
    const std::string c = as_string(checks[k], "checks[" + std::to_string(k) + "]");
    if (c != "psd" && c != "series" && c != "covariance" && c != "temporal") {
      throw ConfigError("checks: unknown check '" + c + "'");
    }
    cfg.checks.push_back(c);
  }
  cfg.model = parse_model(required(doc, "model", "config"));
  if (doc.contains("psd")) {
    const Json& p = doc["psd"];
    require_keys(p, {"sites", "times", "trials"}, "psd");
    if (p.contains("sites")) cfg.psd.sites = as_count(p["sites"], "psd.sites");
    if (p.contains("times")) cfg.psd.times = as_count(p["times"], "psd.times");
    if (p.contains("trials")) cfg.psd.trials = as_count(p["trials"], "psd.trials");
  }
  if (doc.contains("series")) {
    const Json& s = doc["series"];
    require_keys(s, {"thetas", "lags", "tolerance"}, "series");
    cfg.series_grid = parse_grid(s, "series");
    if (s.contains("tolerance")) cfg.series_tolerance = as_number(s["tolerance"], "series.tolerance");
  } else {
    for (double theta : {0.0, std::numbers::pi / 3.0, 2.0 * std::numbers::pi / 3.0}) {
      for (double t : {0.0, 1.0}) cfg.series_grid.push_back({theta, t});
    }
  }
  cfg.lags = doc.contains("lags") ? as_numbers(doc["lags"], "lags") : default_lag_grid();
  return cfg;
}

ExpandConfig parse_expand(const Json& doc) {
  check_header(doc, "expand");
  require_keys(doc, {"schema", "command", "n", "d"}, "config");
  ExpandConfig cfg;
  const long long n = as_integer(required(doc, "n", "config"), "n");
  const long long d = as_integer(required(doc, "d", "config"), "d");
  if (n < 0) throw ConfigError("n: must be >= 0");
  if (d < 2) throw ConfigError("d: must be >= 2");
  cfg.n = static_cast<int>(n);
  cfg.d = static_cast<int>(d);
  return cfg;
}

ExtractConfig parse_extract(const Json& doc) {
  check_header(doc, "extract");
  require_keys(doc, {"schema", "command", "realization", "manifest", "levels", "quadrature"}, "config");
  ExtractConfig cfg;
  cfg.realization = as_string(required(doc, "realization", "config"), "realization");
  cfg.manifest = as_string(required(doc, "manifest", "config"), "manifest");
  const Json& levels = required(doc, "levels", "config");
  if (!levels.is_array() || levels.empty()) throw ConfigError("levels: expected a non-empty array");
  for (std::size_t k = 0; k < levels.size(); ++k) {
    const long long n = as_integer(levels[k], "levels[" + std::to_string(k) + "]");
    if (n < 0) throw ConfigError("levels: must be >= 0");
    cfg.levels.push_back(static_cast<int>(n));
  }
  if (doc.contains("quadrature")) {
    const Json& q = doc["quadrature"];
    require_keys(q, {"polar", "azimuth"}, "quadrature");
    if (q.contains("polar")) cfg.polar = static_cast<int>(as_count(q["polar"], "quadrature.polar"));
    if (q.contains("azimuth")) cfg.azimuth = static_cast<int>(as_count(q["azimuth"], "quadrature.azimuth"));
  }
  return cfg;
}

}  // namespace stfields::cli
