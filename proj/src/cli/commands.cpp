#include "cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numbers>
#include <ostream>

#include "cli/config.hpp"
#include "cli/emit.hpp"
#include "stfields/errors.hpp"
#include "stfields/gegenbauer.hpp"
#include "stfields/simulate.hpp"
#include "stfields/suite.hpp"
#include "stfields/verify.hpp"

namespace stfields::cli {

namespace {

using OrderedJson = nlohmann::ordered_json;

std::string table_name(const std::string& stem, Format format) {
  return stem + (format == Format::Json ? ".json" : ".csv");
}

std::string render(const Table& table, Format format) {
  return format == Format::Json ? table.to_json() : table.to_csv();
}

Json require_config(const Options& opts) {
  if (!opts.config) throw ConfigError("this command needs --config");
  return load_json(*opts.config);
}

std::filesystem::path relative_to_config(const Options& opts, const std::string& path) {
  const std::filesystem::path p(path);
  if (p.is_absolute() || !opts.config) return p;
  return std::filesystem::path(*opts.config).parent_path() / p;
}

std::vector<double> coords_of(const SpherePoint& x) {
  return {x.coords().begin(), x.coords().end()};
}

// Sites at angles 0, pi/3, 2pi/3 from a pole of S^d.
std::vector<SpherePoint> design_sites(int d) {
  std::vector<double> pole(static_cast<std::size_t>(d) + 1, 0.0);
  std::vector<double> equator(static_cast<std::size_t>(d) + 1, 0.0);
  pole.back() = 1.0;
  equator.front() = 1.0;
  const SpherePoint from(pole);
  const SpherePoint towards(equator);
  std::vector<SpherePoint> sites;
  for (double theta : {0.0, std::numbers::pi / 3.0, 2.0 * std::numbers::pi / 3.0}) {
    sites.push_back(rotate_towards(from, towards, theta));
  }
  return sites;
}

// ---------------------------------------------------------------------------

int cmd_simulate(const Options& opts, std::ostream& out) {
  SimulateConfig cfg = parse_simulate(require_config(opts));
  if (opts.seed) cfg.seed = *opts.seed;
  const SpaceTimeCovariance& C = cfg.model.covariance;

  const auto start = std::chrono::steady_clock::now();
  const FieldSimulator sim(
      SimulationConfig{C.coefficients(), cfg.sites, cfg.times, cfg.replicates, cfg.seed, cfg.tail_tolerance});
  const std::vector<FieldRealization> reps = sim.simulate_replicates(0, cfg.replicates);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const int d = sim.d();
  std::vector<std::string> columns{"replicate", "site_id"};
  for (int k = 0; k <= d; ++k) columns.push_back("x" + std::to_string(k));
  for (const char* c : {"t", "component", "value"}) columns.emplace_back(c);
  Table table(kRealizationSchema, columns);
  for (const auto& r : reps) {
    for (std::size_t s = 0; s < r.n_sites; ++s) {
      const std::vector<double> x = coords_of(cfg.sites[s]);
      for (std::size_t t = 0; t < r.n_times; ++t) {
        for (int c = 0; c < r.m; ++c) {
          std::vector<double> row{static_cast<double>(r.replicate_id), static_cast<double>(s)};
          row.insert(row.end(), x.begin(), x.end());
          row.push_back(cfg.times[t]);
          row.push_back(c);
          row.push_back(r.at(s, t, c));
          table.add_row(std::move(row));
        }
      }
    }
  }

  const std::string data_file = table_name("realizations", opts.format);
  OrderedJson manifest;
  manifest["schema"] = kManifestSchema;
  manifest["command"] = "simulate";
  manifest["model"] = cfg.model.type;
  manifest["seed"] = cfg.seed;
  manifest["replicates"] = cfg.replicates;
  manifest["d"] = d;
  manifest["m"] = sim.m();
  manifest["truncation"] = sim.truncation();
  manifest["tail_bound"] = C.tail_bound();
  manifest["tail_tolerance"] = cfg.tail_tolerance;
  manifest["sites"] = cfg.sites.size();
  manifest["times"] = cfg.times;
  auto us = OrderedJson::array();
  for (const auto& r : reps) {
    if (r.U) {
      us.push_back(coords_of(*r.U));
    } else {
      us.push_back(nullptr);
    }
  }
  manifest["U"] = std::move(us);
  manifest["outputs"] = {data_file};
  manifest["timing_seconds"] = seconds;

  write_file(opts.out / data_file, render(table, opts.format));
  write_file(opts.out / "manifest.json", manifest.dump(2) + "\n");
  out << "wrote " << table.rows() << " rows to " << (opts.out / data_file).string() << " (N = "
      << sim.truncation() << ", tail bound " << format_number(C.tail_bound()) << ")\n";
  return kExitOk;
}

int cmd_cov(const Options& opts, std::ostream& out) {
  CovConfig cfg = parse_cov(require_config(opts));
  if (opts.series) cfg.series = true;
  if (opts.d_lift) cfg.d_lift = opts.d_lift;
  SpaceTimeCovariance C = cfg.model.covariance;
  if (cfg.d_lift) {
    if (!C.d().is_infinite()) throw ConfigError("d_lift applies only to models on the infinite sphere");
    C = lift_s_infinity_to_sd(C, *cfg.d_lift, cfg.lift_tolerance);
  }
  std::vector<std::string> columns{"theta", "t", "i", "j", "analytic"};
  if (cfg.series) {
    columns.emplace_back("series");
    columns.emplace_back("residual");
  }
  Table table(kCovarianceSchema, columns);
  for (double theta : cfg.thetas) {
    for (double t : cfg.lags) {
      const Matrix a = C(theta, t);
      const Matrix s = cfg.series ? C.series(theta, t) : Matrix();
      for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
          std::vector<double> row{theta, t, static_cast<double>(i), static_cast<double>(j), a(i, j)};
          if (cfg.series) {
            row.push_back(s(i, j));
            row.push_back(std::abs(a(i, j) - s(i, j)));
          }
          table.add_row(std::move(row));
        }
      }
    }
  }
  const std::string file = table_name("covariance", opts.format);
  write_file(opts.out / file, render(table, opts.format));
  out << "wrote " << table.rows() << " rows to " << (opts.out / file).string() << " (N = "
      << C.coefficients().truncation() << ", tail bound " << format_number(C.tail_bound()) << ")\n";
  return kExitOk;
}

std::vector<VerificationReport> run_checks(const VerifyConfig& cfg) {
  const SpaceTimeCovariance& C = cfg.model->covariance;
  const std::uint64_t seed = cfg.seed.value_or(0);
  std::vector<VerificationReport> reports;
  for (const std::string& check : cfg.checks) {
    if (check == "temporal") {
      VerificationReport r("temporal");
      const auto& levels = C.coefficients().levels();
      for (std::size_t n = 0; n < levels.size(); ++n) {
        r.merge(check_stationary_covariance(levels[n], cfg.lags), "level " + std::to_string(n) + " ");
      }
      reports.push_back(std::move(r));
    } else if (check == "psd") {
      reports.push_back(gram_psd_check(C, cfg.psd.sites, cfg.psd.times, cfg.psd.trials, seed));
    } else if (check == "series") {
      if (!C.has_closed_form()) throw ConfigError("the series check needs an example model with a closed form");
      reports.push_back(series_vs_closed_form(C, cfg.series_grid, cfg.series_tolerance));
    } else {
      if (C.d().is_infinite()) throw ConfigError("the covariance check needs a finite sphere dimension");
      const std::vector<SpherePoint> sites = design_sites(C.d().value());
      const std::vector<double> times{0.0, 1.0};
      const FieldSimulator sim(SimulationConfig{C.coefficients(), sites, times, cfg.replicates, seed});
      const std::vector<FieldRealization> reps = sim.simulate_replicates(0, cfg.replicates);
      std::vector<CovariancePair> pairs;
      for (std::size_t lag = 0; lag < times.size(); ++lag) {
        for (std::size_t s = 0; s < sites.size(); ++s) pairs.push_back({{0, lag}, {s, 0}});
      }
      VerificationReport r = compare_analytic(empirical_covariance(reps, pairs), C, sites, times);
      r.metadata().seed = seed;
      r.metadata().replicates = cfg.replicates;
      r.metadata().truncation = C.coefficients().truncation();
      reports.push_back(std::move(r));
    }
  }
  return reports;
}

int cmd_verify(const Options& opts, std::ostream& out) {
  VerifyConfig cfg = parse_verify(require_config(opts));
  if (opts.seed) cfg.seed = opts.seed;
  std::vector<VerificationReport> reports;
  if (cfg.suite) {
    SuiteOptions suite;
    if (cfg.seed) suite.seed = *cfg.seed;
    suite.replicates = cfg.replicates;
    reports = run_acceptance_suite(suite);
  } else {
    reports = run_checks(cfg);
  }
  bool pass = true;
  for (const auto& r : reports) {
    out << r.to_table();
    pass = pass && r.pass();
  }
  write_file(opts.out / "report.json", reports_to_json(reports) + "\n");
  out << (pass ? "verification passed" : "verification FAILED") << "\n";
  return pass ? kExitOk : kExitVerifyFailed;
}

int cmd_expand(const Options& opts, std::ostream& out) {
  ExpandConfig cfg;
  if (opts.config) {
    cfg = parse_expand(load_json(*opts.config));
  } else {
    if (!opts.n || !opts.d) throw ConfigError("expand needs --config or both --n and --d");
    if (*opts.n < 0 || *opts.d < 2) throw ConfigError("expand needs n >= 0 and d >= 2");
    cfg.n = *opts.n;
    cfg.d = *opts.d;
  }
  if (opts.n) cfg.n = *opts.n;
  if (opts.d) cfg.d = *opts.d;
  const std::vector<double> beta = monomial_expansion_coeffs(cfg.d, cfg.n);
  Table table(kExpansionSchema, {"k", "degree", "beta"});
  for (std::size_t k = 0; k < beta.size(); ++k) {
    table.add_row({static_cast<double>(k), static_cast<double>(cfg.n - 2 * static_cast<int>(k)), beta[k]});
  }
  const std::string file = table_name("expansion", opts.format);
  write_file(opts.out / file, render(table, opts.format));
  out << render(table, opts.format);
  return kExitOk;
}

int cmd_extract(const Options& opts, std::ostream& out) {
  const ExtractConfig cfg = parse_extract(require_config(opts));
  const Json manifest = load_json(relative_to_config(opts, cfg.manifest).string());
  if (manifest.value("schema", "") != kManifestSchema) throw ConfigError("manifest: unexpected schema");
  int d = 0, m = 0, truncation = 0;
  std::vector<double> times;
  std::vector<SpherePoint> us;
  try {
    d = manifest.at("d").get<int>();
    m = manifest.at("m").get<int>();
    truncation = manifest.at("truncation").get<int>();
    times = manifest.at("times").get<std::vector<double>>();
    if (d != 2) throw ConfigError("extract works on S^2 realizations only");
    for (const auto& u : manifest.at("U")) us.emplace_back(u.get<std::vector<double>>());
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("manifest: ") + e.what());
  }

  const CsvData data = read_csv(relative_to_config(opts, cfg.realization));
  if (data.schema != kRealizationSchema) throw ConfigError("realization file: unexpected schema");
  const std::vector<std::string> expected{"replicate", "site_id", "x0", "x1", "x2", "t", "component", "value"};
  if (data.columns != expected) throw ConfigError("realization file: unexpected columns");

  const SphereQuadrature quad = product_quadrature_s2(cfg.polar, cfg.azimuth);
  const std::size_t n_nodes = quad.nodes.size();
  std::map<double, std::size_t> time_index;
  for (std::size_t k = 0; k < times.size(); ++k) time_index[times[k]] = k;

  // values[replicate][time][node]
  std::vector<std::vector<std::vector<Vector>>> values(
      us.size(), std::vector<std::vector<Vector>>(times.size(), std::vector<Vector>(n_nodes, Vector::Zero(m))));
  std::size_t filled = 0;
  for (const auto& row : data.rows) {
    const auto r = static_cast<std::size_t>(row[0]);
    const auto s = static_cast<std::size_t>(row[1]);
    const auto c = static_cast<int>(row[6]);
    const auto t = time_index.find(row[5]);
    if (r >= us.size() || s >= n_nodes || c < 0 || c >= m || t == time_index.end()) {
      throw ConfigError("realization file does not match the manifest and quadrature grid");
    }
    for (int k = 0; k < 3; ++k) {
      if (std::abs(row[2 + k] - quad.nodes[s][k]) > 1e-12) {
        throw ConfigError("site " + std::to_string(s) + " is not the quadrature node of that index");
      }
    }
    values[r][t->second][s](c) = row[7];
    ++filled;
  }
  if (filled != us.size() * times.size() * n_nodes * static_cast<std::size_t>(m)) {
    throw ConfigError("realization file does not cover the full quadrature grid");
  }

  Table table(kCoefficientSchema, {"replicate", "t", "level", "component", "value"});
  for (std::size_t r = 0; r < us.size(); ++r) {
    for (std::size_t t = 0; t < times.size(); ++t) {
      for (int n : cfg.levels) {
        const Vector v = extract_level_coefficients(values[r][t], n, us[r], quad, truncation);
        for (int c = 0; c < m; ++c) {
          table.add_row({static_cast<double>(r), times[t], static_cast<double>(n), static_cast<double>(c), v(c)});
        }
      }
    }
  }
  const std::string file = table_name("coefficients", opts.format);
  write_file(opts.out / file, render(table, opts.format));
  out << "wrote " << table.rows() << " rows to " << (opts.out / file).string() << "\n";
  return kExitOk;
}

}  // namespace

void configure_threads(const Options& opts) {
  if (opts.threads) {
    set_num_threads(*opts.threads);
    return;
  }
  if (const char* env = std::getenv("STFIELDS_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) set_num_threads(static_cast<int>(n));
  }
}

int run(const std::string& command, const Options& opts, std::ostream& out, std::ostream& err) {
  try {
    configure_threads(opts);
    if (command == "simulate") return cmd_simulate(opts, out);
    if (command == "cov") return cmd_cov(opts, out);
    if (command == "verify") return cmd_verify(opts, out);
    if (command == "expand") return cmd_expand(opts, out);
    if (command == "extract") return cmd_extract(opts, out);
    err << "error: unknown command '" << command << "'\n";
    return kExitConfigError;
  } catch (const ModelInvalid& e) {
    err << "model invalid: " << e.what() << "\n";
    return kExitModelInvalid;
  } catch (const NumericError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitInternalError;
  } catch (const Error& e) {
    // Config, parameter, domain, range and truncation errors all trace back
    // to what the user asked for.
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternalError;
  }
}

}  // namespace stfields::cli
