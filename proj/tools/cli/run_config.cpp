#include "cli/run_config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <tuple>

#include "ddlab/error.hpp"

namespace ddlab::cli {
namespace {

// (json key, member) pairs; the key doubles as the long flag name.
template <class Config, class Visitor>
void for_each_field(Config& c, Visitor&& visit) {
  visit("scheme", c.scheme);
  visit("n", c.n);
  visit("deltas", c.deltas);
  visit("deltas-file", c.deltas_file);
  visit("alpha", c.alpha);
  visit("omega-d", c.omega_d);
  visit("temperature", c.temperature);
  visit("density-file", c.density_file);
  visit("epsilon", c.epsilon);
  visit("measure", c.measure);
  visit("t-target", c.t_target);
  visit("tmin", c.tmin);
  visit("tmax", c.tmax);
  visit("points", c.points);
  visit("grid", c.grid);
  visit("alphas", c.alphas);
  visit("temperatures", c.temperatures);
  visit("rel-tol", c.rel_tol);
  visit("max-panels", c.max_panels);
  visit("spectrum", c.spectrum);
  visit("level", c.level);
  visit("omega-max", c.omega_max);
  visit("t", c.t);
  visit("samples", c.samples);
  visit("dt", c.dt);
  visit("modes", c.modes);
  visit("seed", c.seed);
  visit("format", c.format);
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  return in;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ValidationError(message);
}

}  // namespace

nlohmann::ordered_json to_json(const RunConfig& config) {
  nlohmann::ordered_json j;
  for_each_field(config, [&](const char* key, const auto& value) { j[key] = value; });
  return j;
}

RunConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("config file must hold a JSON object");
  RunConfig config;
  std::set<std::string> known;
  for_each_field(config, [&](const char* key, auto& value) {
    known.insert(key);
    if (!j.contains(key)) return;
    try {
      j.at(key).get_to(value);
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError(std::string("config key '") + key + "': " + e.what());
    }
  });
  for (const auto& item : j.items()) {
    if (!known.count(item.key())) throw ValidationError("unknown config key '" + item.key() + "'");
  }
  return config;
}

void validate(const RunConfig& c) {
  require(c.format == "csv" || c.format == "json", "format must be csv or json");
  require(c.grid == "linear" || c.grid == "log", "grid must be linear or log");
  require(c.points >= 1, "points must be >= 1");
  require(std::isfinite(c.tmin) && std::isfinite(c.tmax) && c.tmin >= 0.0 && c.tmax >= c.tmin,
          "time grid needs 0 <= tmin <= tmax");
  require(c.grid == "linear" || c.tmin > 0.0, "log grid needs tmin > 0");
  require(c.spectrum == "ohmic" || c.spectrum == "flat", "spectrum must be ohmic or flat");
  parse_scheme(c.scheme);
  parse_error_measure(c.measure);
  quadrature_spec(c).validate();
}

QuadratureSpec quadrature_spec(const RunConfig& config) {
  QuadratureSpec spec;
  spec.rel_tol = config.rel_tol;
  spec.max_panels = config.max_panels;
  return spec;
}

StorageOptions storage_options(const RunConfig& config) {
  StorageOptions options;
  options.measure = parse_error_measure(config.measure);
  return options;
}

PulseSequence make_sequence(const RunConfig& config) {
  const Scheme scheme = parse_scheme(config.scheme);
  if (scheme != Scheme::custom) return PulseSequence::make(scheme, config.n);
  if (!config.deltas_file.empty()) {
    auto in = open_input(config.deltas_file);
    return PulseSequence::from_csv(in);
  }
  return PulseSequence::custom(config.deltas);
}

Bath make_quantum_bath(const RunConfig& config) {
  if (!config.density_file.empty()) {
    auto in = open_input(config.density_file);
    return TabulatedBath(TabulatedSpectralDensity::from_csv(in), config.temperature);
  }
  return OhmicBath(config.alpha, config.omega_d, config.temperature);
}

ClassicalBath make_classical_bath(const RunConfig& config) {
  if (config.spectrum == "flat") return ClassicalBath::flat(config.level, config.omega_max);
  return ClassicalBath::from_quantum(OhmicBath(config.alpha, config.omega_d, config.temperature));
}

std::vector<double> time_grid(const RunConfig& config) {
  std::vector<double> grid(config.points);
  if (config.points == 1) {
    grid[0] = config.tmin;
    return grid;
  }
  const double last = static_cast<double>(config.points - 1);
  for (std::size_t i = 0; i < config.points; ++i) {
    const double f = static_cast<double>(i) / last;
    if (config.grid == "log") {
      grid[i] = config.tmin * std::pow(config.tmax / config.tmin, f);
    } else {
      grid[i] = config.tmin + (config.tmax - config.tmin) * f;
    }
  }
  grid.back() = config.tmax;
  return grid;
}

}  // namespace ddlab::cli
