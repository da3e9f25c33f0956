#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ddlab/analysis.hpp"
#include "ddlab/bath.hpp"
#include "ddlab/quadrature.hpp"
#include "ddlab/sequences.hpp"

namespace ddlab::cli {

/// Every knob of a run. Keys of the JSON form equal the long flag names, so
/// the `config` object embedded in an output file can be passed back via
/// --config to reproduce the run.
struct RunConfig {
  std::string scheme = "udd";
  std::size_t n = 0;
  std::vector<double> deltas;
  std::string deltas_file;

  double alpha = 0.1;
  double omega_d = 1.0;
  double temperature = 0.0;
  std::string density_file;

  double epsilon = 1e-4;
  std::string measure = "envelope";
  double t_target = 5.0;

  double tmin = 0.0;
  double tmax = 10.0;
  std::size_t points = 100;
  std::string grid = "linear";

  std::vector<double> alphas = {0.25, 0.1, 0.01, 0.001};
  std::vector<double> temperatures = {0.0};

  double rel_tol = 1e-10;
  std::size_t max_panels = std::size_t{1} << 20;

  std::string spectrum = "ohmic";
  double level = 0.0;
  double omega_max = 1.0;
  double t = 1.0;
  std::size_t samples = 10000;
  double dt = 0.02;
  std::size_t modes = 512;
  std::uint64_t seed = 1;

  std::string format = "csv";
};

nlohmann::ordered_json to_json(const RunConfig& config);
/// Throws ValidationError on unknown keys or mistyped values.
RunConfig config_from_json(const nlohmann::json& j);

/// Semantic checks beyond types (grid, scheme names, ranges).
void validate(const RunConfig& config);

QuadratureSpec quadrature_spec(const RunConfig& config);
StorageOptions storage_options(const RunConfig& config);
PulseSequence make_sequence(const RunConfig& config);
/// Ohmic bath, or a tabulated one when density_file is set.
Bath make_quantum_bath(const RunConfig& config);
ClassicalBath make_classical_bath(const RunConfig& config);
std::vector<double> time_grid(const RunConfig& config);

}  // namespace ddlab::cli
