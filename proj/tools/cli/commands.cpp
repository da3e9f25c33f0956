#include "cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <string>
#include <string_view>

#include <CLI11.hpp>

#include "cli/output.hpp"
#include "cli/run_config.hpp"
#include "ddlab/analysis.hpp"
#include "ddlab/decoherence.hpp"
#include "ddlab/error.hpp"
#include "ddlab/mc_oracle.hpp"

namespace ddlab::cli {
namespace {

struct Invocation {
  RunConfig config;
  std::string config_file;
  std::string output;
  bool quiet = false;
};

struct Result {
  Table table;
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();
  int exit_code = kSuccess;
};

std::int64_t as_int(std::size_t v) { return static_cast<std::int64_t>(v); }

Result cmd_signal(const RunConfig& c, std::ostream& log) {
  const auto seq = make_sequence(c);
  const auto bath = make_quantum_bath(c);
  const auto grid = time_grid(c);
  log << "ddlab signal: " << c.scheme << " n=" << seq.size() << ", " << grid.size()
      << " time points\n";
  const auto curve = coherence_curve(seq, bath, grid, quadrature_spec(c));

  Result r;
  r.table.columns = {"t",   "phi",        "chi", "s", "one_minus_s", "one_minus_envelope",
                     "quad_error", "saturated"};
  for (const auto& p : curve) {
    r.table.rows.push_back({p.t, p.phi, p.chi, p.signal, p.one_minus_signal,
                            p.one_minus_envelope, p.quad_error, p.saturated});
  }
  return r;
}

Result cmd_storage(const RunConfig& c, std::ostream& log) {
  const auto seq = make_sequence(c);
  const auto bath = make_quantum_bath(c);
  log << "ddlab storage: " << c.scheme << " n=" << seq.size() << ", epsilon=" << c.epsilon << '\n';
  const auto s = storage_time(seq, bath, c.epsilon, quadrature_spec(c), storage_options(c));

  Result r;
  r.table.columns = {"scheme", "n",     "alpha", "temperature", "epsilon", "measure",
                     "t_store", "t_lo", "t_hi",  "evaluations", "floor"};
  r.table.rows.push_back({c.scheme, as_int(seq.size()), c.alpha, c.temperature, c.epsilon,
                          c.measure, s.t_store, s.t_lo, s.t_hi, as_int(s.evaluations), s.floor});
  return r;
}

Result cmd_min_pulses(const RunConfig& c, std::ostream& log) {
  const auto bath = make_quantum_bath(c);
  log << "ddlab min-pulses: " << c.scheme << ", epsilon=" << c.epsilon
      << ", t_target=" << c.t_target << '\n';
  const auto m = min_pulses(parse_scheme(c.scheme), bath, c.epsilon, c.t_target,
                            quadrature_spec(c), storage_options(c));
  std::string violations;
  for (std::size_t v : m.monotonicity_violations) {
    violations += (violations.empty() ? "" : ";") + std::to_string(v);
  }
  if (!violations.empty()) log << "warning: storage time not monotone in n at " << violations << '\n';

  Result r;
  r.table.columns = {"scheme", "alpha",   "temperature", "epsilon",     "measure",
                     "t_target", "n",     "storage",     "linear_scan", "violations"};
  r.table.rows.push_back({c.scheme, c.alpha, c.temperature, c.epsilon, c.measure, c.t_target,
                          as_int(m.n), m.storage, m.linear_scan, violations});
  return r;
}

Result cmd_compare(const RunConfig& c, std::ostream& log) {
  const auto grid = time_grid(c);
  log << "ddlab compare: n=" << c.n << ", " << c.alphas.size() << " couplings x "
      << c.temperatures.size() << " temperatures x " << grid.size() << " times\n";
  const auto sweep = compare_schemes(c.n, c.alphas, c.temperatures, grid, quadrature_spec(c),
                                     c.epsilon, storage_options(c));

  auto storage_of = [&](const SweepRow& row) -> const SchemeStorage* {
    for (const auto& s : sweep.storage) {
      if (s.alpha == row.alpha && s.temperature == row.temperature) return &s;
    }
    return nullptr;
  };

  Result r;
  r.table.columns = {"scheme", "n", "alpha", "temperature", "t", "phi", "chi", "s", "one_minus_s",
                     "one_minus_envelope", "storage_time", "storage_ratio", "error"};
  std::size_t succeeded = 0;
  for (const auto& row : sweep.rows) {
    std::vector<Cell> cells = {std::string(to_string(row.scheme)), as_int(row.n), row.alpha,
                               row.temperature, row.t};
    if (row.error.empty()) {
      ++succeeded;
      const auto& p = row.point;
      cells.insert(cells.end(), {p.phi, p.chi, p.signal, p.one_minus_signal, p.one_minus_envelope});
    } else {
      cells.insert(cells.end(), 5, std::monostate{});
    }
    const auto* s = storage_of(row);
    const auto& t_store = s ? (row.scheme == Scheme::udd ? s->udd : s->equidistant)
                            : std::optional<double>{};
    cells.push_back(t_store ? Cell{*t_store} : Cell{});
    cells.push_back(s && s->ratio ? Cell{*s->ratio} : Cell{});
    std::string error = row.error;
    if (s && !s->error.empty()) error += (error.empty() ? "" : "; ") + ("storage: " + s->error);
    cells.push_back(error);
    r.table.rows.push_back(std::move(cells));
  }

  auto storage = nlohmann::ordered_json::array();
  for (const auto& s : sweep.storage) {
    nlohmann::ordered_json item;
    item["alpha"] = s.alpha;
    item["temperature"] = s.temperature;
    item["udd"] = s.udd ? nlohmann::ordered_json(*s.udd) : nlohmann::ordered_json(nullptr);
    item["equidistant"] =
        s.equidistant ? nlohmann::ordered_json(*s.equidistant) : nlohmann::ordered_json(nullptr);
    item["ratio"] = s.ratio ? nlohmann::ordered_json(*s.ratio) : nlohmann::ordered_json(nullptr);
    item["error"] = s.error;
    storage.push_back(std::move(item));
  }
  r.extra["storage"] = std::move(storage);
  if (succeeded == 0 && !sweep.rows.empty()) r.exit_code = kQuadratureError;
  return r;
}

Result cmd_mc(const RunConfig& c, std::ostream& log) {
  const auto seq = make_sequence(c);
  const auto bath = make_classical_bath(c);
  log << "ddlab mc: " << c.scheme << " n=" << seq.size() << ", t=" << c.t << ", " << c.samples
      << " samples\n";
  const auto estimate = mc_signal(bath, seq, c.t, c.samples, c.seed, c.dt, c.modes);
  const double chi_value = chi(seq, Bath{bath}, c.t, quadrature_spec(c));
  const double analytic = std::exp(-2.0 * chi_value);
  const double diff = estimate.mean - analytic;
  double z = 0.0;
  if (estimate.standard_error > 0.0) {
    z = diff / estimate.standard_error;
  } else if (diff != 0.0) {
    z = std::copysign(std::numeric_limits<double>::infinity(), diff);
  }

  Result r;
  r.table.columns = {"scheme", "n",        "t",       "samples", "seed",
                     "mean",   "stderr",   "analytic", "z_score", "mean_phase_sq",
                     "gaussian_prediction"};
  r.table.rows.push_back({c.scheme, as_int(seq.size()), c.t, as_int(estimate.samples),
                          std::to_string(estimate.seed), estimate.mean, estimate.standard_error,
                          analytic, z, estimate.mean_phase_sq,
                          std::exp(-0.5 * estimate.mean_phase_sq)});
  return r;
}

void add_options(CLI::App& app, Invocation& inv) {
  RunConfig& c = inv.config;
  app.add_option("--config", inv.config_file, "JSON file with defaults for any flag below");
  app.add_option("--output", inv.output, "write results here instead of standard output");
  app.add_flag("--quiet", inv.quiet, "suppress progress messages on standard error");
  app.add_option("--format", c.format, "csv or json");

  app.add_option("--scheme", c.scheme, "equidistant, udd or custom");
  app.add_option("--n", c.n, "number of pi pulses");
  app.add_option("--deltas", c.deltas, "custom pulse instants in (0,1), comma separated")
      ->delimiter(',');
  app.add_option("--deltas-file", c.deltas_file, "custom pulse instants, CSV with header 'delta'");

  app.add_option("--alpha", c.alpha, "ohmic coupling");
  app.add_option("--omega-d", c.omega_d, "cutoff frequency (unit of frequency, default 1)");
  app.add_option("--temperature", c.temperature, "temperature in units of omega_d");
  app.add_option("--density-file", c.density_file, "tabulated J(w), CSV with header 'omega,J'");

  app.add_option("--epsilon", c.epsilon, "error threshold for storage times");
  app.add_option("--measure", c.measure, "storage error: envelope (1 - e^-2chi) or full (1 - s)");
  app.add_option("--t-target", c.t_target, "storage time to reach (min-pulses)");

  app.add_option("--tmin", c.tmin, "first time of the grid");
  app.add_option("--tmax", c.tmax, "last time of the grid");
  app.add_option("--points", c.points, "number of grid times");
  app.add_option("--grid", c.grid, "linear or log spacing");
  app.add_option("--alphas", c.alphas, "couplings for compare, comma separated")->delimiter(',');
  app.add_option("--temperatures", c.temperatures, "temperatures for compare, comma separated")
      ->delimiter(',');

  app.add_option("--rel-tol", c.rel_tol, "quadrature relative tolerance");
  app.add_option("--max-panels", c.max_panels, "quadrature panel budget");

  app.add_option("--spectrum", c.spectrum, "mc noise spectrum: ohmic (pi J coth) or flat");
  app.add_option("--level", c.level, "flat spectrum level p0");
  app.add_option("--omega-max", c.omega_max, "flat spectrum cutoff");
  app.add_option("--t", c.t, "evaluation time for mc");
  app.add_option("--samples", c.samples, "Monte Carlo trajectories");
  app.add_option("--dt", c.dt, "trajectory time step");
  app.add_option("--modes", c.modes, "spectral modes per trajectory");
  app.add_option("--seed", c.seed, "base seed");
}

std::string find_config_path(int argc, const char* const* argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string_view arg = argv[i];
    if (arg == "--config" && i + 1 < argc) return argv[i + 1];
    if (arg.starts_with("--config=")) return std::string(arg.substr(9));
  }
  return {};
}

int execute(const std::string& command, const Invocation& inv, std::ostream& out,
            std::ostream& err) {
  static const std::map<std::string, std::function<Result(const RunConfig&, std::ostream&)>>
      commands = {{"signal", cmd_signal},
                  {"storage", cmd_storage},
                  {"min-pulses", cmd_min_pulses},
                  {"compare", cmd_compare},
                  {"mc", cmd_mc}};
  validate(inv.config);

  std::ostream null_stream(nullptr);
  std::ostream& log = inv.quiet ? null_stream : err;
  const Result result = commands.at(command)(inv.config, log);

  std::ofstream file;
  if (!inv.output.empty()) {
    file.open(inv.output);
    if (!file) throw ValidationError("cannot write '" + inv.output + "'");
  }
  std::ostream& sink = inv.output.empty() ? out : file;
  const auto config = to_json(inv.config);
  if (inv.config.format == "json") {
    write_json(sink, command, config, result.table, result.extra);
  } else {
    write_csv(sink, command, config, result.table);
  }
  return result.exit_code;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Invocation inv;
  std::string command;
  try {
    if (const auto path = find_config_path(argc, argv); !path.empty()) {
      std::ifstream in(path);
      if (!in) throw ValidationError("cannot open config file '" + path + "'");
      nlohmann::json j;
      try {
        in >> j;
      } catch (const nlohmann::json::exception& e) {
        throw ValidationError("config file '" + path + "': " + e.what());
      }
      inv.config = config_from_json(j);
    }

    CLI::App app{"Dynamical decoupling of a dephasing qubit: coherence curves, storage times, "
                 "pulse-count searches and Monte Carlo cross-checks.",
                 "ddlab"};
    app.fallthrough();
    app.require_subcommand(1);
    add_options(app, inv);
    for (const char* name : {"signal", "storage", "min-pulses", "compare", "mc"}) {
      app.add_subcommand(name)->callback([&command, name] { command = name; });
    }
    app.get_subcommand("signal")->description("coherence curve s_n(t) over a time grid");
    app.get_subcommand("storage")->description("first time the error reaches epsilon");
    app.get_subcommand("min-pulses")->description("fewest pulses whose storage time reaches t-target");
    app.get_subcommand("compare")->description("udd vs equidistant over couplings and temperatures");
    app.get_subcommand("mc")->description("Monte Carlo signal for classical noise vs exp(-2 chi)");

    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
      return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
      app.exit(e, out, err);
      return kConfigError;
    }
    return execute(command, inv, out, err);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const QuadratureError& e) {
    err << "error: " << e.what() << " (best estimate " << e.best_estimate() << " +- "
        << e.error_bound() << ")\n";
    return kQuadratureError;
  } catch (const RangeExhaustedError& e) {
    err << "error: range exhausted at the "
        << (e.end() == RangeExhaustedError::End::upper ? "upper" : "lower") << " end: " << e.what()
        << '\n';
    return kSolverRangeError;
  } catch (const SearchExhaustedError& e) {
    err << "error: " << e.what() << '\n';
    return kSolverRangeError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace ddlab::cli
