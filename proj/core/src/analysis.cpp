#include "ddlab/analysis.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "ddlab/error.hpp"
#include "ddlab/parallel.hpp"

namespace ddlab {
namespace {

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ValidationError("epsilon must lie in (0, 1)");
}

void check_options(const StorageOptions& options) {
  if (!(options.t_min > 0.0) || !(options.t_max > options.t_min) || !std::isfinite(options.t_max)) {
    throw ValidationError("storage scan needs 0 < t_min < t_max < inf");
  }
  if (options.scan_points < 2) throw ValidationError("storage scan needs at least 2 points");
  if (!(options.rel_width > 0.0)) throw ValidationError("rel_width must be > 0");
}

}  // namespace

std::string_view to_string(ErrorMeasure measure) noexcept {
  return measure == ErrorMeasure::envelope ? "envelope" : "full";
}

ErrorMeasure parse_error_measure(std::string_view name) {
  if (name == "envelope") return ErrorMeasure::envelope;
  if (name == "full") return ErrorMeasure::full_signal;
  throw ValidationError("unknown error measure '" + std::string(name) + "'");
}

double error_measure(const CoherencePoint& point, ErrorMeasure measure) noexcept {
  return measure == ErrorMeasure::envelope ? point.one_minus_envelope : point.one_minus_signal;
}

double error_at(const PulseSequence& seq, const Bath& bath, double t, const QuadratureSpec& quad,
                ErrorMeasure measure) {
  if (measure == ErrorMeasure::full_signal) return signal(seq, bath, t, quad).one_minus_signal;
  const double c = chi(seq, bath, t, quad);
  return c > kChiSaturation ? 1.0 : -std::expm1(-2.0 * c);
}

StorageResult storage_time(const PulseSequence& seq, const Bath& bath, double epsilon,
                           const QuadratureSpec& quad, const StorageOptions& options) {
  check_epsilon(epsilon);
  check_options(options);
  quad.validate();

  StorageResult result;
  result.epsilon = epsilon;
  auto error = [&](double t) {
    ++result.evaluations;
    return error_at(seq, bath, t, quad, options.measure);
  };

  const double log_min = std::log10(options.t_min);
  const double log_step =
      (std::log10(options.t_max) - log_min) / static_cast<double>(options.scan_points - 1);
  auto scan_time = [&](std::size_t i) {
    if (i == 0) return options.t_min;
    if (i + 1 == options.scan_points) return options.t_max;
    return std::pow(10.0, log_min + log_step * static_cast<double>(i));
  };

  if (error(options.t_min) >= epsilon) {
    result.t_store = result.t_lo = result.t_hi = options.t_min;
    result.floor = true;
    return result;
  }

  double t_lo = options.t_min;
  double t_hi = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 1; i < options.scan_points; ++i) {
    const double t = scan_time(i);
    if (error(t) >= epsilon) {
      t_hi = t;
      break;
    }
    t_lo = t;
  }
  if (std::isnan(t_hi)) {
    throw RangeExhaustedError("error stays below epsilon = " + std::to_string(epsilon) +
                                  " up to the upper end of the scan, t = " +
                                  std::to_string(options.t_max),
                              RangeExhaustedError::End::upper);
  }

  while (t_hi / t_lo > 1.0 + options.rel_width) {
    const double mid = std::sqrt(t_lo * t_hi);
    if (!(mid > t_lo && mid < t_hi)) break;
    if (error(mid) >= epsilon) {
      t_hi = mid;
    } else {
      t_lo = mid;
    }
  }
  result.t_lo = t_lo;
  result.t_hi = t_hi;
  result.t_store = std::sqrt(t_lo * t_hi);
  return result;
}

MinPulsesResult min_pulses(Scheme scheme, const Bath& bath, double epsilon, double t_target,
                           const QuadratureSpec& quad, const StorageOptions& options,
                           std::size_t max_n) {
  check_epsilon(epsilon);
  if (!(t_target > 0.0) || !std::isfinite(t_target)) {
    throw ValidationError("t_target must be finite and > 0");
  }
  if (scheme == Scheme::custom) throw ValidationError("min_pulses needs equidistant or udd");

  MinPulsesResult result;
  std::map<std::size_t, double> cache;
  auto storage = [&](std::size_t n) {
    if (n > max_n) {
      throw SearchExhaustedError("no pulse count up to " + std::to_string(max_n) +
                                 " reaches storage time " + std::to_string(t_target));
    }
    if (const auto it = cache.find(n); it != cache.end()) return it->second;
    ++result.storage_evaluations;
    double t = std::numeric_limits<double>::infinity();
    try {
      t = storage_time(PulseSequence::make(scheme, n), bath, epsilon, quad, options).t_store;
    } catch (const RangeExhaustedError&) {
      // never crosses within the scan range
    }
    cache.emplace(n, t);
    return t;
  };
  auto passes = [&](std::size_t n) { return storage(n) >= t_target; };

  std::size_t found = 0;
  if (!passes(0)) {
    std::size_t lo = 0;
    std::size_t hi = 1;
    while (!passes(hi)) {
      lo = hi;
      hi = hi > max_n / 2 ? max_n + 1 : 2 * hi;
    }
    while (hi - lo > 1) {
      const std::size_t mid = lo + (hi - lo) / 2;
      (passes(mid) ? hi : lo) = mid;
    }
    found = hi;
    if (found + 1 <= max_n && !passes(found + 1)) {
      result.monotonicity_violations.push_back(found + 1);
    }
    for (const auto& [n, t] : cache) {
      if (n < found && t >= t_target) result.monotonicity_violations.push_back(n);
    }
    if (!result.monotonicity_violations.empty()) {
      result.linear_scan = true;
      found = 0;
      while (!passes(found)) ++found;
    }
  }
  result.n = found;
  result.storage = storage(found);
  return result;
}

SweepTable compare_schemes(std::size_t n, std::span<const double> alphas,
                           std::span<const double> temperatures, std::span<const double> t_grid,
                           const QuadratureSpec& quad, std::optional<double> epsilon,
                           const StorageOptions& options) {
  quad.validate();
  if (epsilon) check_epsilon(*epsilon);
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    if (t_grid[i] < t_grid[i - 1]) throw ValidationError("time grid is not ascending", i);
  }
  for (double t : t_grid) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw ValidationError("time grid has a negative entry");
  }

  const Scheme schemes[] = {Scheme::equidistant, Scheme::udd};
  SweepTable table;
  table.quad = quad;
  table.t_grid.assign(t_grid.begin(), t_grid.end());
  for (Scheme scheme : schemes) {
    for (double alpha : alphas) {
      for (double temperature : temperatures) {
        for (double t : t_grid) {
          SweepRow row;
          row.scheme = scheme;
          row.n = n;
          row.alpha = alpha;
          row.temperature = temperature;
          row.t = t;
          table.rows.push_back(row);
        }
      }
    }
  }

  const auto equidistant = PulseSequence::equidistant(n);
  const auto udd = PulseSequence::udd(n);
  parallel_for(table.rows.size(), [&](std::size_t i) {
    auto& row = table.rows[i];
    try {
      const Bath bath = OhmicBath(row.alpha, 1.0, row.temperature);
      row.point = signal(row.scheme == Scheme::udd ? udd : equidistant, bath, row.t, quad);
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  });

  if (epsilon) {
    for (double alpha : alphas) {
      for (double temperature : temperatures) {
        table.storage.push_back({alpha, temperature, {}, {}, {}, {}});
      }
    }
    std::vector<std::string> errors(table.storage.size() * 2);
    parallel_for(errors.size(), [&](std::size_t i) {
      auto& cell = table.storage[i / 2];
      const bool is_udd = i % 2 == 1;
      try {
        const Bath bath = OhmicBath(cell.alpha, 1.0, cell.temperature);
        const double t = storage_time(is_udd ? udd : equidistant, bath, *epsilon, quad, options).t_store;
        (is_udd ? cell.udd : cell.equidistant) = t;
      } catch (const std::exception& e) {
        errors[i] = std::string(is_udd ? "udd: " : "equidistant: ") + e.what();
      }
    });
    for (std::size_t c = 0; c < table.storage.size(); ++c) {
      auto& cell = table.storage[c];
      cell.error = errors[2 * c];
      if (!errors[2 * c + 1].empty()) {
        cell.error += (cell.error.empty() ? "" : "; ") + errors[2 * c + 1];
      }
      if (cell.udd && cell.equidistant) cell.ratio = *cell.udd / *cell.equidistant;
    }
  }
  return table;
}

}  // namespace ddlab
