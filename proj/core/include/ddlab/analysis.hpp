#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ddlab/bath.hpp"
#include "ddlab/decoherence.hpp"
#include "ddlab/quadrature.hpp"
#include "ddlab/sequences.hpp"

namespace ddlab {

/// Which error a storage criterion thresholds.
enum class ErrorMeasure {
  /// 1 - exp(-2 chi_n): loss of coherence, the bath-induced phase excluded.
  envelope,
  /// 1 - s_n including the cos(2 phi_n) factor.
  full_signal,
};

std::string_view to_string(ErrorMeasure measure) noexcept;
ErrorMeasure parse_error_measure(std::string_view name);

struct StorageOptions {
  ErrorMeasure measure = ErrorMeasure::envelope;
  double t_min = 1e-3;
  double t_max = 1e4;
  std::size_t scan_points = 60;
  /// Bisection stops once t_hi / t_lo <= 1 + rel_width.
  double rel_width = 1e-6;
};

struct StorageResult {
  double t_store = 0.0;
  double epsilon = 0.0;
  double t_lo = 0.0;
  double t_hi = 0.0;
  /// Number of chi (and phase) quadratures performed.
  std::size_t evaluations = 0;
  /// The error already reached epsilon at t_min; t_store = t_min.
  bool floor = false;
};

/// The error (per `measure`) of one coherence sample.
double error_measure(const CoherencePoint& point, ErrorMeasure measure) noexcept;

/// Error at time t, skipping the phase quadrature when it is not needed.
double error_at(const PulseSequence& seq, const Bath& bath, double t, const QuadratureSpec& quad,
                ErrorMeasure measure);

/// First time the error reaches epsilon: a log-spaced scan over
/// [t_min, t_max] locates the first sign change of error - epsilon, then
/// geometric bisection narrows it. Throws RangeExhaustedError (upper end)
/// when the error stays below epsilon up to t_max.
StorageResult storage_time(const PulseSequence& seq, const Bath& bath, double epsilon,
                           const QuadratureSpec& quad = {}, const StorageOptions& options = {});

struct MinPulsesResult {
  std::size_t n = 0;
  /// Storage time of the returned sequence; +inf when it never crosses.
  double storage = 0.0;
  /// Pulse counts at which storage time was found to decrease with n.
  std::vector<std::size_t> monotonicity_violations;
  bool linear_scan = false;
  std::size_t storage_evaluations = 0;
};

/// Smallest n with storage_time(scheme(n)) >= t_target, by doubling and
/// binary search. The neighbour n + 1 is re-checked; a violation of
/// monotonicity is recorded and the answer recomputed by linear scan.
/// Throws SearchExhaustedError when n would exceed max_n.
MinPulsesResult min_pulses(Scheme scheme, const Bath& bath, double epsilon, double t_target,
                           const QuadratureSpec& quad = {}, const StorageOptions& options = {},
                           std::size_t max_n = 100000);

struct SchemeStorage {
  double alpha = 0.0;
  double temperature = 0.0;
  std::optional<double> udd;
  std::optional<double> equidistant;
  /// udd / equidistant, when both exist.
  std::optional<double> ratio;
  std::string error;
};

struct SweepRow {
  Scheme scheme = Scheme::equidistant;
  std::size_t n = 0;
  double alpha = 0.0;
  double temperature = 0.0;
  double t = 0.0;
  CoherencePoint point;
  /// Empty on success, else the message of the failed evaluation.
  std::string error;
};

struct SweepTable {
  std::vector<SweepRow> rows;
  /// Per (alpha, T) storage comparison; empty unless an epsilon was given.
  std::vector<SchemeStorage> storage;
  QuadratureSpec quad;
  std::vector<double> t_grid;
};

/// Both schemes with n pulses over the Cartesian grid of ohmic couplings,
/// temperatures and times. Rows are ordered by (scheme, alpha, T, t) with
/// equidistant before udd and alphas/temperatures in input order. Cells that
/// fail carry their error instead of aborting the sweep.
SweepTable compare_schemes(std::size_t n, std::span<const double> alphas,
                           std::span<const double> temperatures, std::span<const double> t_grid,
                           const QuadratureSpec& quad = {},
                           std::optional<double> epsilon = std::nullopt,
                           const StorageOptions& options = {});

}  // namespace ddlab
