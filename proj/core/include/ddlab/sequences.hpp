#pragma once

#include <cstddef>
#include <istream>
#include <span>
#include <string_view>
#include <vector>

namespace ddlab {

enum class Scheme { equidistant, udd, custom };

std::string_view to_string(Scheme scheme) noexcept;
/// Accepts "equidistant", "udd", "custom"; throws ValidationError otherwise.
Scheme parse_scheme(std::string_view name);

/// One toggling interval [start, end] of the normalized time axis, over which
/// the coupling sign is (-1)^k.
struct ToggleInterval {
  double midpoint;
  double half_width;
  double sign;
};

/// Normalized pi-pulse instants 0 < d_1 < ... < d_n < 1 on the interval
/// [0, t]. An empty sequence is free evolution.
class PulseSequence {
 public:
  /// d_m = m / (n + 1).
  static PulseSequence equidistant(std::size_t n);
  /// d_j = sin^2(pi j / (2n + 2)); the n = 2 member is the CPMG cycle.
  static PulseSequence udd(std::size_t n);
  /// Validates without reordering. Throws ValidationError naming the first
  /// offending index.
  static PulseSequence custom(std::vector<double> deltas);
  /// One-column CSV with header `delta`.
  static PulseSequence from_csv(std::istream& in);
  /// Builds `scheme(n)`; custom is rejected.
  static PulseSequence make(Scheme scheme, std::size_t n);

  std::span<const double> deltas() const noexcept { return deltas_; }
  Scheme scheme() const noexcept { return scheme_; }
  std::size_t size() const noexcept { return deltas_.size(); }

  /// The n + 1 toggling intervals between consecutive instants, with 0 and
  /// 1 as outer boundaries.
  std::span<const ToggleInterval> intervals() const noexcept { return intervals_; }

  /// A_j = (j + 1) int_0^1 c(u) u^j du = (-1)^n + 2 sum_i (-1)^(i-1) d_i^(j+1)
  /// for j < kMomentCount, c the toggling function. Accumulated in
  /// double-double, so moments that cancel keep their tiny exact value.
  std::span<const double> power_moments() const noexcept { return moments_; }
  static constexpr std::size_t kMomentCount = 40;

 private:
  PulseSequence(std::vector<double> deltas, Scheme scheme);

  std::vector<double> deltas_;
  Scheme scheme_;
  std::vector<ToggleInterval> intervals_;
  std::vector<double> moments_;
};

}  // namespace ddlab
