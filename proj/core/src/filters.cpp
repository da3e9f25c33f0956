#include "ddlab/filters.hpp"

#include <cmath>

#include "ddlab/bessel.hpp"
#include "ddlab/error.hpp"
#include "ddlab/summation.hpp"

namespace ddlab {
namespace {

// Below this ratio z / (2n + 2) the ascending series is used for the UDD
// filter; above it Miller's recurrence.
constexpr double kAscendingLimit = 0.05;

// At or below this |z| the filter is summed from the power moments; the
// interval form loses relative accuracy there once the low moments cancel.
constexpr double kMomentLimit = 1.0;

// y(z) = -sum_{m>=1} (iz)^m A_{m-1} / m!
std::complex<double> moment_series(const PulseSequence& seq, double z) {
  const auto moments = seq.power_moments();
  double re = 0.0;
  double im = 0.0;
  double term = 1.0;
  for (std::size_t j = 0; j < moments.size(); ++j) {
    term *= z / static_cast<double>(j + 1);
    // i^(j+1) cycles through i, -1, -i, 1
    switch (j % 4) {
      case 0: im -= term * moments[j]; break;
      case 1: re += term * moments[j]; break;
      case 2: im += term * moments[j]; break;
      default: re -= term * moments[j]; break;
    }
  }
  return {re, im};
}

std::complex<double> interval_sum(const PulseSequence& seq, double z) {
  if (std::abs(z) <= kMomentLimit) return moment_series(seq, z);
  CompensatedComplexSum sum;
  for (const auto& iv : seq.intervals()) {
    const double amplitude = iv.sign * std::sin(z * iv.half_width);
    const double phase = z * iv.midpoint;
    sum.add({amplitude * std::cos(phase), amplitude * std::sin(phase)});
  }
  // multiply by -2i
  const auto s = sum.value();
  return {2.0 * s.imag(), -2.0 * s.real()};
}

// The UDD filter goes through its Bessel representation for z < 2(n + 1),
// where the direct sum cancels; beyond that the direct sum is accurate.
bool bessel_route(const PulseSequence& seq, double z, double& value) {
  if (seq.scheme() != Scheme::udd) return false;
  if (std::abs(z) >= 2.0 * static_cast<double>(seq.size() + 1)) return false;
  value = udd_bessel_series(seq.size(), z);
  return true;
}

}  // namespace

double x_factor(const PulseSequence& seq, double z) {
  CompensatedSum sum;
  double sign = 1.0;
  for (double d : seq.deltas()) {
    sum.add(sign * std::sin(z * d));
    sign = -sign;
  }
  sum.add(sign * std::sin(z));
  return sum.value();
}

std::complex<double> y_factor(const PulseSequence& seq, double z) { return interval_sum(seq, z); }

double y_abs_sq(const PulseSequence& seq, double z) {
  double value = 0.0;
  if (bessel_route(seq, z, value)) return value;
  return std::norm(interval_sum(seq, z));
}

FilterValue evaluate_filters(const PulseSequence& seq, double z) {
  FilterValue out{z, x_factor(seq, z), y_factor(seq, z), 0.0, false};
  double value = 0.0;
  if (bessel_route(seq, z, value)) {
    out.y_abs_sq = value;
    out.bessel_sourced = true;
  } else {
    out.y_abs_sq = std::norm(out.y);
  }
  return out;
}

double equidistant_closed_form(std::size_t n, double z) {
  if (n == 0) throw DomainError("equidistant closed form needs n >= 1");
  const double arg = z / static_cast<double>(2 * n + 2);
  const double c = std::cos(arg);
  if (std::abs(c) < 1e-12) throw DomainError("equidistant closed form: tangent pole");
  const double tan_sq = std::pow(std::sin(arg) / c, 2);
  const double envelope = n % 2 == 0 ? std::cos(0.5 * z) : std::sin(0.5 * z);
  return 4.0 * tan_sq * envelope * envelope;
}

double bessel_approx(std::size_t n, double z) {
  const double big_n = static_cast<double>(n + 1);
  const double j = bessel_j(static_cast<int>(n + 1), 0.5 * z);
  return 16.0 * big_n * big_n * j * j;
}

double udd_bessel_series(std::size_t n, double z) {
  const int order = static_cast<int>(n + 1);
  const double a = 0.5 * std::abs(z);
  const double big_n = static_cast<double>(order);
  double s = 0.0;
  if (a < kAscendingLimit * big_n) {
    CompensatedSum sum;
    for (int m = 0; m < 64; ++m) {
      const double term = bessel_j_series((2 * m + 1) * order, a).value;
      sum.add((m * order) % 2 == 0 ? term : -term);
      if (term == 0.0 || std::abs(term) <= 1e-17 * std::abs(sum.value())) break;
    }
    s = sum.value();
  } else {
    s = bessel_odd_harmonic_sum(order, a);
  }
  return 16.0 * big_n * big_n * s * s;
}

double y_slope(const PulseSequence& seq) {
  CompensatedSum sum;
  for (const auto& iv : seq.intervals()) sum.add(2.0 * iv.sign * iv.half_width);
  return sum.value();
}

double x_slope(const PulseSequence& seq) {
  CompensatedSum sum;
  double sign = 1.0;
  for (double d : seq.deltas()) {
    sum.add(sign * d);
    sign = -sign;
  }
  sum.add(sign);
  return sum.value();
}

}  // namespace ddlab
