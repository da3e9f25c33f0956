#pragma once

#include <complex>
#include <cstddef>

#include "ddlab/sequences.hpp"

namespace ddlab {

/// Filter factors of a pulse sequence at z = w t.
struct FilterValue {
  double z;
  double x;
  std::complex<double> y;
  double y_abs_sq;
  /// y_abs_sq came from the Bessel representation of the UDD filter rather
  /// than from |y|^2; then y itself carries only absolute accuracy.
  bool bessel_sourced;
};

/// x_n(z) = (-1)^n sin z + sum_m (-1)^(m+1) sin(z d_m); enters the phase only.
double x_factor(const PulseSequence& seq, double z);

/// y_n(z) = 1 + (-1)^(n+1) e^{iz} + 2 sum_m (-1)^m e^{i z d_m}, summed over
/// toggling intervals as -2i sum_k s_k e^{i z c_k} sin(z h_k) with
/// compensation. Vanishes exactly at z = 0.
std::complex<double> y_factor(const PulseSequence& seq, double z);

/// |y_n(z)|^2. UDD sequences use the Bessel representation where the direct
/// sum would cancel to below its rounding floor.
double y_abs_sq(const PulseSequence& seq, double z);

FilterValue evaluate_filters(const PulseSequence& seq, double z);

/// Closed form of |y_n|^2 for n equidistant pulses:
/// 4 tan^2(z/(2n+2)) cos^2(z/2) for even n, sin^2 in place of cos^2 for odd n.
/// Throws DomainError for n = 0 or within 1e-12 of a tangent pole.
double equidistant_closed_form(std::size_t n, double z);

/// Leading Bessel form 16 (n+1)^2 J_{n+1}(z/2)^2 of the UDD filter.
double bessel_approx(std::size_t n, double z);

/// Exact UDD filter through the Jacobi-Anger expansion:
///   |y_n(z)|^2 = 16 N^2 (sum_{m>=0} (-1)^{mN} J_{(2m+1)N}(z/2))^2,  N = n + 1.
/// Ascending series for z < 0.1 (n + 1), Miller's recurrence above; meant
/// for z < 2(n + 1).
double udd_bessel_series(std::size_t n, double z);

/// Leading small-z coefficients: |y_n(z)|^2 ~ (y_slope z)^2 and
/// x_n(z) ~ x_slope z. y_slope is the integral of the toggling function.
double y_slope(const PulseSequence& seq);
double x_slope(const PulseSequence& seq);

}  // namespace ddlab
