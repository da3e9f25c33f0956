#pragma once

#include <span>
#include <vector>

#include "ddlab/bath.hpp"
#include "ddlab/quadrature.hpp"
#include "ddlab/sequences.hpp"

namespace ddlab {

/// exp(-2 chi) underflows past this exponent; larger values are clamped.
inline constexpr double kChiSaturation = 350.0;

/// One sample of s_n(t) = cos(2 phi_n) exp(-2 chi_n). The two "one minus"
/// fields are evaluated without cancellation, so they stay accurate at the
/// 1e-4 .. 1e-12 error levels the storage analysis works at.
struct CoherencePoint {
  double t = 0.0;
  double phi = 0.0;
  double chi = 0.0;
  double signal = 1.0;
  double one_minus_signal = 0.0;
  /// 1 - exp(-2 chi): the decoherence part of the error, phase excluded.
  double one_minus_envelope = 0.0;
  /// Estimated absolute quadrature error on chi.
  double quad_error = 0.0;
  /// chi exceeded kChiSaturation; chi is clamped and the signal reported as 0.
  bool saturated = false;
};

/// chi_n(t) = int_0^{w_cut} weight(w) / (4 w^2) |y_n(w t)|^2 dw.
QuadratureResult chi_integral(const PulseSequence& seq, const Bath& bath, double t,
                              const QuadratureSpec& quad = {});
double chi(const PulseSequence& seq, const Bath& bath, double t, const QuadratureSpec& quad = {});

/// phi_n(t) = int_0^{w_cut} J(w) / (2 w^2) x_n(w t) dw; identically zero for
/// classical baths.
QuadratureResult phase_integral(const PulseSequence& seq, const Bath& bath, double t,
                                const QuadratureSpec& quad = {});
double phase(const PulseSequence& seq, const Bath& bath, double t, const QuadratureSpec& quad = {});

CoherencePoint signal(const PulseSequence& seq, const Bath& bath, double t,
                      const QuadratureSpec& quad = {});

/// One point per grid time, in grid order. The grid must be ascending and
/// nonnegative. A failing point rethrows its QuadratureError with the time
/// attached.
std::vector<CoherencePoint> coherence_curve(const PulseSequence& seq, const Bath& bath,
                                            std::span<const double> t_grid,
                                            const QuadratureSpec& quad = {});

/// Initial panel count for a time t: one panel per half period of the
/// fastest filter oscillation, at least 16.
std::size_t initial_panel_count(double omega_cut, double t);

}  // namespace ddlab
