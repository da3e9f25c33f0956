#include "ddlab/decoherence.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ddlab/error.hpp"
#include "ddlab/filters.hpp"
#include "ddlab/parallel.hpp"

namespace ddlab {
namespace {

// Below this fraction of the cutoff the integrands use their w -> 0 forms.
constexpr double kSmallOmega = 1e-8;

void check_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("time must be finite and >= 0");
}

double quantum_density(const Bath& bath, double omega) {
  if (const auto* ohmic = std::get_if<OhmicBath>(&bath)) return spectral_density(*ohmic, omega);
  return std::get<TabulatedBath>(bath).density()(omega);
}

template <class Integrand>
QuadratureResult integrate_filter(Integrand&& integrand, const Bath& bath, double t,
                                  const QuadratureSpec& quad) {
  const double cut = cutoff_frequency(bath);
  try {
    return integrate_adaptive(integrand, 0.0, cut, initial_panel_count(cut, t), quad);
  } catch (const QuadratureError& e) {
    throw QuadratureError(std::string(e.what()) + " at t = " + std::to_string(t),
                          e.best_estimate(), e.error_bound(), t);
  }
}

}  // namespace

std::size_t initial_panel_count(double omega_cut, double t) {
  const double half_periods = std::ceil(omega_cut * t / std::numbers::pi);
  return half_periods > 16.0 ? static_cast<std::size_t>(half_periods) : 16;
}

QuadratureResult chi_integral(const PulseSequence& seq, const Bath& bath, double t,
                              const QuadratureSpec& quad) {
  check_time(t);
  const double small = kSmallOmega * cutoff_frequency(bath);
  const double slope = y_slope(seq);
  const bool udd = seq.scheme() == Scheme::udd;
  auto integrand = [&](double omega) {
    const double weight = integrand_weight(bath, omega);
    if (weight == 0.0) return 0.0;
    if (omega < small) {
      // |y(wt)|^2 / w^2 -> (slope t)^2; the UDD filter (Bessel route) is
      // already analytic here and vanishes faster than w^2 for n >= 1.
      if (udd) return 0.25 * weight * (y_abs_sq(seq, omega * t) / (omega * omega));
      return 0.25 * weight * (slope * t) * (slope * t);
    }
    return 0.25 * weight / (omega * omega) * y_abs_sq(seq, omega * t);
  };
  return integrate_filter(integrand, bath, t, quad);
}

double chi(const PulseSequence& seq, const Bath& bath, double t, const QuadratureSpec& quad) {
  return chi_integral(seq, bath, t, quad).value;
}

QuadratureResult phase_integral(const PulseSequence& seq, const Bath& bath, double t,
                                const QuadratureSpec& quad) {
  check_time(t);
  if (is_classical(bath)) {
    quad.validate();
    return {};
  }
  const double small = kSmallOmega * cutoff_frequency(bath);
  const double slope = x_slope(seq);
  auto integrand = [&](double omega) {
    const double density = quantum_density(bath, omega);
    if (density == 0.0) return 0.0;
    if (omega < small) return 0.5 * density / omega * (slope * t);
    return 0.5 * density / (omega * omega) * x_factor(seq, omega * t);
  };
  return integrate_filter(integrand, bath, t, quad);
}

double phase(const PulseSequence& seq, const Bath& bath, double t, const QuadratureSpec& quad) {
  return phase_integral(seq, bath, t, quad).value;
}

CoherencePoint signal(const PulseSequence& seq, const Bath& bath, double t,
                      const QuadratureSpec& quad) {
  const auto chi_result = chi_integral(seq, bath, t, quad);
  const auto phi_result = phase_integral(seq, bath, t, quad);

  CoherencePoint point;
  point.t = t;
  point.phi = phi_result.value;
  point.quad_error = chi_result.abs_error;
  if (chi_result.value > kChiSaturation) {
    point.chi = kChiSaturation;
    point.signal = 0.0;
    point.one_minus_signal = 1.0;
    point.one_minus_envelope = 1.0;
    point.saturated = true;
    return point;
  }
  point.chi = chi_result.value;
  const double envelope = std::exp(-2.0 * point.chi);
  const double sin_phi = std::sin(point.phi);
  point.signal = std::cos(2.0 * point.phi) * envelope;
  point.one_minus_envelope = -std::expm1(-2.0 * point.chi);
  point.one_minus_signal = point.one_minus_envelope + envelope * 2.0 * sin_phi * sin_phi;
  return point;
}

std::vector<CoherencePoint> coherence_curve(const PulseSequence& seq, const Bath& bath,
                                            std::span<const double> t_grid,
                                            const QuadratureSpec& quad) {
  quad.validate();
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] >= 0.0) || !std::isfinite(t_grid[i])) {
      throw ValidationError("time grid entry " + std::to_string(i) + " is negative or not finite",
                            i);
    }
    if (i > 0 && t_grid[i] < t_grid[i - 1]) {
      throw ValidationError("time grid is not ascending at entry " + std::to_string(i), i);
    }
  }
  std::vector<CoherencePoint> curve(t_grid.size());
  parallel_for(t_grid.size(), [&](std::size_t i) { curve[i] = signal(seq, bath, t_grid[i], quad); });
  return curve;
}

}  // namespace ddlab
