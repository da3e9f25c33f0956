#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ddlab/bath.hpp"
#include "ddlab/sequences.hpp"

namespace ddlab {

/// One spectral component sigma_k (a_k cos w_k t + b_k sin w_k t).
struct NoiseMode {
  double omega;
  double cos_amplitude;
  double sin_amplitude;
};

/// A sampled realization of classical Gaussian noise f(t).
struct Trajectory {
  /// Uniform grid 0, dt, ..., t_max.
  std::vector<double> times;
  std::vector<double> values;
  std::uint64_t seed = 0;
  std::size_t mode_count = 0;
  double dt = 0.0;
  std::vector<NoiseMode> modes;

  /// f(t) evaluated from the modes, at any time.
  double value_at(double t) const noexcept;
};

/// splitmix64 finalizer applied to base + (index + 1) * 0x9E3779B97F4A7C15.
/// Trajectory `index` of a Monte Carlo run with base seed `base` is seeded
/// with this value.
std::uint64_t trajectory_seed(std::uint64_t base, std::uint64_t index) noexcept;

/// Spectral synthesis on mode_count equal bins of [0, omega_max]:
/// w_k are bin midpoints, sigma_k^2 = p(w_k) dw / pi, and a_k, b_k are
/// standard normals drawn in the order a_0, b_0, a_1, b_1, ... from
/// std::mt19937_64(seed). The grid step is the largest t_max / K <= dt.
/// Throws DomainError when dt > pi / (4 omega_max) (aliasing).
Trajectory synthesize(const ClassicalBath& bath, double t_max, double dt, std::size_t mode_count,
                      std::uint64_t seed);

/// int_0^t f(t') c(t') dt' by the trapezoid rule, where c flips sign at each
/// pulse instant d_j t. The pulse instants and t are added to the grid as
/// extra nodes, so the sign is constant on every trapezoid.
double toggled_phase(const Trajectory& trajectory, const PulseSequence& seq, double t);

struct McEstimate {
  double mean = 1.0;
  /// Sample standard deviation / sqrt(samples).
  double standard_error = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  /// Empirical <phi^2>.
  double mean_phase_sq = 0.0;
};

/// Toggled phases of `samples` independent trajectories; entry i uses
/// trajectory_seed(seed, i). Same values as synthesize + toggled_phase, but
/// computed through per-mode trapezoid weights since the phase is linear in
/// the Gaussian amplitudes.
std::vector<double> mc_phase_samples(const ClassicalBath& bath, const PulseSequence& seq, double t,
                                     std::size_t samples, std::uint64_t seed, double dt,
                                     std::size_t mode_count);

/// Monte Carlo estimate of <cos phi>, the classical-noise signal. Needs at
/// least 100 samples. Reductions are pairwise, so the result is independent
/// of thread count.
McEstimate mc_signal(const ClassicalBath& bath, const PulseSequence& seq, double t,
                     std::size_t samples, std::uint64_t seed, double dt, std::size_t mode_count);

}  // namespace ddlab
