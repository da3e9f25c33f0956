#include "ddlab/mc_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "ddlab/error.hpp"
#include "ddlab/parallel.hpp"
#include "ddlab/summation.hpp"

namespace ddlab {
namespace {

struct Grid {
  std::size_t steps;
  double dt;
};

Grid make_grid(const ClassicalBath& bath, double t_max, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("dt must be finite and > 0");
  if (!(t_max >= 0.0) || !std::isfinite(t_max)) throw ValidationError("t_max must be >= 0");
  if (dt > std::numbers::pi / (4.0 * bath.omega_max())) {
    throw DomainError("dt = " + std::to_string(dt) + " aliases omega_max = " +
                      std::to_string(bath.omega_max()) + "; need dt <= pi / (4 omega_max)");
  }
  if (t_max == 0.0) return {0, dt};
  const auto steps = static_cast<std::size_t>(std::ceil(t_max / dt * (1.0 - 1e-12)));
  return {std::max<std::size_t>(steps, 1), t_max / static_cast<double>(std::max<std::size_t>(steps, 1))};
}

struct ModeScale {
  double omega;
  double sigma;
};

std::vector<ModeScale> mode_scales(const ClassicalBath& bath, std::size_t mode_count) {
  if (mode_count < 8) throw ValidationError("mode_count must be >= 8");
  const double width = bath.omega_max() / static_cast<double>(mode_count);
  std::vector<ModeScale> scales(mode_count);
  for (std::size_t k = 0; k < mode_count; ++k) {
    const double omega = (static_cast<double>(k) + 0.5) * width;
    scales[k] = {omega, std::sqrt(bath.power(omega) * width / std::numbers::pi)};
  }
  return scales;
}

// Trapezoid nodes on [0, t]: the uniform grid plus every pulse instant, with
// the signed weight each node carries in the toggled integral.
struct Node {
  double time;
  double weight;
};

std::vector<Node> toggled_nodes(std::span<const double> grid, const PulseSequence& seq, double t) {
  std::vector<double> times;
  for (double g : grid) {
    if (g < t) times.push_back(g);
  }
  for (double d : seq.deltas()) times.push_back(d * t);
  times.push_back(t);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());

  std::vector<Node> nodes(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) nodes[i] = {times[i], 0.0};
  const auto deltas = seq.deltas();
  std::size_t flips = 0;
  for (std::size_t i = 0; i + 1 < times.size(); ++i) {
    const double mid = 0.5 * (times[i] + times[i + 1]);
    while (flips < deltas.size() && deltas[flips] * t < mid) ++flips;
    const double sign = flips % 2 == 0 ? 1.0 : -1.0;
    const double half = 0.5 * (times[i + 1] - times[i]) * sign;
    nodes[i].weight += half;
    nodes[i + 1].weight += half;
  }
  return nodes;
}

std::vector<double> uniform_times(const Grid& grid) {
  std::vector<double> times(grid.steps + 1);
  for (std::size_t k = 0; k <= grid.steps; ++k) times[k] = static_cast<double>(k) * grid.dt;
  return times;
}

void draw_amplitudes(std::uint64_t seed, std::span<const ModeScale> scales,
                     std::vector<NoiseMode>& modes) {
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  modes.resize(scales.size());
  for (std::size_t k = 0; k < scales.size(); ++k) {
    const double a = normal(engine);
    const double b = normal(engine);
    modes[k] = {scales[k].omega, scales[k].sigma * a, scales[k].sigma * b};
  }
}

}  // namespace

double Trajectory::value_at(double t) const noexcept {
  double f = 0.0;
  for (const auto& m : modes) {
    f += m.cos_amplitude * std::cos(m.omega * t) + m.sin_amplitude * std::sin(m.omega * t);
  }
  return f;
}

std::uint64_t trajectory_seed(std::uint64_t base, std::uint64_t index) noexcept {
  std::uint64_t z = base + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Trajectory synthesize(const ClassicalBath& bath, double t_max, double dt, std::size_t mode_count,
                      std::uint64_t seed) {
  const Grid grid = make_grid(bath, t_max, dt);
  const auto scales = mode_scales(bath, mode_count);
  Trajectory traj;
  traj.seed = seed;
  traj.mode_count = mode_count;
  traj.dt = grid.dt;
  draw_amplitudes(seed, scales, traj.modes);
  traj.times = uniform_times(grid);
  traj.values.resize(traj.times.size());
  for (std::size_t i = 0; i < traj.times.size(); ++i) traj.values[i] = traj.value_at(traj.times[i]);
  return traj;
}

double toggled_phase(const Trajectory& trajectory, const PulseSequence& seq, double t) {
  if (!(t >= 0.0)) throw DomainError("toggled_phase: negative time");
  if (!trajectory.times.empty() && t > trajectory.times.back() * (1.0 + 1e-12)) {
    throw DomainError("toggled_phase: t beyond the trajectory");
  }
  const auto nodes = toggled_nodes(trajectory.times, seq, t);
  CompensatedSum sum;
  std::size_t g = 0;
  for (const auto& node : nodes) {
    while (g < trajectory.times.size() && trajectory.times[g] < node.time) ++g;
    const bool on_grid = g < trajectory.times.size() && trajectory.times[g] == node.time;
    const double f = on_grid ? trajectory.values[g] : trajectory.value_at(node.time);
    sum.add(node.weight * f);
  }
  return sum.value();
}

std::vector<double> mc_phase_samples(const ClassicalBath& bath, const PulseSequence& seq, double t,
                                     std::size_t samples, std::uint64_t seed, double dt,
                                     std::size_t mode_count) {
  const Grid grid = make_grid(bath, t, dt);
  const auto scales = mode_scales(bath, mode_count);
  const auto nodes = toggled_nodes(uniform_times(grid), seq, t);

  // phi = sum_k sigma_k (a_k C_k + b_k S_k), C_k / S_k the toggled
  // trapezoid sums of cos / sin(w_k t')
  std::vector<double> cos_weight(mode_count);
  std::vector<double> sin_weight(mode_count);
  for (std::size_t k = 0; k < mode_count; ++k) {
    CompensatedSum c;
    CompensatedSum s;
    for (const auto& node : nodes) {
      c.add(node.weight * std::cos(scales[k].omega * node.time));
      s.add(node.weight * std::sin(scales[k].omega * node.time));
    }
    cos_weight[k] = c.value();
    sin_weight[k] = s.value();
  }

  std::vector<double> phases(samples);
  parallel_for(samples, [&](std::size_t i) {
    std::vector<NoiseMode> modes;
    draw_amplitudes(trajectory_seed(seed, i), scales, modes);
    double phi = 0.0;
    for (std::size_t k = 0; k < mode_count; ++k) {
      phi += modes[k].cos_amplitude * cos_weight[k] + modes[k].sin_amplitude * sin_weight[k];
    }
    phases[i] = phi;
  });
  return phases;
}

McEstimate mc_signal(const ClassicalBath& bath, const PulseSequence& seq, double t,
                     std::size_t samples, std::uint64_t seed, double dt, std::size_t mode_count) {
  if (samples < 100) throw ValidationError("mc_signal needs at least 100 samples");
  const auto phases = mc_phase_samples(bath, seq, t, samples, seed, dt, mode_count);

  const double count = static_cast<double>(samples);
  std::vector<double> scratch(samples);
  std::transform(phases.begin(), phases.end(), scratch.begin(), [](double p) { return std::cos(p); });
  const double mean = pairwise_sum(scratch) / count;
  std::transform(scratch.begin(), scratch.end(), scratch.begin(),
                 [mean](double c) { return (c - mean) * (c - mean); });
  const double variance = pairwise_sum(scratch) / (count - 1.0);
  std::transform(phases.begin(), phases.end(), scratch.begin(), [](double p) { return p * p; });

  McEstimate estimate;
  estimate.mean = mean;
  estimate.standard_error = std::sqrt(variance / count);
  estimate.samples = samples;
  estimate.seed = seed;
  estimate.mean_phase_sq = pairwise_sum(scratch) / count;
  return estimate;
}

}  // namespace ddlab
