// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <gsl/gsl_sf_expint.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "ddlab/analysis.hpp"
#include "ddlab/decoherence.hpp"
#include "ddlab/filters.hpp"
#include "ddlab/mc_oracle.hpp"
#include "ddlab/sequences.hpp"

using namespace ddlab;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::vector<double> log_grid(double lo, double hi, int points) {
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i) {
    grid[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (points - 1));
  }
  return grid;
}

// Grid shared by criteria 10 and 12.
const std::vector<std::size_t> kGridN = {0, 1, 2, 5, 10, 20, 50, 100};
const std::vector<double> kGridT = {1e-3, 1e-2, 0.1, 0.5, 1.0, 2.0, 5.0,
                                    10.0, 20.0, 50.0, 100.0, 200.0, 500.0, 1000.0};
const std::vector<double> kGridTemperature = {0.0, 0.1};
constexpr double kGridAlpha = 0.1;
// Below this chi values are subnormal or close to it and carry no relative precision.
constexpr double kTiny = 1e-280;

Outcome udd_timing() {
  const auto one = PulseSequence::udd(1);
  const auto two = PulseSequence::udd(2);
  const bool pass = one.size() == 1 && one.deltas()[0] == 0.5 && two.size() == 2 &&
                    two.deltas()[0] == 0.25 && two.deltas()[1] == 0.75;
  return {pass, fmt("udd(1) = [%.17g], udd(2) = [%.17g, %.17g]", one.deltas()[0],
                    two.deltas()[0], two.deltas()[1])};
}

Outcome suppression_order() {
  bool pass = true;
  std::string detail;
  for (std::size_t n : {2u, 5u, 10u, 20u}) {
    const auto seq = PulseSequence::udd(n);
    // least-squares slope of log|y|^2 against log z on 41 log-spaced points
    const auto grid = log_grid(0.01, 0.1, 41);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (double z : grid) {
      const double x = std::log(z);
      const double y = std::log(y_abs_sq(seq, z));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double m = static_cast<double>(grid.size());
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    const double target = 2.0 * static_cast<double>(n) + 2.0;
    pass = pass && std::abs(slope - target) <= 0.01;
    detail += fmt("n=%zu: %.5f (target %.0f)  ", n, slope, target);
  }
  return {pass, detail};
}

Outcome bessel_approximation() {
  bool pass = true;
  std::string detail;
  for (std::size_t n : {1u, 5u, 20u}) {
    const auto seq = PulseSequence::udd(n);
    const double big_n = static_cast<double>(n + 1);
    double worst = 0.0;
    for (int i = 1; i <= 4000; ++i) {
      const double z = big_n * i / 4000.0;
      const double j = std::cyl_bessel_j(big_n, 0.5 * z);
      worst = std::max(worst, rel(y_abs_sq(seq, z), 16.0 * big_n * big_n * j * j));
    }
    for (double z : log_grid(1e-6, 1e-3 * big_n, 50)) {
      const double j = std::cyl_bessel_j(big_n, 0.5 * z);
      worst = std::max(worst, rel(y_abs_sq(seq, z), 16.0 * big_n * big_n * j * j));
    }
    pass = pass && worst < 1e-3;
    detail += fmt("n=%zu: %.2e  ", n, worst);
  }
  return {pass, "max relative deviation " + detail + "(limit 1e-3)"};
}

Outcome equidistant_closed_forms() {
  double worst = 0.0;
  double worst_z = 0.0;
  std::size_t worst_n = 0;
  std::size_t compared = 0;
  std::size_t above = 0;
  // how close the points that miss the tolerance sit to a zero of |y|^2: the
  // largest value of the smaller vanishing factor, envelope^2 or sin^2(arg)
  double above_depth = 0.0;
  for (std::size_t n = 1; n <= 50; ++n) {
    const auto seq = PulseSequence::equidistant(n);
    for (int i = 0; i <= 2000; ++i) {
      const double z = 20.0 * i / 2000.0;
      const double arg = z / static_cast<double>(2 * n + 2);
      if (std::abs(std::cos(arg)) < 1e-3) continue;  // tangent pole
      ++compared;
      const double direct = y_abs_sq(seq, z);
      const double closed = equidistant_closed_form(n, z);
      const double r = closed == 0.0 ? (direct == 0.0 ? 0.0 : INFINITY) : rel(direct, closed);
      if (r > 1e-12) {
        ++above;
        const double envelope = n % 2 == 0 ? std::cos(0.5 * z) : std::sin(0.5 * z);
        const double s = std::sin(arg);
        above_depth = std::max(above_depth, std::min(envelope * envelope, s * s));
      }
      if (r > worst) {
        worst = r;
        worst_z = z;
        worst_n = n;
      }
    }
  }
  std::string detail = fmt("max relative difference %.2e at n=%zu, z=%.4g over %zu points, "
                           "n = 1..50, z step 0.01 (limit 1e-12)",
                           worst, worst_n, worst_z, compared);
  if (above > 0) {
    detail += fmt("; %zu points exceed it, all near zeros of |y|^2 (vanishing factor squared "
                  "<= %.1e) where the sum is ill-conditioned in the instants: rounding them to "
                  "double moves the exactly evaluated sum past 1e-12",
                  above, above_depth);
  }
  return {worst <= 1e-12, detail};
}

Outcome free_evolution_oracle() {
  const double alpha = 0.1;
  const Bath bath = OhmicBath(alpha);
  const auto free = PulseSequence::udd(0);
  double worst_chi = 0.0;
  double worst_phi = 0.0;
  for (double t : log_grid(1e-3, 1e3, 61)) {
    const auto p = signal(free, bath, t);
    const double chi_ref = alpha * (std::numbers::egamma + std::log(t) - gsl_sf_Ci(t));
    const double phi_ref = alpha * gsl_sf_Si(t);
    worst_chi = std::max(worst_chi, std::abs(p.chi - chi_ref));
    worst_phi = std::max(worst_phi, std::abs(p.phi - phi_ref));
  }
  return {worst_chi <= 1e-9 && worst_phi <= 1e-9,
          fmt("max |chi - ref| %.2e, max |phi - ref| %.2e on 61 times in [1e-3, 1e3] (limit 1e-9)",
              worst_chi, worst_phi)};
}

struct StorageTable {
  double eq_strong = 0, eq_weak = 0, udd_strong = 0, udd_weak = 0;
};

StorageTable storage_table() {
  auto s = [](Scheme scheme, double alpha) {
    return storage_time(PulseSequence::make(scheme, 100), Bath{OhmicBath(alpha)}, 1e-4).t_store;
  };
  return {s(Scheme::equidistant, 0.25), s(Scheme::equidistant, 0.001), s(Scheme::udd, 0.25),
          s(Scheme::udd, 0.001)};
}

bool within(double v, double lo, double hi) { return v >= lo && v <= hi; }

Outcome storage_reproduction(const StorageTable& st) {
  const double ratio_strong = st.udd_strong / st.eq_strong;
  const double ratio_weak = st.udd_weak / st.eq_weak;
  const bool pass = within(st.eq_strong, 2.5, 10) && within(st.eq_weak, 30, 120) &&
                    within(st.udd_strong, 100, 400) && within(ratio_strong, 20, 80) &&
                    within(ratio_weak, 2, 8);
  return {pass, fmt("eq(100) a=0.25: %.3f [2.5,10]; eq(100) a=0.001: %.2f [30,120]; "
                    "udd(100) a=0.25: %.1f [100,400]; ratio a=0.25: %.1f [20,80]; "
                    "ratio a=0.001: %.2f [2,8]",
                    st.eq_strong, st.eq_weak, st.udd_strong, ratio_strong, ratio_weak)};
}

Outcome minimum_pulses() {
  const Bath bath = OhmicBath(0.25);
  const auto udd = min_pulses(Scheme::udd, bath, 1e-4, 5.0);
  const auto eq = min_pulses(Scheme::equidistant, bath, 1e-4, 5.0);
  const bool pass = within(static_cast<double>(udd.n), 4, 8) && within(static_cast<double>(eq.n), 50, 200);
  return {pass, fmt("udd: n = %zu (storage %.3f) [4,8]; equidistant: n = %zu (storage %.3f%s) [50,200]",
                    udd.n, udd.storage, eq.n, eq.storage,
                    eq.linear_scan ? ", linear scan after non-monotone storage" : "")};
}

Outcome udd_alpha_insensitivity(const StorageTable& st) {
  const double ratio = std::max(st.udd_strong, st.udd_weak) / std::min(st.udd_strong, st.udd_weak);
  return {ratio < 2.0, fmt("udd(100): %.2f at a=0.25, %.2f at a=0.001, max/min %.3f (limit 2)",
                           st.udd_strong, st.udd_weak, ratio)};
}

Outcome temperature_robustness() {
  const auto seq = PulseSequence::udd(20);
  const double cold = storage_time(seq, Bath{OhmicBath(0.1, 1.0, 0.0)}, 1e-4).t_store;
  const double warm = storage_time(seq, Bath{OhmicBath(0.1, 1.0, 0.1)}, 1e-4).t_store;
  const double change = std::abs(warm - cold) / cold;
  return {change < 0.1, fmt("udd(20) a=0.1: T=0 %.4f, T=0.1 %.4f, relative change %.2e (limit 0.1)",
                            cold, warm, change)};
}

// Runs f(seq, bath, t) over the standard grid and returns the worst relative
// discrepancy reported by f.
double over_standard_grid(const std::function<double(const PulseSequence&, const OhmicBath&, double)>& f,
                          std::size_t& points) {
  double worst = 0.0;
  points = 0;
  for (Scheme scheme : {Scheme::equidistant, Scheme::udd}) {
    for (std::size_t n : kGridN) {
      const auto seq = PulseSequence::make(scheme, n);
      for (double temperature : kGridTemperature) {
        const OhmicBath bath(kGridAlpha, 1.0, temperature);
        for (double t : kGridT) {
          worst = std::max(worst, f(seq, bath, t));
          ++points;
        }
      }
    }
  }
  return worst;
}

double relative_or_tiny(double a, double b) {
  if (std::abs(a) < kTiny && std::abs(b) < kTiny) return 0.0;
  return rel(a, b);
}

Outcome classical_quantum() {
  std::size_t points = 0;
  const double worst = over_standard_grid(
      [](const PulseSequence& seq, const OhmicBath& bath, double t) {
        const double quantum = chi(seq, Bath{bath}, t);
        const double classical = chi(seq, Bath{ClassicalBath::from_quantum(bath)}, t);
        return relative_or_tiny(classical, quantum);
      },
      points);
  return {worst <= 1e-10, fmt("max relative chi difference %.2e over %zu grid points (limit 1e-10)",
                              worst, points)};
}

Outcome monte_carlo() {
  const OhmicBath quantum(0.25);
  const auto bath = ClassicalBath::from_quantum(quantum);
  bool pass = true;
  double worst_z = 0.0;
  for (std::size_t n : {0u, 1u, 3u}) {
    const auto seq = PulseSequence::udd(n);
    for (double t : {0.5, 2.0, 5.0}) {
      const auto est = mc_signal(bath, seq, t, 10000, 1, 0.02, 512);
      const double target = std::exp(-2.0 * chi(seq, Bath{bath}, t));
      const double z = std::abs(est.mean - target) / est.standard_error;
      worst_z = std::max(worst_z, z);
      pass = pass && std::abs(est.mean - target) <= 3.0 * est.standard_error;
    }
  }
  const double p0 = 0.5;
  const double t = 4.0;
  const auto flat = mc_signal(ClassicalBath::flat(p0, 50.0), PulseSequence::udd(0), t, 10000, 1,
                              0.015, 512);
  const double flat_z = std::abs(flat.mean - std::exp(-0.5 * p0 * t)) / flat.standard_error;
  pass = pass && flat_z <= 3.0;
  return {pass, fmt("ohmic-derived p, n in {0,1,3} x t in {0.5,2,5}: max |z| %.2f; "
                    "flat p0=0.5 free decay at t=4: |z| %.2f (limit 3, 1e4 samples, 512 modes)",
                    worst_z, flat_z)};
}

Outcome quadrature_convergence() {
  QuadratureSpec base;
  base.rel_tol = 1e-10;
  QuadratureSpec halved;
  halved.rel_tol = 0.5e-10;
  std::size_t points = 0;
  const double worst = over_standard_grid(
      [&](const PulseSequence& seq, const OhmicBath& bath, double t) {
        return relative_or_tiny(chi(seq, Bath{bath}, t, halved), chi(seq, Bath{bath}, t, base));
      },
      points);
  return {worst < 1e-8, fmt("max relative chi change %.2e over %zu grid points (limit 1e-8)",
                            worst, points)};
}

}  // namespace

int main() {
  std::setvbuf(stdout, nullptr, _IONBF, 0);
  int failures = 0;
  auto report = [&](int id, const char* name, const std::function<Outcome()>& check) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::printf("%s [%2d] %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(),
                secs);
  };

  std::printf("storage times use the envelope error 1 - exp(-2 chi), threshold 1e-4\n");
  StorageTable st;
  bool have_storage = false;
  auto storage = [&]() -> const StorageTable& {
    if (!have_storage) {
      st = storage_table();
      have_storage = true;
    }
    return st;
  };

  report(1, "udd timing", udd_timing);
  report(2, "filter suppression order", suppression_order);
  report(3, "Bessel approximation", bessel_approximation);
  report(4, "equidistant closed forms", equidistant_closed_forms);
  report(5, "free-evolution oracle", free_evolution_oracle);
  report(6, "storage-time reproduction", [&] { return storage_reproduction(storage()); });
  report(7, "minimum pulses", minimum_pulses);
  report(8, "udd alpha-insensitivity", [&] { return udd_alpha_insensitivity(storage()); });
  report(9, "temperature robustness", temperature_robustness);
  report(10, "classical/quantum path equality", classical_quantum);
  report(11, "Monte Carlo oracle", monte_carlo);
  report(12, "quadrature convergence", quadrature_convergence);

  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
