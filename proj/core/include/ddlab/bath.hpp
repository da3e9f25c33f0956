#pragma once

#include <functional>
#include <istream>
#include <variant>
#include <vector>

namespace ddlab {

/// Ohmic spectral density with a hard Debye cutoff, J(w) = 2 alpha w for
/// w <= omega_d. Frequencies are in units of omega_d (default 1), so times
/// are in units of the bath correlation time t_C = 1 / omega_d. Temperature
/// is an energy with k_B = hbar = 1; zero means the ground state.
class OhmicBath {
 public:
  explicit OhmicBath(double alpha, double omega_d = 1.0, double temperature = 0.0);

  double alpha() const noexcept { return alpha_; }
  double omega_d() const noexcept { return omega_d_; }
  double temperature() const noexcept { return temperature_; }

 private:
  double alpha_;
  double omega_d_;
  double temperature_;
};

struct SpectralSample {
  double omega;
  double density;
};

/// Piecewise-linear J(w) through the given samples, identically zero outside
/// [first omega, last omega].
class TabulatedSpectralDensity {
 public:
  explicit TabulatedSpectralDensity(std::vector<SpectralSample> samples);

  /// Reads a two-column CSV with header `omega,J`.
  static TabulatedSpectralDensity from_csv(std::istream& in);

  double operator()(double omega) const;
  double support_end() const noexcept { return samples_.back().omega; }
  const std::vector<SpectralSample>& samples() const noexcept { return samples_; }

 private:
  std::vector<SpectralSample> samples_;
};

/// Quantum bath described by a tabulated J(w) at a given temperature.
class TabulatedBath {
 public:
  explicit TabulatedBath(TabulatedSpectralDensity density, double temperature = 0.0);

  const TabulatedSpectralDensity& density() const noexcept { return density_; }
  double temperature() const noexcept { return temperature_; }

 private:
  TabulatedSpectralDensity density_;
  double temperature_;
};

/// Classical Gaussian noise f(t) with one-sided power spectrum p(w) on
/// [0, omega_max]. The autocovariance is g(tau) = (1/pi) int_0^inf p(w) cos(w tau) dw.
class ClassicalBath {
 public:
  using Spectrum = std::function<double(double)>;

  ClassicalBath(Spectrum spectrum, double omega_max);

  /// p(w) = level on [0, omega_max].
  static ClassicalBath flat(double level, double omega_max);
  /// p(w) = pi J(w) coth(w / 2T): the classical bath whose decoherence
  /// exponent equals that of `bath`.
  static ClassicalBath from_quantum(const OhmicBath& bath);

  /// Evaluates p(w); zero above omega_max. Throws DomainError on a negative
  /// or non-finite spectrum value.
  double power(double omega) const;
  double omega_max() const noexcept { return omega_max_; }

 private:
  Spectrum spectrum_;
  double omega_max_;
};

using Bath = std::variant<OhmicBath, TabulatedBath, ClassicalBath>;

double spectral_density(const OhmicBath& bath, double omega);
double spectral_density(const TabulatedSpectralDensity& density, double omega);

/// coth(w / 2T), with the exact value 1 at T = 0 and the two-term Laurent
/// series below w / 2T = 1e-6.
double thermal_weight(double temperature, double omega);

/// J(w) coth(w / 2T) for quantum baths, p(w) / pi for classical ones.
double integrand_weight(const Bath& bath, double omega);

/// Upper end of the frequency integrals.
double cutoff_frequency(const Bath& bath);

bool is_classical(const Bath& bath) noexcept;

}  // namespace ddlab
