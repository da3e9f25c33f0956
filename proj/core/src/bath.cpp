#include "ddlab/bath.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>

#include "ddlab/error.hpp"

namespace ddlab {
namespace {

constexpr double kSeriesThreshold = 1e-6;

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_number(const std::string& field, std::size_t row) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(field, &used);
  } catch (const std::exception&) {
    throw ValidationError("row " + std::to_string(row) + ": not a number: '" + field + "'", row);
  }
  if (used != field.size()) {
    throw ValidationError("row " + std::to_string(row) + ": trailing characters in '" + field + "'",
                          row);
  }
  return value;
}

void check_temperature(double temperature) {
  if (!(temperature >= 0.0) || !std::isfinite(temperature)) {
    throw ValidationError("temperature must be finite and >= 0");
  }
}

}  // namespace

OhmicBath::OhmicBath(double alpha, double omega_d, double temperature)
    : alpha_(alpha), omega_d_(omega_d), temperature_(temperature) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw ValidationError("alpha must be finite and >= 0");
  }
  if (!(omega_d > 0.0) || !std::isfinite(omega_d)) {
    throw ValidationError("omega_d must be finite and > 0");
  }
  check_temperature(temperature);
}

TabulatedSpectralDensity::TabulatedSpectralDensity(std::vector<SpectralSample> samples)
    : samples_(std::move(samples)) {
  if (samples_.size() < 2) {
    throw ValidationError("a tabulated spectral density needs at least two samples");
  }
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const auto& s = samples_[i];
    if (!std::isfinite(s.omega) || !std::isfinite(s.density)) {
      throw ValidationError("sample " + std::to_string(i) + " is not finite", i);
    }
    if (s.omega < 0.0) {
      throw ValidationError("sample " + std::to_string(i) + " has negative omega", i);
    }
    if (s.density < 0.0) {
      throw ValidationError("sample " + std::to_string(i) + " has negative J", i);
    }
    if (i > 0 && !(s.omega > samples_[i - 1].omega)) {
      throw ValidationError("sample " + std::to_string(i) + ": omega not strictly ascending", i);
    }
  }
}

TabulatedSpectralDensity TabulatedSpectralDensity::from_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != "omega,J") {
    throw ValidationError("spectral density CSV must start with header 'omega,J'");
  }
  std::vector<SpectralSample> samples;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
      throw ValidationError("row " + std::to_string(row) + ": expected two columns", row);
    }
    samples.push_back({parse_number(trim(line.substr(0, comma)), row),
                       parse_number(trim(line.substr(comma + 1)), row)});
    ++row;
  }
  return TabulatedSpectralDensity(std::move(samples));
}

double TabulatedSpectralDensity::operator()(double omega) const {
  if (omega < 0.0) throw DomainError("spectral density evaluated at negative frequency");
  if (omega < samples_.front().omega || omega > samples_.back().omega) return 0.0;
  const auto upper = std::upper_bound(
      samples_.begin(), samples_.end(), omega,
      [](double w, const SpectralSample& s) { return w < s.omega; });
  if (upper == samples_.end()) return samples_.back().density;
  const auto& hi = *upper;
  const auto& lo = *(upper - 1);
  const double frac = (omega - lo.omega) / (hi.omega - lo.omega);
  return lo.density + frac * (hi.density - lo.density);
}

TabulatedBath::TabulatedBath(TabulatedSpectralDensity density, double temperature)
    : density_(std::move(density)), temperature_(temperature) {
  check_temperature(temperature);
}

ClassicalBath::ClassicalBath(Spectrum spectrum, double omega_max)
    : spectrum_(std::move(spectrum)), omega_max_(omega_max) {
  if (!spectrum_) throw ValidationError("classical bath needs a power spectrum");
  if (!(omega_max > 0.0) || !std::isfinite(omega_max)) {
    throw ValidationError("omega_max must be finite and > 0");
  }
}

ClassicalBath ClassicalBath::flat(double level, double omega_max) {
  if (!(level >= 0.0) || !std::isfinite(level)) {
    throw ValidationError("flat spectrum level must be finite and >= 0");
  }
  return ClassicalBath([level](double) { return level; }, omega_max);
}

ClassicalBath ClassicalBath::from_quantum(const OhmicBath& bath) {
  return ClassicalBath(
      [bath](double omega) {
        if (omega == 0.0) {
          // 2 alpha w coth(w/2T) -> 4 alpha T
          return std::numbers::pi * 4.0 * bath.alpha() * bath.temperature();
        }
        return std::numbers::pi * spectral_density(bath, omega) *
               thermal_weight(bath.temperature(), omega);
      },
      bath.omega_d());
}

double ClassicalBath::power(double omega) const {
  if (omega < 0.0) throw DomainError("power spectrum evaluated at negative frequency");
  if (omega > omega_max_) return 0.0;
  const double p = spectrum_(omega);
  if (!(p >= 0.0) || !std::isfinite(p)) {
    throw DomainError("power spectrum must be finite and >= 0, got " + std::to_string(p) +
                      " at omega = " + std::to_string(omega));
  }
  return p;
}

double spectral_density(const OhmicBath& bath, double omega) {
  if (omega < 0.0) throw DomainError("spectral density evaluated at negative frequency");
  return omega <= bath.omega_d() ? 2.0 * bath.alpha() * omega : 0.0;
}

double spectral_density(const TabulatedSpectralDensity& density, double omega) {
  return density(omega);
}

double thermal_weight(double temperature, double omega) {
  if (temperature < 0.0) throw DomainError("negative temperature");
  if (omega < 0.0) throw DomainError("thermal weight evaluated at negative frequency");
  if (temperature == 0.0) return 1.0;
  if (omega == 0.0) {
    throw DomainError("thermal weight diverges at omega = 0 for T > 0");
  }
  const double x = omega / (2.0 * temperature);
  if (x < kSeriesThreshold) return 1.0 / x + x / 3.0;
  return 1.0 / std::tanh(x);
}

double integrand_weight(const Bath& bath, double omega) {
  return std::visit(
      [omega](const auto& b) -> double {
        using B = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<B, OhmicBath>) {
          const double j = spectral_density(b, omega);
          return j == 0.0 ? 0.0 : j * thermal_weight(b.temperature(), omega);
        } else if constexpr (std::is_same_v<B, TabulatedBath>) {
          const double j = b.density()(omega);
          return j == 0.0 ? 0.0 : j * thermal_weight(b.temperature(), omega);
        } else {
          return b.power(omega) / std::numbers::pi;
        }
      },
      bath);
}

double cutoff_frequency(const Bath& bath) {
  return std::visit(
      [](const auto& b) -> double {
        using B = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<B, OhmicBath>) {
          return b.omega_d();
        } else if constexpr (std::is_same_v<B, TabulatedBath>) {
          return b.density().support_end();
        } else {
          return b.omega_max();
        }
      },
      bath);
}

bool is_classical(const Bath& bath) noexcept {
  return std::holds_alternative<ClassicalBath>(bath);
}

}  // namespace ddlab
