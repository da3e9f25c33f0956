#include "ddlab/sequences.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "ddlab/error.hpp"

namespace ddlab {
namespace {

// Fills the upper half as 1 - lower half so that d_j + d_{n+1-j} == 1 holds
// bit-exactly; the lower half is the accurately computed one.
template <class LowerHalf>
std::vector<double> symmetric_instants(std::size_t n, LowerHalf lower) {
  std::vector<double> deltas(n);
  for (std::size_t j = 1; 2 * j < n + 1; ++j) {
    const double d = lower(j);
    deltas[j - 1] = d;
    deltas[n - j] = 1.0 - d;
  }
  if (n % 2 == 1) deltas[n / 2] = 0.5;
  return deltas;
}

// Unevaluated sum hi + lo carrying about 106 bits.
struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;
};

DoubleDouble renormalize(double hi, double lo) {
  const double s = hi + lo;
  return {s, lo - (s - hi)};
}

DoubleDouble operator+(DoubleDouble a, DoubleDouble b) {
  const double s = a.hi + b.hi;
  const double bb = s - a.hi;
  const double err = (a.hi - (s - bb)) + (b.hi - bb);
  return renormalize(s, err + a.lo + b.lo);
}

DoubleDouble operator*(DoubleDouble a, double b) {
  const double p = a.hi * b;
  return renormalize(p, std::fma(a.hi, b, -p) + a.lo * b);
}

std::vector<double> compute_moments(std::span<const double> deltas) {
  std::vector<DoubleDouble> acc(PulseSequence::kMomentCount);
  double sign = 2.0;
  for (double d : deltas) {
    DoubleDouble power{d, 0.0};
    for (auto& a : acc) {
      a = a + power * sign;
      power = power * d;
    }
    sign = -sign;
  }
  std::vector<double> moments(acc.size());
  for (std::size_t j = 0; j < acc.size(); ++j) {
    moments[j] = (acc[j] + DoubleDouble{0.5 * sign, 0.0}).hi;
  }
  return moments;
}

std::string format_instant(std::size_t i, double value) {
  return "instant " + std::to_string(i) + " (" + std::to_string(value) + ")";
}

}  // namespace

std::string_view to_string(Scheme scheme) noexcept {
  switch (scheme) {
    case Scheme::equidistant:
      return "equidistant";
    case Scheme::udd:
      return "udd";
    case Scheme::custom:
      return "custom";
  }
  return "unknown";
}

Scheme parse_scheme(std::string_view name) {
  if (name == "equidistant") return Scheme::equidistant;
  if (name == "udd") return Scheme::udd;
  if (name == "custom") return Scheme::custom;
  throw ValidationError("unknown scheme '" + std::string(name) + "'");
}

PulseSequence::PulseSequence(std::vector<double> deltas, Scheme scheme)
    : deltas_(std::move(deltas)), scheme_(scheme) {
  intervals_.reserve(deltas_.size() + 1);
  double start = 0.0;
  double sign = 1.0;
  for (std::size_t k = 0; k <= deltas_.size(); ++k) {
    const double end = k < deltas_.size() ? deltas_[k] : 1.0;
    intervals_.push_back({0.5 * (start + end), 0.5 * (end - start), sign});
    start = end;
    sign = -sign;
  }
  moments_ = compute_moments(deltas_);
}

PulseSequence PulseSequence::equidistant(std::size_t n) {
  const double denom = static_cast<double>(n + 1);
  return PulseSequence(
      symmetric_instants(n, [denom](std::size_t m) { return static_cast<double>(m) / denom; }),
      Scheme::equidistant);
}

PulseSequence PulseSequence::udd(std::size_t n) {
  const double step = std::numbers::pi / static_cast<double>(2 * n + 2);
  return PulseSequence(symmetric_instants(n,
                                          [step, n](std::size_t j) {
                                            // the one rational value in the lower half (Niven);
                                            // sin(pi/6)^2 rounds to 0.25 - 2^-54
                                            if (3 * j == n + 1) return 0.25;
                                            const double s = std::sin(step * static_cast<double>(j));
                                            return s * s;
                                          }),
                       Scheme::udd);
}

PulseSequence PulseSequence::custom(std::vector<double> deltas) {
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    const double d = deltas[i];
    if (!(d > 0.0 && d < 1.0)) {
      throw ValidationError(format_instant(i, d) + " is outside the open interval (0, 1)", i);
    }
    if (i > 0 && !(d > deltas[i - 1])) {
      throw ValidationError(format_instant(i, d) + " is not greater than " +
                                format_instant(i - 1, deltas[i - 1]),
                            i);
    }
  }
  return PulseSequence(std::move(deltas), Scheme::custom);
}

PulseSequence PulseSequence::from_csv(std::istream& in) {
  std::string line;
  auto strip = [](std::string s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return std::string{};
    return s.substr(first, s.find_last_not_of(" \t\r\n") - first + 1);
  };
  if (!std::getline(in, line) || strip(line) != "delta") {
    throw ValidationError("pulse sequence CSV must start with header 'delta'");
  }
  std::vector<double> deltas;
  while (std::getline(in, line)) {
    line = strip(line);
    if (line.empty()) continue;
    const std::size_t row = deltas.size();
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(line, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != line.size()) {
      throw ValidationError("row " + std::to_string(row) + ": not a number: '" + line + "'", row);
    }
    deltas.push_back(value);
  }
  return custom(std::move(deltas));
}

PulseSequence PulseSequence::make(Scheme scheme, std::size_t n) {
  switch (scheme) {
    case Scheme::equidistant:
      return equidistant(n);
    case Scheme::udd:
      return udd(n);
    case Scheme::custom:
      break;
  }
  throw ValidationError("custom sequences need explicit instants");
}

}  // namespace ddlab
