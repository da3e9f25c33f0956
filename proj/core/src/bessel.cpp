#include "ddlab/bessel.hpp"

#include <cmath>
#include <limits>

#include "ddlab/error.hpp"
#include "ddlab/summation.hpp"

namespace ddlab {

SeriesValue bessel_j_series(int order, double x) {
  if (order < 0) throw DomainError("bessel_j: negative order");
  if (!std::isfinite(x)) throw DomainError("bessel_j: non-finite argument");
  // J_n(-x) = (-1)^n J_n(x)
  const double parity = (x < 0.0 && order % 2 == 1) ? -1.0 : 1.0;
  x = std::abs(x);
  if (x == 0.0) return {order == 0 ? 1.0 : 0.0, order == 0 ? 1.0 : 0.0};

  const double half = 0.5 * x;
  const double log_first = order * std::log(half) - std::lgamma(order + 1.0);
  if (log_first > std::log(std::numeric_limits<double>::max()) - 50.0) {
    return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::infinity()};
  }
  double term = std::exp(log_first);
  if (term == 0.0) return {0.0, 0.0};

  const double q = -half * half;
  CompensatedSum sum;
  double magnitude = 0.0;
  sum.add(term);
  magnitude += std::abs(term);
  for (int k = 1; k < 100000; ++k) {
    term *= q / (static_cast<double>(k) * static_cast<double>(order + k));
    sum.add(term);
    magnitude += std::abs(term);
    if (!std::isfinite(magnitude)) {
      return {std::numeric_limits<double>::quiet_NaN(), magnitude};
    }
    const bool decreasing = static_cast<double>(k) * (order + k) > -q;
    if (decreasing && std::abs(term) <= 1e-16 * std::abs(sum.value())) break;
  }
  return {parity * sum.value(), magnitude};
}

double bessel_j(int order, double x) { return bessel_j_series(order, x).value; }

double bessel_odd_harmonic_sum(int order, double x) {
  if (order < 1) throw DomainError("bessel_odd_harmonic_sum: order must be >= 1");
  x = std::abs(x);
  if (x == 0.0) return 0.0;
  // For x < order, J_{order+60}(x) / J_order(x) < 2^-60, so harmonics above
  // that are dropped.
  const int top = order + 60;
  int start = top + static_cast<int>(std::sqrt(40.0 * top)) + static_cast<int>(x) + 10;
  start += start % 2;

  constexpr int kScaleExp = 400;
  constexpr double kBig = 0x1p400;
  struct Captured {
    double value;
    int rescales;
  };
  Captured captured[64];
  int n_captured = 0;
  int rescales = 0;

  double next = 0.0;  // j_{k+1}
  double current = 0x1p-400;  // j_k
  double norm = 0.0;  // 2 sum_{k>=1} j_k^2
  for (int k = start; k >= 1; --k) {
    if (k % order == 0 && (k / order) % 2 == 1 && k <= top && n_captured < 64) {
      const int m = (k / order - 1) / 2;
      const double sign = (static_cast<long long>(m) * order) % 2 == 0 ? 1.0 : -1.0;
      captured[n_captured++] = {sign * current, rescales};
    }
    norm += 2.0 * current * current;
    const double previous = (2.0 * k / x) * current - next;
    next = current;
    current = previous;
    if (std::abs(current) > kBig) {
      current = std::ldexp(current, -kScaleExp);
      next = std::ldexp(next, -kScaleExp);
      norm = std::ldexp(norm, -2 * kScaleExp);
      ++rescales;
    }
  }
  norm += current * current;  // j_0^2
  const double inv = 1.0 / std::sqrt(norm);

  CompensatedSum sum;
  for (int i = 0; i < n_captured; ++i) {
    sum.add(std::ldexp(captured[i].value * inv, -kScaleExp * (rescales - captured[i].rescales)));
  }
  return sum.value();
}

}  // namespace ddlab
