#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <tuple>
#include <utility>
#include <string>
#include <vector>

#include "ddlab/error.hpp"

namespace ddlab {

enum class PanelRule { gauss_kronrod_15 };

struct QuadratureSpec {
  double rel_tol = 1e-10;
  std::size_t max_panels = std::size_t{1} << 20;
  PanelRule rule = PanelRule::gauss_kronrod_15;

  /// Throws ValidationError unless 0 < rel_tol < 1e-2 and max_panels >= 16.
  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;
  std::size_t panels = 0;
  std::size_t evaluations = 0;
};

namespace detail {

// 7-point Gauss / 15-point Kronrod abscissae and weights on [-1, 1].
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for Kronrod nodes 1, 3, 5 and 7 (the centre).
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
};

struct PanelOrder {
  bool operator()(const Panel& l, const Panel& r) const noexcept { return l.error < r.error; }
};

/// One Gauss-Kronrod 7-15 panel with the QUADPACK error heuristic.
template <class F>
Panel gauss_kronrod_15(F& f, double a, double b) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double f_centre = f(centre);
  double kronrod = f_centre * kKronrodWeights[7];
  double gauss = f_centre * kGaussWeights[3];
  double abs_sum = std::abs(kronrod);
  std::array<double, 7> f_left{};
  std::array<double, 7> f_right{};
  for (std::size_t i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    f_left[i] = f(centre - dx);
    f_right[i] = f(centre + dx);
    const double pair = f_left[i] + f_right[i];
    kronrod += kKronrodWeights[i] * pair;
    abs_sum += kKronrodWeights[i] * (std::abs(f_left[i]) + std::abs(f_right[i]));
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  const double mean = 0.5 * kronrod;
  double asc = kKronrodWeights[7] * std::abs(f_centre - mean);
  for (std::size_t i = 0; i < 7; ++i) {
    asc += kKronrodWeights[i] * (std::abs(f_left[i] - mean) + std::abs(f_right[i] - mean));
  }
  const double scale = std::abs(half);
  double error = std::abs((kronrod - gauss) * half);
  asc *= scale;
  abs_sum *= scale;
  if (asc != 0.0 && error != 0.0) {
    error = asc * std::min(1.0, std::pow(200.0 * error / asc, 1.5));
  }
  if (abs_sum > std::numeric_limits<double>::min() / (50.0 * eps)) {
    error = std::max(50.0 * eps * abs_sum, error);
  }
  return {a, b, kronrod * half, error};
}

}  // namespace detail

/// Globally adaptive integration of `f` over [a, b]: the interval starts as
/// `initial_panels` equal panels, then the panel with the largest error
/// estimate is bisected until the summed error falls below
/// rel_tol * |integral|. Throws QuadratureError (with the best estimate and
/// its error bound) once max_panels is reached.
template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, std::size_t initial_panels,
                                    const QuadratureSpec& spec) {
  spec.validate();
  constexpr std::size_t kEvalsPerPanel = 15;
  const std::size_t start = std::clamp<std::size_t>(initial_panels, 1, spec.max_panels / 2);

  std::vector<detail::Panel> storage;
  storage.reserve(start * 2);
  const double width = (b - a) / static_cast<double>(start);
  for (std::size_t i = 0; i < start; ++i) {
    const double lo = a + width * static_cast<double>(i);
    const double hi = i + 1 == start ? b : a + width * static_cast<double>(i + 1);
    storage.push_back(detail::gauss_kronrod_15(f, lo, hi));
  }
  std::size_t evaluations = start * kEvalsPerPanel;

  auto totals = [](const std::vector<detail::Panel>& panels) {
    // compensated: panel counts reach 1e6
    double value = 0.0;
    double carry = 0.0;
    double error = 0.0;
    for (const auto& p : panels) {
      const double t = value + p.value;
      carry += std::abs(value) >= std::abs(p.value) ? (value - t) + p.value : (p.value - t) + value;
      value = t;
      error += p.error;
    }
    return std::pair{value + carry, error};
  };

  auto [value, error] = totals(storage);
  const detail::PanelOrder order;
  std::make_heap(storage.begin(), storage.end(), order);

  std::size_t since_resum = 0;
  while (error > spec.rel_tol * std::abs(value)) {
    if (storage.size() >= spec.max_panels) {
      throw QuadratureError("quadrature did not converge within " +
                                std::to_string(spec.max_panels) + " panels",
                            value, error);
    }
    std::pop_heap(storage.begin(), storage.end(), order);
    const detail::Panel worst = storage.back();
    storage.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw QuadratureError("quadrature panel collapsed to machine resolution", value, error);
    }
    const auto left = detail::gauss_kronrod_15(f, worst.a, mid);
    const auto right = detail::gauss_kronrod_15(f, mid, worst.b);
    evaluations += 2 * kEvalsPerPanel;
    value += (left.value + right.value) - worst.value;
    error += (left.error + right.error) - worst.error;
    storage.push_back(left);
    std::push_heap(storage.begin(), storage.end(), order);
    storage.push_back(right);
    std::push_heap(storage.begin(), storage.end(), order);
    if (++since_resum == 4096) {
      // shed rounding accumulated in the running sums
      since_resum = 0;
      std::tie(value, error) = totals(storage);
    }
  }

  std::tie(value, error) = totals(storage);
  const std::size_t panels = storage.size();
  return {value, error, panels, evaluations};
}

}  // namespace ddlab
