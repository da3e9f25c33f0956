#pragma once

namespace ddlab {

/// Value of a truncated alternating series together with the sum of the
/// absolute values of its terms; `magnitude / |value|` bounds the relative
/// cancellation the double-precision result suffered.
struct SeriesValue {
  double value;
  double magnitude;
};

/// J_order(x) by the ascending series
///   (x/2)^order / order! * sum_k (-x^2/4)^k / (k! (order+k)!),
/// stopped once the terms decrease and fall below 1e-16 of the partial sum.
/// Accurate when x is small compared with sqrt(order); cancellation grows
/// like I_order(x) / |J_order(x)| beyond that.
SeriesValue bessel_j_series(int order, double x);

double bessel_j(int order, double x);

/// sum_{m>=0} (-1)^{m*order} J_{(2m+1)*order}(x) for x < order, by Miller's
/// backward recurrence normalized with J_0^2 + 2 sum_k J_k^2 = 1. Stable in
/// the transition region x ~ order where the ascending series cancels, and
/// keeps relative accuracy down to the underflow threshold.
double bessel_odd_harmonic_sum(int order, double x);

}  // namespace ddlab
