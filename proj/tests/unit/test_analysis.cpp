#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "ddlab/analysis.hpp"
#include "ddlab/error.hpp"

using namespace ddlab;

namespace {

double storage(Scheme scheme, std::size_t n, double alpha, double temperature = 0.0,
               double epsilon = 1e-4) {
  return storage_time(PulseSequence::make(scheme, n), Bath{OhmicBath(alpha, 1.0, temperature)},
                      epsilon)
      .t_store;
}

}  // namespace

TEST_CASE("storage bracket invariants") {
  const auto seq = PulseSequence::udd(4);
  const Bath bath = OhmicBath(0.1);
  for (ErrorMeasure measure : {ErrorMeasure::envelope, ErrorMeasure::full_signal}) {
    StorageOptions options;
    options.measure = measure;
    const auto r = storage_time(seq, bath, 1e-4, {}, options);
    CHECK_FALSE(r.floor);
    CHECK(r.t_hi / r.t_lo <= 1.0 + 1e-6);
    CHECK(r.t_lo <= r.t_store);
    CHECK(r.t_store <= r.t_hi);
    CHECK(error_at(seq, bath, r.t_lo, {}, measure) < 1e-4);
    CHECK(error_at(seq, bath, r.t_hi, {}, measure) >= 1e-4);
    CHECK(r.evaluations > 20);
  }
}

TEST_CASE("the full-signal measure never stores longer than the envelope") {
  const auto seq = PulseSequence::equidistant(10);
  const Bath bath = OhmicBath(0.01);
  StorageOptions full;
  full.measure = ErrorMeasure::full_signal;
  CHECK(storage_time(seq, bath, 1e-4, {}, full).t_store <=
        storage_time(seq, bath, 1e-4).t_store);
}

TEST_CASE("storage edge cases") {
  const auto free = PulseSequence::udd(0);
  const auto big = storage_time(free, Bath{OhmicBath(0.25)}, 0.5);
  CHECK_FALSE(big.floor);
  CHECK(big.t_store > 1e-3);
  CHECK(big.t_store < 1e4);

  const auto floor = storage_time(free, Bath{OhmicBath(0.25)}, 1e-9);
  CHECK(floor.floor);
  CHECK(floor.t_store == 1e-3);

  try {
    storage_time(free, Bath{OhmicBath(0.0)}, 1e-4);
    FAIL("expected RangeExhaustedError");
  } catch (const RangeExhaustedError& e) {
    CHECK(e.end() == RangeExhaustedError::End::upper);
  }
  CHECK_THROWS_AS(storage_time(free, Bath{OhmicBath(0.1)}, 0.0), ValidationError);
  CHECK_THROWS_AS(storage_time(free, Bath{OhmicBath(0.1)}, 1.0), ValidationError);
  StorageOptions inverted;
  inverted.t_min = 10.0;
  inverted.t_max = 1.0;
  CHECK_THROWS_AS(storage_time(free, Bath{OhmicBath(0.1)}, 1e-4, {}, inverted), ValidationError);
}

// Equidistant sequences with even n leave a net static coupling (the toggling
// function integrates to 1/(n+1)), so their storage time alternates with the
// parity of n; monotonicity holds within each parity class.
TEST_CASE("storage time grows with n, udd dominates, equidistant scales like n + 1") {
  const std::vector<std::size_t> ns = {0, 1, 2, 5, 10, 20, 50, 100};
  for (double alpha : {0.25, 0.1, 0.01, 0.001}) {
    std::map<std::size_t, double> udd;
    std::map<std::size_t, double> eq;
    for (std::size_t n : ns) {
      udd[n] = storage(Scheme::udd, n, alpha);
      eq[n] = storage(Scheme::equidistant, n, alpha);
    }
    for (std::size_t i = 1; i < ns.size(); ++i) {
      CHECK(udd[ns[i]] >= udd[ns[i - 1]]);
      if (ns[i] >= 2) CHECK(udd[ns[i]] >= eq[ns[i]]);
    }
    for (const auto& parity : {std::vector<std::size_t>{0, 2, 10, 20, 50, 100},
                               std::vector<std::size_t>{1, 5, 21, 51, 101}}) {
      double previous = 0.0;
      for (std::size_t n : parity) {
        const double t = eq.count(n) ? eq[n] : storage(Scheme::equidistant, n, alpha);
        CHECK(t >= previous);
        previous = t;
      }
    }
    double lo = INFINITY;
    double hi = 0.0;
    for (std::size_t n : {10u, 20u, 50u, 100u}) {
      const double per_pulse = eq[n] / static_cast<double>(n + 1);
      lo = std::min(lo, per_pulse);
      hi = std::max(hi, per_pulse);
    }
    CHECK(hi / lo < 3.0);
  }
}

TEST_CASE("min pulses") {
  const Bath bath = OhmicBath(0.25);
  const double free = storage_time(PulseSequence::udd(0), bath, 1e-4).t_store;
  const auto none = min_pulses(Scheme::udd, bath, 1e-4, 0.5 * free);
  CHECK(none.n == 0);

  const auto r = min_pulses(Scheme::udd, bath, 1e-4, 2.0);
  CHECK(r.n >= 1);
  CHECK(r.storage >= 2.0);
  CHECK(storage(Scheme::udd, r.n - 1, 0.25) < 2.0);
  CHECK(r.monotonicity_violations.empty());
  CHECK_FALSE(r.linear_scan);

  CHECK_THROWS_AS(min_pulses(Scheme::custom, bath, 1e-4, 2.0), ValidationError);
  CHECK_THROWS_AS(min_pulses(Scheme::udd, bath, 1e-4, -1.0), ValidationError);
  CHECK_THROWS_AS(min_pulses(Scheme::equidistant, bath, 1e-4, 1e3, {}, {}, 8),
                  SearchExhaustedError);
}

TEST_CASE("compare schemes layout") {
  const std::vector<double> alphas = {0.25, 0.01};
  const std::vector<double> temps = {0.0, 0.1};
  const std::vector<double> grid = {0.5, 2.0, 9.0};
  const auto table = compare_schemes(1, alphas, temps, grid, {}, 1e-4);
  REQUIRE(table.rows.size() == 2 * 2 * 2 * 3);
  std::size_t i = 0;
  for (Scheme scheme : {Scheme::equidistant, Scheme::udd}) {
    for (double a : alphas) {
      for (double temp : temps) {
        for (double t : grid) {
          const auto& row = table.rows[i++];
          CHECK(row.scheme == scheme);
          CHECK(row.alpha == a);
          CHECK(row.temperature == temp);
          CHECK(row.t == t);
          CHECK(row.error.empty());
          const auto direct = signal(PulseSequence::make(scheme, 1),
                                     Bath{OhmicBath(a, 1.0, temp)}, t);
          CHECK(row.point.signal == doctest::Approx(direct.signal).epsilon(1e-10));
        }
      }
    }
  }
  // one pulse: both schemes are the same sequence
  const std::size_t half = table.rows.size() / 2;
  for (std::size_t k = 0; k < half; ++k) {
    CHECK(std::abs(table.rows[k].point.signal - table.rows[k + half].point.signal) <= 1e-12);
  }
  REQUIRE(table.storage.size() == 4);
  for (const auto& s : table.storage) {
    REQUIRE(s.ratio.has_value());
    CHECK(*s.ratio == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("compare schemes records per-cell errors") {
  QuadratureSpec quad;
  quad.max_panels = 16;
  quad.rel_tol = 1e-12;
  const std::vector<double> alphas = {0.1};
  const std::vector<double> temps = {0.0};
  const std::vector<double> grid = {0.0, 800.0};
  const auto table = compare_schemes(10, alphas, temps, grid, quad);
  REQUIRE(table.rows.size() == 4);
  CHECK(table.rows[0].error.empty());
  CHECK_FALSE(table.rows[1].error.empty());
  CHECK(table.storage.empty());
}

TEST_CASE("error measure names") {
  CHECK(parse_error_measure("full") == ErrorMeasure::full_signal);
  CHECK(to_string(ErrorMeasure::envelope) == "envelope");
  CHECK_THROWS_AS(parse_error_measure("loss"), ValidationError);
}
