#include <cmath>
#include <doctest.h>

#include "gapmom/errors.hpp"
#include "gapmom/moments.hpp"
#include "gapmom/quadrature.hpp"
#include "gapmom/specfun.hpp"

using namespace gapmom;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("full-range moments") {
  CHECK(full_range_moment(0, 0.0).value == doctest::Approx(kPi).epsilon(1e-14));
  CHECK(full_range_moment(2, 0.0).value == doctest::Approx(kPi / 2.0).epsilon(1e-14));
  CHECK(full_range_moment(3, 0.7).value == 0.0);
  CHECK(full_range_moment(7, 2.5).value == 0.0);
  CHECK_THROWS_AS(full_range_moment(2, -0.6), domain_error);
  CHECK_THROWS_AS(full_range_moment(-1, 0.0), domain_error);
}

TEST_CASE("half-range moments and the shifted-factorial route") {
  CHECK(half_range_moment(1, 0.0).value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(half_range_moment(0, 0.5).value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(half_range_moment(0, 0.0).value == doctest::Approx(kPi / 2.0).epsilon(1e-14));
  CHECK(half_range_moment(4, 0.0).value ==
        doctest::Approx(3.0 * kPi / 16.0).epsilon(1e-14));
  for (int n = 0; n <= 12; ++n)
    for (double mu : {-0.25, 0.0, 0.5, 1.0, 2.5, 7.5}) {
      CAPTURE(n);
      CAPTURE(mu);
      const double a = half_range_moment(n, mu).value;
      const double b = half_range_moment_shifted(n, mu);
      CHECK(std::abs(a - b) <= 1e-13 * std::abs(a));
    }
}

TEST_CASE("even gap-set moments") {
  CHECK(e2_even_moment(0, 0.0).value == doctest::Approx(kPi).epsilon(1e-14));
  CHECK(e2_even_moment(1, 0.5).value == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(e4_even_moment(2, 0.0).value == doctest::Approx(3.0 * kPi / 8.0).epsilon(1e-14));
  for (int n = 0; n <= 10; ++n)
    for (double mu : {-0.25, 0.0, 1.0, 2.5}) {
      // both gap families share the full-range values, all positive
      CHECK(e2_even_moment(n, mu).value == e4_even_moment(n, mu).value);
      CHECK(e2_even_moment(n, mu).value > 0.0);
      CHECK(e2_even_moment(n, mu).value ==
            doctest::Approx(full_range_moment(2 * n, mu).value).epsilon(1e-13));
    }
}

TEST_CASE("odd one-gap moments, hypergeometric route") {
  CHECK(e2_odd_moment_hyp(0, 0.0, 0.5).value ==
        doctest::Approx(1.2091995761561452).epsilon(1e-13));
  CHECK(e2_odd_moment_hyp(3, 1.2, 0.0).value == 0.0);
  // frozen 40-digit references
  CHECK(e2_odd_moment_hyp(2, 1.0, 0.3).value ==
        doctest::Approx(0.056677979062919735).epsilon(1e-12));
  CHECK(e2_odd_moment_hyp(1, 0.5, 0.9).value ==
        doctest::Approx(0.4653739612188365651).epsilon(1e-12));
  CHECK(e2_odd_moment_hyp(0, -0.25, 0.6).value ==
        doctest::Approx(2.6223222162928539228).epsilon(1e-12));
  CHECK(e2_odd_moment_hyp(3, 2.5, 0.75).value ==
        doctest::Approx(0.01391510200254855968).epsilon(1e-12));
}

TEST_CASE("odd one-gap moments, series route") {
  CHECK(e2_odd_moment_series(2, 0.7, 0.0, 1e-12).value == 0.0);
  const MomentValue v = e2_odd_moment_series(0, 0.0, 0.5, 1e-12);
  CHECK(v.value == doctest::Approx(1.2091995761561452).epsilon(1e-12));
  CHECK(v.terms_or_nodes > 10);
  CHECK(v.error_estimate >= 0.0);
  CHECK(e2_odd_moment_series(2, 1.0, 0.3, 1e-12).value ==
        doctest::Approx(e2_odd_moment_hyp(2, 1.0, 0.3).value).epsilon(1e-11));
}

TEST_CASE("series and hypergeometric routes coincide") {
  // The alternating series cancels catastrophically as n + mu grows with b
  // near 1 (its two parity subseries reach ~1e11 while the sum is ~1e-2), so
  // the meaningful bound there is the series' own error estimate. Where that
  // estimate is small the routes must agree to 1e-9.
  for (int n = 0; n <= 6; ++n)
    for (double mu : {-0.25, 0.0, 0.5, 1.0, 2.5})
      for (double b : {0.05, 0.3, 0.6, 0.8, 0.95}) {
        CAPTURE(n);
        CAPTURE(mu);
        CAPTURE(b);
        const double hyp = e2_odd_moment_hyp(n, mu, b).value;
        const MomentValue ser = e2_odd_moment_series(n, mu, b, 1e-12);
        CHECK(std::abs(hyp - ser.value) <= std::max(1e-9, ser.error_estimate));
        if (ser.error_estimate <= 1e-10) CHECK(std::abs(hyp - ser.value) <= 1e-9);
      }
}

TEST_CASE("series convergence failure past the term cap") {
  try {
    e2_odd_moment_series(0, 0.0, 0.999999, 1e-14);
    FAIL("expected convergence_error");
  } catch (const convergence_error& e) {
    CHECK(e.count() == 200000);
    CHECK(e.partial() > 0.0);
  }
}

TEST_CASE("odd two-gap moments") {
  // frozen 40-digit references, certified against direct quadrature
  CHECK(e4_odd_moment(0, 0.0, 0.8).value ==
        doctest::Approx(0.10725018479888073113).epsilon(1e-12));
  CHECK(e4_odd_moment(0, 1.0, 0.8).value ==
        doctest::Approx(0.046034171440364979999).epsilon(1e-12));
  CHECK(e4_odd_moment(1, 0.5, 0.9).value ==
        doctest::Approx(0.12256565207651283436).epsilon(1e-12));
  CHECK(e4_odd_moment(2, 1.0, 0.72).value ==
        doctest::Approx(1.3290760078039483493e-4).epsilon(1e-11));
  CHECK(e4_odd_moment(0, -0.25, 0.95).value ==
        doctest::Approx(1.6948105051029540696).epsilon(1e-12));
  CHECK(e4_odd_moment(3, 2.5, 0.85).value ==
        doctest::Approx(2.191168669516693745e-3).epsilon(1e-11));
  CHECK_THROWS_AS(e4_odd_moment(0, 0.0, 0.5), domain_error);
}

TEST_CASE("odd two-gap moments: pre-Pfaff route agrees") {
  for (int n = 0; n <= 4; ++n)
    for (double mu : {-0.25, 0.0, 0.5, 1.0, 2.5})
      for (double b : {0.72, 0.8, 0.9, 0.95, 0.99}) {
        CAPTURE(n);
        CAPTURE(mu);
        CAPTURE(b);
        const double direct = e4_odd_moment(n, mu, b).value;
        const double alt = e4_odd_moment_alt(n, mu, b);
        CHECK(std::abs(direct - alt) <= 1e-10 * std::max(1.0, std::abs(direct)));
      }
}

TEST_CASE("odd two-gap moments stay positive and deform monotonically") {
  double prev = -1.0;
  for (double b : {std::sqrt(0.5) + 1e-6, 0.72, 0.75, 0.8, 0.85, 0.9, 0.95, 0.99}) {
    const double v = e4_odd_moment(0, 0.0, b).value;
    CHECK(v >= 0.0);
    CHECK(v > prev);
    prev = v;
  }
  // closing gaps annihilate the odd moments
  CHECK(e4_odd_moment(0, 0.0, std::sqrt(0.5) + 1e-6).value <= 1e-3);
  // maximal gaps reach twice the odd half-range moments
  for (int n = 0; n <= 6; ++n)
    for (double mu : {0.0, 1.0}) {
      const double lim = 2.0 * half_range_moment(2 * n + 1, mu).value;
      const double v = e4_odd_moment(n, mu, 1.0 - 1e-12).value;
      CHECK(std::abs(v - lim) <= 1e-5 * std::abs(lim));
    }
}

TEST_CASE("even-moment b-independence under quadrature") {
  for (double mu : {0.0, 1.0}) {
    const double cf = e4_even_moment(1, mu).value;
    double prev = 0.0;
    bool first = true;
    for (double b : {0.72, 0.8, 0.95}) {
      const double q = moment_by_quadrature({SetKind::E4, 2, mu, b}).value;
      CHECK(std::abs(q - cf) <= 1e-9);
      if (!first) CHECK(std::abs(q - prev) <= 1e-9);
      prev = q;
      first = false;
    }
  }
}

TEST_CASE("dispatch by kind, parity, and method") {
  CHECK(moment({SetKind::FullRange, 4, 0.0, 0.0}, Method::ClosedForm).value ==
        doctest::Approx(3.0 * kPi / 8.0).epsilon(1e-14));
  CHECK(moment({SetKind::E4, 0, 0.5, 0.9}, Method::ClosedForm).value ==
        e4_even_moment(0, 0.5).value);
  CHECK(moment({SetKind::E4, 1, 0.0, 0.8}, Method::Quadrature).value ==
        doctest::Approx(0.10725018479888073).epsilon(1e-9));
  CHECK(moment({SetKind::E2, 5, 1.0, 0.3}, Method::Series).value ==
        doctest::Approx(e2_odd_moment_hyp(2, 1.0, 0.3).value).epsilon(1e-11));
  CHECK(moment({SetKind::E2, 4, 1.0, 0.3}, Method::ClosedForm).value ==
        e2_even_moment(2, 1.0).value);
  CHECK_THROWS_AS(moment({SetKind::E4, 2, 0.0, 0.8}, Method::Series), domain_error);
  CHECK_THROWS_AS(moment({SetKind::E4, 0, 0.0, 0.5}, Method::ClosedForm), domain_error);
}

TEST_CASE("closed forms agree with quadrature on a spot grid") {
  for (int n : {0, 1, 2, 5})
    for (double mu : {-0.25, 0.5, 2.5})
      for (double b : {0.72, 0.9}) {
        CAPTURE(n);
        CAPTURE(mu);
        CAPTURE(b);
        const MomentQuery q{SetKind::E4, n, mu, b};
        const double cf = moment(q, Method::ClosedForm).value;
        const double quad = moment(q, Method::Quadrature).value;
        CHECK(std::abs(cf - quad) <= 1e-9 * std::max(1.0, std::abs(quad)));
      }
  for (int n : {1, 3})
    for (double b : {0.4, 0.8}) {
      const MomentQuery q{SetKind::E2, n, 0.5, b};
      CHECK(std::abs(moment(q, Method::ClosedForm).value -
                     moment(q, Method::Quadrature).value) <= 1e-9);
    }
}

TEST_CASE("closed two-gap forms extend continuously to the closed-gap end") {
  // at b = 1/sqrt2 the prefactor 1 - 2 b sqrt(1-b^2) vanishes
  const double v = e4_odd_moment(0, 0.0, std::sqrt(0.5)).value;
  CHECK(std::abs(v) <= 1e-10);
  CHECK(e4_even_moment(0, 0.0).value == doctest::Approx(kPi).epsilon(1e-14));
}
