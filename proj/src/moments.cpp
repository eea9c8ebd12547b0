#include "gapmom/moments.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "gapmom/errors.hpp"
#include "gapmom/quadrature.hpp"
#include "gapmom/specfun.hpp"

namespace gapmom {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr long kMaxSeriesTerms = 200000;
constexpr double kHypTol = 1e-13;

void require_n(int n) {
  if (n < 0) throw domain_error("moment order n must be nonnegative");
}

MomentValue closed(double value, long terms = 0) {
  return {value, Method::ClosedForm, 16.0 * kEps * std::abs(value), terms};
}

// Gamma(1/2)Gamma(mu+1/2)/Gamma(mu+1) * (1/2)_n / (mu+1)_n, the shared right
// side of the even-moment formulas, assembled in log space.
double even_moment_value(int n, double mu) {
  SignedLogValue v = gamma_quotient({0.5, mu + 0.5}, {mu + 1.0});
  v *= SignedLogValue::of(pochhammer(0.5, n));
  v /= SignedLogValue::of(pochhammer(mu + 1.0, n));
  return v.value();
}

}  // namespace

MomentValue full_range_moment(int n, double mu) {
  require_n(n);
  validate_mu(mu);
  if (n % 2 == 1) return {0.0, Method::ClosedForm, 0.0, 0};
  const int m = n / 2;
  return closed(gamma_quotient({m + 0.5, mu + 0.5}, {m + mu + 1.0}).value());
}

MomentValue half_range_moment(int n, double mu) {
  require_n(n);
  validate_mu(mu);
  const double h = 0.5 * n;
  SignedLogValue v = gamma_quotient({h + 0.5, mu + 0.5}, {h + mu + 1.0});
  return closed(0.5 * v.value());
}

double half_range_moment_shifted(int n, double mu) {
  require_n(n);
  validate_mu(mu);
  if (n % 2 == 0) {
    const int m = n / 2;
    return 0.5 * even_moment_value(m, mu);
  }
  const int m = (n - 1) / 2;
  SignedLogValue v = SignedLogValue::of(pochhammer(1.0, m));
  v /= SignedLogValue::of(pochhammer(mu + 0.5, m + 1));
  return 0.5 * v.value();
}

MomentValue e2_even_moment(int n, double mu) {
  require_n(n);
  validate_mu(mu);
  return closed(even_moment_value(n, mu));
}

MomentValue e2_odd_moment_hyp(int n, double mu, double b) {
  require_n(n);
  validate_mu(mu);
  validate_b(SetKind::E2, b);
  const double z = (1.0 - b) * (1.0 + b);
  const Hyp2f1Eval f = gauss_2f1_ex({0.5, mu + 0.5, mu + n + 1.5, z}, kHypTol);
  const double pre = b * gamma_quotient({n + 1.0, mu + 0.5}, {mu + n + 1.5}).value();
  const double value = pre * f.value;
  return {value, Method::ClosedForm, std::abs(value) * 64.0 * kEps + kHypTol * std::abs(value),
          f.terms};
}

MomentValue e2_odd_moment_series(int n, double mu, double b, double tol) {
  require_n(n);
  validate_mu(mu);
  validate_b(SetKind::E2, b);
  if (!(tol > 0.0)) throw domain_error("e2_odd_moment_series: tol must be positive");
  if (b == 0.0) return {0.0, Method::Series, 0.0, 0};

  const SignedLogValue lg_half = log_gamma(0.5);
  const SignedLogValue lg_nmu = log_gamma(n + 1.0 + mu);
  const SignedLogValue prefactor = lg_half / lg_nmu;
  const double pref_scale = std::abs(lg_half.log_magnitude) + std::abs(lg_nmu.log_magnitude);
  const double log_b = std::log(b);
  double sum = 0.0;
  double round_err = 0.0;
  double last_abs_term = 0.0;
  int small_run = 0;
  long k = 1;
  for (; k <= kMaxSeriesTerms; ++k) {
    // (1 - k/2)_n Gamma(mu + k/2) / Gamma(1/2 + k/2) b^k, with the Pochhammer
    // factor read as a polynomial so even k <= 2n vanishes exactly.
    SignedLogValue t = SignedLogValue::of(pochhammer(1.0 - 0.5 * k, n));
    double term = 0.0;
    if (t.sign != 0) {
      const SignedLogValue lg_num = log_gamma(mu + 0.5 * k);
      const SignedLogValue lg_den = log_gamma(0.5 + 0.5 * k);
      const double log_scale = pref_scale + std::abs(lg_num.log_magnitude) +
                               std::abs(lg_den.log_magnitude) +
                               std::abs(t.log_magnitude) + std::abs(k * log_b);
      t *= lg_num;
      t /= lg_den;
      t *= prefactor;
      t.log_magnitude += k * log_b;
      term = (k % 2 == 1 ? 1.0 : -1.0) * t.value();
      sum += term;
      last_abs_term = std::abs(term);
      // The term is exponentiated from a sum of logs; its relative error is
      // set by the magnitudes of those logs, not by machine epsilon.
      round_err += last_abs_term * (4e-15 * log_scale + 4.0 * kEps);
    }
    if (std::abs(term) < tol * std::max(1.0, std::abs(sum))) {
      if (++small_run >= 3) break;
    } else {
      small_run = 0;
    }
  }
  if (k > kMaxSeriesTerms) {
    std::ostringstream msg;
    msg << "e2_odd_moment_series: no convergence within " << kMaxSeriesTerms
        << " terms (b = " << b << ")";
    throw convergence_error(msg.str(), sum, kMaxSeriesTerms);
  }
  // Geometric tail bound plus the accumulated evaluation roundoff.
  const double err = last_abs_term * b / (1.0 - b) + round_err;
  return {sum, Method::Series, err, k};
}

MomentValue e4_even_moment(int n, double mu) {
  require_n(n);
  validate_mu(mu);
  return closed(even_moment_value(n, mu));
}

MomentValue e4_odd_moment(int n, double mu, double b) {
  require_n(n);
  validate_mu(mu);
  validate_b(SetKind::E4, b);
  // With s = b^2 - 1/2 (exact for b^2 in [1/2, 1]), the gap-closing factor
  // 1 - 2b sqrt(1-b^2) = 4s^2 / (1 + sqrt(1-4s^2)) avoids the cancellation
  // that costs ~8 digits near b = 1/sqrt2; the 2F1 argument is 1 - 4s^2.
  const double s = b * b - 0.5;
  const double z = std::max(1.0 - 4.0 * s * s, 0.0);
  const double prefactor = 4.0 * s * s / (1.0 + std::sqrt(z));
  const Hyp2f1Eval f = gauss_2f1_ex({0.5, mu + 0.5, mu + n + 1.5, std::min(z, 1.0)}, kHypTol);
  SignedLogValue shift = SignedLogValue::of(pochhammer(1.0, n));
  shift /= SignedLogValue::of(pochhammer(mu + 0.5, n + 1));
  const double value = prefactor * shift.value() * f.value;
  return {value, Method::ClosedForm, std::abs(value) * 64.0 * kEps + kHypTol * std::abs(value),
          f.terms};
}

double e4_odd_moment_alt(int n, double mu, double b) {
  require_n(n);
  validate_mu(mu);
  validate_b(SetKind::E4, b);
  const double s = b * b - 0.5;
  if (!(s > 0.0))
    throw domain_error("e4_odd_moment_alt: the pre-Pfaff route needs b > 1/sqrt2");
  const double z = 1.0 - 4.0 * s * s;
  const double zeta = -z / (4.0 * s * s);
  const double f = gauss_2f1({0.5, n + 1.0, mu + n + 1.5, zeta}, kHypTol);
  SignedLogValue shift = SignedLogValue::of(pochhammer(1.0, n));
  shift /= SignedLogValue::of(pochhammer(mu + 0.5, n + 1));
  // (1 - 2b sqrt(1-b^2)) / (2b^2 - 1) = 2s / (1 + sqrt(1-4s^2))
  return 2.0 * s / (1.0 + std::sqrt(z)) * shift.value() * f;
}

MomentValue moment(const MomentQuery& q, Method method, double tol) {
  validate_query(q);
  switch (method) {
    case Method::Quadrature: {
      QuadratureSpec spec;
      spec.abs_tol = spec.rel_tol = tol;
      return moment_by_quadrature(q, spec);
    }
    case Method::Series:
      if (q.kind == SetKind::E2 && q.n % 2 == 1)
        return e2_odd_moment_series((q.n - 1) / 2, q.mu, q.b, tol);
      throw domain_error("series representation exists only for odd E2 moments");
    case Method::ClosedForm:
      break;
  }
  switch (q.kind) {
    case SetKind::FullRange:
      return full_range_moment(q.n, q.mu);
    case SetKind::HalfRange:
      return half_range_moment(q.n, q.mu);
    case SetKind::E2:
      return q.n % 2 == 0 ? e2_even_moment(q.n / 2, q.mu)
                          : e2_odd_moment_hyp((q.n - 1) / 2, q.mu, q.b);
    case SetKind::E4:
      return q.n % 2 == 0 ? e4_even_moment(q.n / 2, q.mu)
                          : e4_odd_moment((q.n - 1) / 2, q.mu, q.b);
  }
  throw domain_error("moment: unknown set kind");
}

}  // namespace gapmom
