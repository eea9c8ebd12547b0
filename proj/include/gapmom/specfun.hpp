#ifndef GAPMOM_SPECFUN_HPP
#define GAPMOM_SPECFUN_HPP

#include <cmath>
#include <initializer_list>
#include <limits>

namespace gapmom {

// A real number stored as sign and log of magnitude, so that products of
// Gamma values with wildly different scales can be assembled without
// overflow and exponentiated once at the end.
struct SignedLogValue {
  double log_magnitude = -std::numeric_limits<double>::infinity();
  int sign = 0;  // -1, 0, +1; sign == 0 means the value is exactly zero

  static SignedLogValue of(double v) {
    if (v == 0.0) return {};
    return {std::log(std::abs(v)), v > 0.0 ? +1 : -1};
  }

  double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_magnitude); }

  SignedLogValue& operator*=(const SignedLogValue& o) {
    if (sign == 0 || o.sign == 0) {
      *this = {};
    } else {
      log_magnitude += o.log_magnitude;
      sign *= o.sign;
    }
    return *this;
  }

  SignedLogValue& operator/=(const SignedLogValue& o) {
    if (sign == 0) return *this;
    log_magnitude -= o.log_magnitude;
    sign *= o.sign;
    return *this;
  }

  friend SignedLogValue operator*(SignedLogValue a, const SignedLogValue& b) { return a *= b; }
  friend SignedLogValue operator/(SignedLogValue a, const SignedLogValue& b) { return a /= b; }
};

// Parameter tuple of the Gauss hypergeometric function 2F1(a, b; c; z).
struct HypergeometricParams {
  double a = 0;
  double b = 0;
  double c = 1;
  double z = 0;
};

// log |Gamma(x)| and the sign of Gamma(x). Lanczos approximation with
// reflection below 1/2; throws pole_error at nonpositive integers.
SignedLogValue log_gamma(double x);

// Shifted factorial (a)_n = a (a+1) ... (a+n-1), computed as a direct
// product so that zero factors are exact. (a)_0 = 1.
double pochhammer(double a, int n);

// Product of Gamma values Γ(num_0)Γ(num_1).../(Γ(den_0)Γ(den_1)...) in log
// space. A pole among the denominators collapses the quotient to exact zero;
// a pole among the numerators throws.
SignedLogValue gamma_quotient(std::initializer_list<double> num,
                              std::initializer_list<double> den);

struct Hyp2f1Eval {
  double value = 0;
  long terms = 0;  // series terms consumed across all transformation stages
};

// 2F1(a, b; c; z) for real parameters, relative accuracy tol. Regime
// selection (direct series, Pfaff map, 1-z and 1/z connections, Gauss
// summation at z = 1) is internal. Throws domain_error for invalid c or
// arguments past 1, convergence_error (with partial sum and term count)
// when the series budget runs out.
Hyp2f1Eval gauss_2f1_ex(const HypergeometricParams& p, double tol);

inline double gauss_2f1(const HypergeometricParams& p, double tol = 1e-13) {
  return gauss_2f1_ex(p, tol).value;
}

// Independent check of gauss_2f1 through the Euler integral representation
//   2F1(a,b;c;z) = B(b, c-b)^{-1} ∫_0^1 u^{b-1} (1-u)^{c-b-1} (1-z u)^{-a} du,
// evaluated with the tanh-sinh quadrature. Requires c > b > 0 and z < 1.
double gauss_2f1_integral_oracle(const HypergeometricParams& p, double quad_tol = 1e-12);

}  // namespace gapmom

#endif
