#ifndef GAPMOM_MOMENTS_HPP
#define GAPMOM_MOMENTS_HPP

#include "gapmom/geometry.hpp"

namespace gapmom {

enum class Method { ClosedForm, Series, Quadrature };

struct MomentValue {
  double value = 0;
  Method method = Method::ClosedForm;
  double error_estimate = 0;  // absolute
  long terms_or_nodes = 0;
};

// Classical ultraspherical moments: integral of x^n (1-x^2)^(mu-1/2) over
// [-1,1]. Even n = 2m: Gamma(m+1/2)Gamma(mu+1/2)/Gamma(m+mu+1); odd: 0.
MomentValue full_range_moment(int n, double mu);

// Half-range moments over [0,1]: (1/2) Gamma(n/2+1/2)Gamma(mu+1/2)/Gamma(n/2+mu+1).
MomentValue half_range_moment(int n, double mu);

// The same value through the shifted-factorial route,
//   mu^H_{2m}   = (1/2) Gamma(1/2)Gamma(mu+1/2)/Gamma(mu+1) (1/2)_m/(mu+1)_m
//   mu^H_{2m+1} = (1/2) (1)_m/(mu+1/2)_{m+1};
// agrees with half_range_moment to 1e-13 relative.
double half_range_moment_shifted(int n, double mu);

// Moments of the one-gap set E2 in half-order indexing: n below selects the
// moment of cos^{2n} resp. cos^{2n+1}.
MomentValue e2_even_moment(int n, double mu);                                 // b-independent
MomentValue e2_odd_moment_hyp(int n, double mu, double b);                    // hypergeometric form
MomentValue e2_odd_moment_series(int n, double mu, double b, double tol = 1e-12);

// Moments of the two-gap set E4, half-order indexing as above.
MomentValue e4_even_moment(int n, double mu);  // b-independent, equals e2_even_moment
MomentValue e4_odd_moment(int n, double mu, double b);

// Pre-Pfaff route for the odd E4 moment (argument 4b^2(b^2-1)/(2b^2-1)^2 <= 0);
// must agree with e4_odd_moment to 1e-10 where both converge. b > 1/sqrt2.
double e4_odd_moment_alt(int n, double mu, double b);

// Dispatch on set kind, parity of the literal power q.n, and method.
// Series is only available for odd E2 moments.
MomentValue moment(const MomentQuery& q, Method method, double tol = 1e-12);

}  // namespace gapmom

#endif
