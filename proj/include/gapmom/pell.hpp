#ifndef GAPMOM_PELL_HPP
#define GAPMOM_PELL_HPP

#include <vector>

#include "gapmom/polynomial.hpp"

namespace gapmom {

// Endpoint data of a generalized polynomial Pell equation
//
//   A(x) P^2(x) - (x^2 - 1) B(x) Q^2(x) = G(x)
//
// where, depending on the configuration,
//   classical:  A = B = G = 1                       (Chebyshev case)
//   one gap:    A = x - alpha1, B = x - beta1, G = x - gamma1
//   two gaps:   A = (x - alpha1)(x - alpha2), B = (x - beta1)(x - beta2),
//               G = (x - gamma1)(x - gamma2)
struct PellData {
  enum class Form { Classical, OneGap, TwoGap };

  Form form = Form::Classical;
  double alpha1 = 0, alpha2 = 0;
  double beta1 = 0, beta2 = 0;
  double gamma1 = 0, gamma2 = 0;

  static PellData classical() { return {}; }
  static PellData one_gap(double alpha, double beta, double gamma);
  static PellData two_gap(double alpha1, double alpha2, double beta1, double beta2,
                          double gamma1, double gamma2);

  Polynomial alpha_factor() const;
  Polynomial beta_factor() const;
  Polynomial gamma_factor() const;
};

struct PellSolution {
  Polynomial p;
  Polynomial q;
  PellData data;
};

// Chebyshev polynomials of the first and second kind, exact recurrence-built
// coefficients.
Polynomial chebyshev_t(int n);
Polynomial chebyshev_u(int n);

// Degree-2 solution attached to the one-gap set [-1,-b] U [b,1]:
//   P2 = (2x^2 - (1+b^2)) / (1-b^2),  Q2 = (2x + 2b) / (1-b^2).
Polynomial make_p2_e2(double b);
Polynomial make_q2_e2(double b);

// Two-gap set [-1,-b] U [-sqrt(1-b^2), sqrt(1-b^2)] U [b,1], b in [1/sqrt2, 1):
// the degree-4 mapping pair and the degree-2 pair.
//   P4 = (2x^4 - 2x^2 + b^2(1-b^2)) / (b^2(1-b^2))
//   Q4 = (2x / (b^2(b^2-1))) (x^2 + (b - sqrt(1-b^2)) x - b sqrt(1-b^2))
//   P2 = (x - b)(x + sqrt(1-b^2)) / (b sqrt(1-b^2)),  Q2 = x / (b sqrt(1-b^2))
// Note Q4's leading coefficient has the opposite sign to P4's; Pell residuals
// are insensitive to it, and the partial-fraction weights normalize it away.
Polynomial make_p4(double b);
Polynomial make_q4(double b);
Polynomial make_p2_e4(double b);
Polynomial make_q2_e4(double b);

// Assembled solutions with their endpoint data.
PellSolution classical_solution(int n);      // (T_n, U_{n-1}), n >= 1
PellSolution e2_solution(double b);          // degree-2 pair, gamma = -b
PellSolution e4_degree4_solution(double b);  // gamma = (-b, sqrt(1-b^2))
PellSolution e4_degree2_solution(double b);  // gamma = (-sqrt(1-b^2), b)

// A P^2 - (x^2-1) B Q^2 - G as a polynomial; every coefficient is ~0 for a
// valid solution. The residual is invariant under global sign changes of P, Q.
Polynomial pell_residual(const PellSolution& sol);

// max |residual coefficient| / max |coefficient of the assembled left side|.
double relative_residual_norm(const PellSolution& sol);

// Inverse of P2 (one-gap pair) restricted to its monotone pieces,
// branch 1 on [-1,-b], branch 2 on [b,1]. |z| <= 1.
double branch_inverse_p2(int branch, double z, double b);

// Inverse of P4 restricted to its monotone pieces, ordered left to right:
// 1 on [-1,-b], 2 on [-sqrt(1-b^2),0], 3 on [0,sqrt(1-b^2)], 4 on [b,1].
double branch_inverse_p4(int branch, double z, double b);

// Partial-fraction weights w_i(z) = Q(P_i^{-1}(z)) / P'(P_i^{-1}(z)) of
// Q(s)/(P(s)-z), with Q sign-normalized so that its leading coefficient
// matches P's; then sum w_i = 1. degree selects the pair: 2 for the one-gap
// P2/Q2, 4 for the two-gap P4/Q4. z in (-1,1).
std::vector<double> partial_fraction_weights(double z, double b, int degree);

// Closed form of 1 - 2(w_2(z) + w_3(z)) for the degree-4 weights:
//   (1 - 2 b sqrt(1-b^2)) / sqrt(1 - 2b^2 + 2b^4 + (2b^2 - 2b^4) z).
double middle_weight_deficit(double z, double b);

}  // namespace gapmom

#endif
