#include "gapmom/pell.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gapmom/errors.hpp"
#include "gapmom/geometry.hpp"

namespace gapmom {
namespace {

void require_e2_b(double b) {
  if (!(b >= 0.0 && b < 1.0)) {
    std::ostringstream msg;
    msg << "gap parameter b = " << b << " outside [0, 1) for the one-gap pair";
    throw domain_error(msg.str());
  }
}

void require_e4_b(double b) { validate_b(SetKind::E4, b); }

void require_unit_z(double z) {
  if (!(z >= -1.0 && z <= 1.0)) {
    std::ostringstream msg;
    msg << "branch inverse argument z = " << z << " outside [-1, 1]";
    throw domain_error(msg.str());
  }
}

double clamped_sqrt(double v) { return std::sqrt(std::max(v, 0.0)); }

}  // namespace

PellData PellData::one_gap(double alpha, double beta, double gamma) {
  PellData d;
  d.form = Form::OneGap;
  d.alpha1 = alpha;
  d.beta1 = beta;
  d.gamma1 = gamma;
  return d;
}

PellData PellData::two_gap(double alpha1, double alpha2, double beta1, double beta2,
                           double gamma1, double gamma2) {
  PellData d;
  d.form = Form::TwoGap;
  d.alpha1 = alpha1;
  d.alpha2 = alpha2;
  d.beta1 = beta1;
  d.beta2 = beta2;
  d.gamma1 = gamma1;
  d.gamma2 = gamma2;
  return d;
}

Polynomial PellData::alpha_factor() const {
  switch (form) {
    case Form::Classical:
      return Polynomial::constant(1.0);
    case Form::OneGap:
      return Polynomial::from_root(alpha1);
    case Form::TwoGap:
      return Polynomial::from_root(alpha1) * Polynomial::from_root(alpha2);
  }
  return {};
}

Polynomial PellData::beta_factor() const {
  switch (form) {
    case Form::Classical:
      return Polynomial::constant(1.0);
    case Form::OneGap:
      return Polynomial::from_root(beta1);
    case Form::TwoGap:
      return Polynomial::from_root(beta1) * Polynomial::from_root(beta2);
  }
  return {};
}

Polynomial PellData::gamma_factor() const {
  switch (form) {
    case Form::Classical:
      return Polynomial::constant(1.0);
    case Form::OneGap:
      return Polynomial::from_root(gamma1);
    case Form::TwoGap:
      return Polynomial::from_root(gamma1) * Polynomial::from_root(gamma2);
  }
  return {};
}

Polynomial chebyshev_t(int n) {
  if (n < 0) throw domain_error("chebyshev_t: n must be nonnegative");
  Polynomial prev = Polynomial::constant(1.0);
  if (n == 0) return prev;
  Polynomial cur({0.0, 1.0});
  const Polynomial two_x({0.0, 2.0});
  for (int k = 2; k <= n; ++k) {
    Polynomial next = two_x * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

Polynomial chebyshev_u(int n) {
  if (n < 0) throw domain_error("chebyshev_u: n must be nonnegative");
  Polynomial prev = Polynomial::constant(1.0);
  if (n == 0) return prev;
  Polynomial cur({0.0, 2.0});
  const Polynomial two_x({0.0, 2.0});
  for (int k = 2; k <= n; ++k) {
    Polynomial next = two_x * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

Polynomial make_p2_e2(double b) {
  require_e2_b(b);
  const double d = (1.0 - b) * (1.0 + b);
  return Polynomial({-(1.0 + b * b) / d, 0.0, 2.0 / d});
}

Polynomial make_q2_e2(double b) {
  require_e2_b(b);
  const double d = (1.0 - b) * (1.0 + b);
  return Polynomial({2.0 * b / d, 2.0 / d});
}

Polynomial make_p4(double b) {
  require_e4_b(b);
  const double B = b * b * (1.0 - b) * (1.0 + b);
  return Polynomial({1.0, 0.0, -2.0 / B, 0.0, 2.0 / B});
}

Polynomial make_q4(double b) {
  require_e4_b(b);
  const double c = std::sqrt((1.0 - b) * (1.0 + b));
  const double k = 2.0 / (b * b * (b * b - 1.0));  // negative-leading form
  return Polynomial({0.0, -k * b * c, k * (b - c), k});
}

Polynomial make_p2_e4(double b) {
  require_e4_b(b);
  const double c = std::sqrt((1.0 - b) * (1.0 + b));
  return Polynomial({-1.0, (c - b) / (b * c), 1.0 / (b * c)});
}

Polynomial make_q2_e4(double b) {
  require_e4_b(b);
  const double c = std::sqrt((1.0 - b) * (1.0 + b));
  return Polynomial({0.0, 1.0 / (b * c)});
}

PellSolution classical_solution(int n) {
  if (n < 1) throw domain_error("classical_solution: n must be >= 1");
  return {chebyshev_t(n), chebyshev_u(n - 1), PellData::classical()};
}

PellSolution e2_solution(double b) {
  require_e2_b(b);
  // (x+b) P^2 - (x^2-1)(x-b) Q^2 = (x+b) for the degree-2 pair.
  return {make_p2_e2(b), make_q2_e2(b), PellData::one_gap(-b, b, -b)};
}

PellSolution e4_degree4_solution(double b) {
  require_e4_b(b);
  const double c = std::sqrt((1.0 - b) * (1.0 + b));
  return {make_p4(b), make_q4(b), PellData::two_gap(-b, c, b, -c, -b, c)};
}

PellSolution e4_degree2_solution(double b) {
  require_e4_b(b);
  const double c = std::sqrt((1.0 - b) * (1.0 + b));
  return {make_p2_e4(b), make_q2_e4(b), PellData::two_gap(-b, c, b, -c, -c, b)};
}

Polynomial pell_residual(const PellSolution& sol) {
  const Polynomial x2m1({-1.0, 0.0, 1.0});
  return sol.data.alpha_factor() * sol.p * sol.p -
         x2m1 * sol.data.beta_factor() * sol.q * sol.q - sol.data.gamma_factor();
}

double relative_residual_norm(const PellSolution& sol) {
  const Polynomial x2m1({-1.0, 0.0, 1.0});
  const Polynomial lhs1 = sol.data.alpha_factor() * sol.p * sol.p;
  const Polynomial lhs2 = x2m1 * sol.data.beta_factor() * sol.q * sol.q;
  const double scale = std::max({lhs1.max_abs_coeff(), lhs2.max_abs_coeff(), 1.0});
  return pell_residual(sol).max_abs_coeff() / scale;
}

double branch_inverse_p2(int branch, double z, double b) {
  require_e2_b(b);
  require_unit_z(z);
  if (branch != 1 && branch != 2) throw domain_error("branch_inverse_p2: branch must be 1 or 2");
  const double v = clamped_sqrt(0.5 * ((1.0 + b * b) + z * (1.0 - b * b)));
  return branch == 1 ? -v : v;
}

double branch_inverse_p4(int branch, double z, double b) {
  require_e4_b(b);
  require_unit_z(z);
  if (branch < 1 || branch > 4) throw domain_error("branch_inverse_p4: branch must be in 1..4");
  // 1 - 2(1-z) b^2(1-b^2) rewritten through s = b^2 - 1/2 so the radicand
  // stays accurate where it nearly vanishes (z -> -1 with gaps closing)
  const double s = b * b - 0.5;
  const double inner_radical = clamped_sqrt(0.5 * (1.0 + z) + 2.0 * s * s * (1.0 - z));
  switch (branch) {
    case 1:
      return -clamped_sqrt(0.5 * (1.0 + inner_radical));
    case 2:
      return -clamped_sqrt(0.5 * (1.0 - inner_radical));
    case 3:
      return clamped_sqrt(0.5 * (1.0 - inner_radical));
    default:
      return clamped_sqrt(0.5 * (1.0 + inner_radical));
  }
}

std::vector<double> partial_fraction_weights(double z, double b, int degree) {
  if (!(z > -1.0 && z < 1.0)) {
    std::ostringstream msg;
    msg << "partial_fraction_weights: z = " << z << " outside (-1, 1) (roots degenerate at +-1)";
    throw domain_error(msg.str());
  }
  if (degree == 2) {
    const Polynomial p = make_p2_e2(b);
    const Polynomial q = make_q2_e2(b);
    const Polynomial dp = p.derivative();
    std::vector<double> w(2);
    for (int i = 1; i <= 2; ++i) {
      const double x = branch_inverse_p2(i, z, b);
      w[static_cast<size_t>(i - 1)] = q(x) / dp(x);
    }
    return w;
  }
  if (degree == 4) {
    const Polynomial p = make_p4(b);
    Polynomial q = make_q4(b);
    // Normalize Q's leading coefficient to P's sign; the weights sum to one
    // only for the lead-matched pair.
    if (q.leading_coeff() * p.leading_coeff() < 0.0) q *= -1.0;
    const Polynomial dp = p.derivative();
    std::vector<double> w(4);
    for (int i = 1; i <= 4; ++i) {
      const double x = branch_inverse_p4(i, z, b);
      w[static_cast<size_t>(i - 1)] = q(x) / dp(x);
    }
    return w;
  }
  throw domain_error("partial_fraction_weights: degree must be 2 or 4");
}

double middle_weight_deficit(double z, double b) {
  require_e4_b(b);
  require_unit_z(z);
  // Both the numerator 1 - 2b sqrt(1-b^2) and the radicand
  // 1 - 2b^2 + 2b^4 + (2b^2 - 2b^4) z cancel as b -> 1/sqrt2; through
  // s = b^2 - 1/2 they become 4s^2/(1 + sqrt(1-4s^2)) and
  // (1+z)/2 + 2s^2(1-z), both formed from positive pieces.
  const double s = b * b - 0.5;
  const double radicand = 0.5 * (1.0 + z) + 2.0 * s * s * (1.0 - z);
  if (!(radicand > 0.0)) {
    std::ostringstream msg;
    msg << "middle_weight_deficit: radicand " << radicand
        << " not positive (b too close to 1/sqrt2 at z = " << z << ")";
    throw domain_error(msg.str());
  }
  const double numerator = 4.0 * s * s / (1.0 + std::sqrt(std::max(1.0 - 4.0 * s * s, 0.0)));
  return numerator / std::sqrt(radicand);
}

}  // namespace gapmom
