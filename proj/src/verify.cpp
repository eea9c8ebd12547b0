#include "gapmom/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <string_view>
#include <tuple>

#include "gapmom/errors.hpp"
#include "gapmom/geometry.hpp"
#include "gapmom/moments.hpp"
#include "gapmom/pell.hpp"
#include "gapmom/quadrature.hpp"
#include "gapmom/specfun.hpp"

namespace gapmom {
namespace {

struct Clause {
  const char* label;
  double dev;
  double tol;
};

// Collapse the clauses into one result; the reported deviation/tolerance pair
// is the numerical clause closest to (or past) its own tolerance. Runtime
// clauses gate the pass flag but only take the headline when they fail.
CheckResult make_result(std::string name, const std::vector<Clause>& clauses) {
  CheckResult r;
  r.name = std::move(name);
  r.pass = true;
  double worst_ratio = -1.0;
  std::string detail;
  for (const Clause& c : clauses) {
    const bool failed = c.dev > c.tol;
    r.pass = r.pass && !failed;
    const bool runtime = std::string_view(c.label).starts_with("runtime");
    const double ratio = c.dev / c.tol;
    if ((!runtime || failed) && ratio > worst_ratio) {
      worst_ratio = ratio;
      r.max_dev = c.dev;
      r.tol = c.tol;
    }
    if (clauses.size() > 1) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "%s%s %.2e (tol %.0e)", detail.empty() ? "" : "; ",
                    c.label, c.dev, c.tol);
      detail += buf;
    }
  }
  r.detail = std::move(detail);
  return r;
}

struct Grids {
  std::vector<double> mu;
  std::vector<int> n_literal;
  std::vector<double> b_e4;
  std::vector<double> b_e2;
  int sweep_points;
  int sample_points;
  int random_z;
  int classical_n_max;
  int closure_n_max;
};

Grids make_grids(bool quick) {
  if (quick)
    return {{0.0, 1.0}, {0, 1, 2, 3, 4}, {0.8, 0.95}, {0.0, 0.6, 0.9}, 12, 200, 20, 10, 4};
  return {{-0.25, 0.0, 0.5, 1.0, 2.5},
          {0, 1, 2, 3, 4, 5, 6, 7, 8},
          {0.72, 0.8, 0.9, 0.95},
          {0.0, 0.3, 0.6, 0.9},
          50,
          1000,
          100,
          20,
          6};
}

using QuadTable = std::map<std::tuple<int, int, int>, double>;  // (mu idx, n, b idx) -> value

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Criterion 1: closed forms against direct quadrature across the full grid,
// inside its runtime budget.
CheckResult check_closed_vs_quadrature(const Grids& g, QuadTable& table) {
  const auto t0 = std::chrono::steady_clock::now();
  double dev = 0;
  for (size_t mi = 0; mi < g.mu.size(); ++mi)
    for (int n : g.n_literal)
      for (size_t bi = 0; bi < g.b_e4.size(); ++bi) {
        const MomentQuery q{SetKind::E4, n, g.mu[mi], g.b_e4[bi]};
        const double quad = moment_by_quadrature(q).value;
        const double cf = moment(q, Method::ClosedForm).value;
        table[{static_cast<int>(mi), n, static_cast<int>(bi)}] = quad;
        dev = std::max(dev, std::abs(cf - quad) / std::max(1.0, std::abs(quad)));
      }
  return make_result("closed form vs quadrature (E4)",
                     {{"rel dev", dev, 1e-8}, {"runtime (s)", seconds_since(t0), 120.0}});
}

// Criterion 2: even-moment quadrature values are independent of b and match
// the Gamma/Pochhammer form.
CheckResult check_even_b_independence(const Grids& g, const QuadTable& table) {
  double dev_pair = 0, dev_cf = 0;
  for (size_t mi = 0; mi < g.mu.size(); ++mi)
    for (int n : g.n_literal) {
      if (n % 2 != 0) continue;
      const double cf = e4_even_moment(n / 2, g.mu[mi]).value;
      for (size_t bi = 0; bi < g.b_e4.size(); ++bi) {
        const double qi = table.at({static_cast<int>(mi), n, static_cast<int>(bi)});
        dev_cf = std::max(dev_cf, std::abs(qi - cf));
        for (size_t bj = bi + 1; bj < g.b_e4.size(); ++bj)
          dev_pair = std::max(
              dev_pair, std::abs(qi - table.at({static_cast<int>(mi), n, static_cast<int>(bj)})));
      }
    }
  return make_result("even-moment b-independence",
                     {{"pairwise", dev_pair, 1e-8}, {"vs closed form", dev_cf, 1e-8}});
}

// Criterion 3: first odd E2 moment, series vs hypergeometric vs quadrature
// along a b sweep (the representation-equivalence experiment).
CheckResult check_figure1(const Grids& g) {
  const auto t0 = std::chrono::steady_clock::now();
  double dev_pair = 0, dev_quad = 0;
  const int count = g.sweep_points;
  for (int i = 0; i < count; ++i) {
    const double b = 0.95 * i / (count - 1);
    const double hyp = e2_odd_moment_hyp(0, 0.0, b).value;
    const double ser = e2_odd_moment_series(0, 0.0, b, 1e-12).value;
    const double quad = moment_by_quadrature({SetKind::E2, 1, 0.0, b}).value;
    dev_pair = std::max(dev_pair, std::abs(hyp - ser));
    dev_quad = std::max(dev_quad, std::max(std::abs(hyp - quad), std::abs(ser - quad)));
  }
  return make_result("odd-moment representation equivalence (E2 sweep)",
                     {{"series vs hyp", dev_pair, 1e-9},
                      {"vs quadrature", dev_quad, 1e-8},
                      {"runtime (s)", seconds_since(t0), 10.0}});
}

// Criterion 4: Pell residuals of every constructed solution.
CheckResult check_pell_residuals(const Grids& g, bool perturb) {
  double dev = 0;
  for (int n = 1; n <= g.classical_n_max; ++n)
    dev = std::max(dev, relative_residual_norm(classical_solution(n)));
  std::vector<double> b_e2 = g.b_e2;
  b_e2.push_back(0.99);
  for (double b : b_e2) dev = std::max(dev, relative_residual_norm(e2_solution(b)));
  std::vector<double> b_e4 = g.b_e4;
  b_e4.push_back(0.99);
  for (double b : b_e4) {
    PellSolution deg4 = e4_degree4_solution(b);
    if (perturb) deg4.q += Polynomial::constant(1.0);
    dev = std::max(dev, relative_residual_norm(deg4));
    dev = std::max(dev, relative_residual_norm(e4_degree2_solution(b)));
  }
  return make_result("Pell-equation residuals", {{"rel coeff norm", dev, 1e-10}});
}

// Criterion 5: partial-fraction weights sum to one; the middle-branch weight
// deficit matches its closed form.
CheckResult check_partial_fractions(const Grids& g) {
  std::mt19937 rng(20240811u);
  std::uniform_real_distribution<double> zdist(-0.99, 0.99);
  double dev_sum = 0, dev_deficit = 0;
  for (double b : g.b_e4)
    for (int i = 0; i < g.random_z; ++i) {
      const double z = zdist(rng);
      const auto w = partial_fraction_weights(z, b, 4);
      dev_sum = std::max(dev_sum, std::abs(w[0] + w[1] + w[2] + w[3] - 1.0));
      dev_deficit = std::max(
          dev_deficit, std::abs(middle_weight_deficit(z, b) - (1.0 - 2.0 * (w[1] + w[2]))));
    }
  for (double b : g.b_e2)
    for (int i = 0; i < g.random_z; ++i) {
      const auto w = partial_fraction_weights(zdist(rng), b, 2);
      dev_sum = std::max(dev_sum, std::abs(w[0] + w[1] - 1.0));
    }
  return make_result("partial-fraction sum rules",
                     {{"sum", dev_sum, 1e-11}, {"middle deficit", dev_deficit, 1e-11}});
}

// Criterion 6: cos^2 phi = (P4+1)/2 and w = |Q4|/sqrt(1-P4^2) at sampled
// interior points.
CheckResult check_mapping_identities(const Grids& g) {
  std::mt19937 rng(77001u);
  double dev_cos = 0, dev_w = 0;
  for (double b : g.b_e4) {
    const Polynomial p4 = make_p4(b);
    const Polynomial q4 = make_q4(b);
    const double c = std::sqrt((1.0 - b) * (1.0 + b));
    // Sample the four monotone branch pieces. 1 - P4^2 vanishes at every
    // piece endpoint (P4 = +-1 there, including the interior point 0), so a
    // small margin keeps the |Q4|/sqrt(1-P4^2) reference itself evaluable at
    // the tested accuracy.
    const struct {
      double lo, hi;
    } pieces[] = {{-1.0, -b}, {-c, 0.0}, {0.0, c}, {b, 1.0}};
    const int per_piece = (g.sample_points + 3) / 4;
    for (const auto& piece : pieces) {
      const double margin = 0.005 * (piece.hi - piece.lo);
      std::uniform_real_distribution<double> xdist(piece.lo + margin, piece.hi - margin);
      for (int i = 0; i < per_piece; ++i) {
        const double x = xdist(rng);
        const double cp = cos_phi_e4(x, b);
        const double p = p4(x);
        dev_cos = std::max(dev_cos, std::abs(cp * cp - 0.5 * (p + 1.0)));
        const double w = weight_e4(x, b);
        const double w_pell = std::abs(q4(x)) / std::sqrt((1.0 - p) * (1.0 + p));
        dev_w = std::max(dev_w, std::abs(w - w_pell) / std::max(1.0, w));
      }
    }
  }
  return make_result("polynomial-mapping identities",
                     {{"cos^2 phi", dev_cos, 1e-11}, {"weight", dev_w, 1e-11}});
}

// Criterion 7: deformation limits of the odd E4 moments.
CheckResult check_deformation_limits(const Grids&) {
  double dev_open = 0, dev_half = 0;
  for (int n = 0; n <= 6; ++n)
    for (double mu : {0.0, 1.0}) {
      const double lim = pochhammer(1.0, n) / pochhammer(mu + 0.5, n + 1);
      dev_open = std::max(
          dev_open, std::abs(e4_odd_moment(n, mu, 1.0 - 1e-12).value - lim) / std::abs(lim));
    }
  const double near_closed = e4_odd_moment(0, 0.0, std::sqrt(0.5) + 1e-6).value;
  const double dev_closed = near_closed > 0.0 ? near_closed : 1.0;  // must be positive and tiny
  for (int n = 0; n <= 10; ++n)
    for (double mu : {0.0, 1.0}) {
      const double lim = pochhammer(1.0, n) / pochhammer(mu + 0.5, n + 1);
      const double half2 = 2.0 * half_range_moment(2 * n + 1, mu).value;
      dev_half = std::max(dev_half, std::abs(lim - half2) / std::abs(half2));
    }
  return make_result("deformation limits", {{"b->1 rel", dev_open, 1e-5},
                                            {"b->1/sqrt2 value", dev_closed, 1e-3},
                                            {"2x half-range identity", dev_half, 1e-13}});
}

// Criterion 8: 2F1 against the Euler-integral oracle and the Pfaff identity
// over the two moment-formula parameter families.
CheckResult check_hyp2f1(const Grids& g) {
  double dev_oracle = 0;
  const std::vector<int> ns =
      g.sweep_points >= 50 ? std::vector<int>{0, 1, 2} : std::vector<int>{0, 1};
  for (double mu : g.mu)
    for (int n : ns)
      for (double z : {0.3, 0.7, 0.9, 0.99}) {
        const HypergeometricParams p{0.5, mu + 0.5, mu + n + 1.5, z};
        dev_oracle = std::max(
            dev_oracle, std::abs(gauss_2f1(p, 1e-13) - gauss_2f1_integral_oracle(p, 1e-11)));
      }
  double dev_pfaff = 0;
  for (double mu : g.mu)
    for (int n : ns)
      for (double z : {-0.9, -0.6, -0.3, 0.3, 0.6, 0.9}) {
        const double lhs = gauss_2f1({0.5, mu + 0.5, mu + n + 1.5, z}, 1e-13);
        const double rhs = std::pow(1.0 - z, -0.5) *
                           gauss_2f1({0.5, n + 1.0, mu + n + 1.5, z / (z - 1.0)}, 1e-13);
        dev_pfaff = std::max(dev_pfaff, std::abs(lhs - rhs));
      }
  return make_result("2F1 certification",
                     {{"vs Euler oracle", dev_oracle, 1e-9}, {"Pfaff", dev_pfaff, 1e-10}});
}

// Criterion 9: at b = 1/sqrt2 the moment integral collapses to the
// T2-composed one; its quadrature matches the even closed forms and
// annihilates the odd powers.
CheckResult check_gap_closure(const Grids& g) {
  const double r = std::sqrt(0.5);
  const Polynomial t2 = chebyshev_t(2);
  double dev_even = 0, dev_odd = 0;
  QuadratureSpec spec;
  spec.split_points = {-r, 0.0, r};
  for (double mu : g.mu)
    for (int n = 0; n <= g.closure_n_max; ++n) {
      const auto f = [&t2, mu, n](double x, double dlo, double dhi) {
        double p = 1.0;
        const double v = t2(x);
        for (int k = 0; k < n; ++k) p *= v;
        const double one_minus_x = x > 0.5 ? dhi : 1.0 - x;
        const double one_plus_x = x < -0.5 ? dlo : 1.0 + x;
        const double om = std::pow(2.0 * std::abs(x), 2.0 * mu) *
                          std::pow(one_minus_x * one_plus_x, mu);
        return p * om / std::sqrt(one_minus_x * one_plus_x);
      };
      const IntegralResult q = integrate_de(f, -1.0, 1.0, spec);
      if (n % 2 == 0)
        dev_even = std::max(dev_even, std::abs(q.value - e4_even_moment(n / 2, mu).value));
      else
        dev_odd = std::max(dev_odd, std::abs(q.value));
    }
  return make_result("gap-closure degenerate case",
                     {{"even vs closed", dev_even, 1e-8}, {"odd magnitude", dev_odd, 1e-9}});
}

}  // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& opts) {
  const Grids g = make_grids(opts.quick);
  std::vector<CheckResult> results;
  QuadTable table;
  results.push_back(check_closed_vs_quadrature(g, table));
  results.push_back(check_even_b_independence(g, table));
  results.push_back(check_figure1(g));
  results.push_back(check_pell_residuals(g, opts.perturb_q4));
  results.push_back(check_partial_fractions(g));
  results.push_back(check_mapping_identities(g));
  results.push_back(check_deformation_limits(g));
  results.push_back(check_hyp2f1(g));
  results.push_back(check_gap_closure(g));
  return results;
}

}  // namespace gapmom
