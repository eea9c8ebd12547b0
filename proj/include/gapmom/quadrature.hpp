#ifndef GAPMOM_QUADRATURE_HPP
#define GAPMOM_QUADRATURE_HPP

#include <functional>
#include <vector>

#include "gapmom/geometry.hpp"
#include "gapmom/moments.hpp"

namespace gapmom {

struct QuadratureSpec {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  int max_level = 12;                // tanh-sinh step-halving levels, <= 15
  std::vector<double> split_points;  // extra interior splits
};

struct IntegralResult {
  double value = 0;
  double err = 0;  // last successive-estimate difference
  int levels = 0;
  long evals = 0;
};

// Integrand receiving the node x together with its exact distances to the
// integration endpoints. tanh-sinh nodes cluster exponentially close to the
// endpoints, far below the resolution of the double x; integrands with
// endpoint singularities must form the singular factors from the distances
// to keep full precision (reconstructing 1-x from x caps accuracy near 1e-8).
using DistanceAwareIntegrand = std::function<double(double x, double dist_lo, double dist_hi)>;

// Tanh-sinh (double-exponential) quadrature over [lo, hi], tolerant of
// algebraic endpoint singularities. Levels double the node density until
// successive estimates differ by at most max(abs_tol, rel_tol*|value|);
// throws convergence_error with the best estimate attached at max_level.
IntegralResult integrate_de(const DistanceAwareIntegrand& f, double lo, double hi,
                            const QuadratureSpec& spec = {});

// Convenience overload for integrands accurate from x alone (smooth ones, or
// singular only at an endpoint that is exactly representable like 0).
IntegralResult integrate_de(const std::function<double(double)>& f, double lo, double hi,
                            const QuadratureSpec& spec = {});

// Direct evaluation of the moment integral for q by summing integrate_de
// over the intervals of make_set(q.kind, q.b), splitting the E4 middle
// interval at 0 (the integrand behaves like |x|^(2 mu) there). Summation is
// left to right; error estimates add.
MomentValue moment_by_quadrature(const MomentQuery& q, const QuadratureSpec& spec = {});

}  // namespace gapmom

#endif
