#ifndef GAPMOM_GEOMETRY_HPP
#define GAPMOM_GEOMETRY_HPP

#include <vector>

namespace gapmom {

enum class SetKind { FullRange, HalfRange, E2, E4 };

// [lo, hi] with per-endpoint flags marking inverse-square-root weight
// singularities (endpoints where the set's weight diverges).
struct Interval {
  double lo = 0;
  double hi = 0;
  bool lo_singular = false;
  bool hi_singular = false;
};

struct IntervalSet {
  SetKind kind = SetKind::FullRange;
  double b = 0;
  std::vector<Interval> intervals;  // sorted, pairwise disjoint
};

// Which moment: n is the literal power of cos phi (or of x for the classical
// sets); mu the weight exponent; b the gap parameter (ignored for
// FullRange/HalfRange).
struct MomentQuery {
  SetKind kind = SetKind::FullRange;
  int n = 0;
  double mu = 0;
  double b = 0;
};

// Smallest admissible b for E4 (gaps close at b = 1/sqrt2).
double e4_min_b();

void validate_b(SetKind kind, double b);
void validate_mu(double mu);
void validate_query(const MomentQuery& q);

// Interval lists:
//   FullRange -> [-1,1], HalfRange -> [0,1],
//   E2 -> [-1,-b] U [b,1],
//   E4 -> [-1,-b] U [-sqrt(1-b^2), sqrt(1-b^2)] U [b,1].
// Touching endpoints are merged (E2 at b = 0, E4 at b = 1/sqrt2).
IntervalSet make_set(SetKind kind, double b = 0.0);

// Membership with endpoint tolerance 1e-14 * max(1, |x|), endpoints inclusive.
bool contains(const IntervalSet& set, double x);

// sign(x) sqrt((x^2 - b^2)/(1 - b^2)) on E2.
double cos_phi_e2(double x, double b);

// Magnitude sqrt((P4(x)+1)/2); sign +1 on the outer intervals and -1 on the
// middle one.
double cos_phi_e4(double x, double b);

// Akhiezer weight of E2: sqrt((x+b) / ((1-x^2)(x-b))); the Chebyshev weight
// 1/sqrt(1-x^2) at b = 0. Pole error exactly at the singular endpoints.
double weight_e2(double x, double b);

// Akhiezer weight of E4:
//   sqrt(((x - sqrt(1-b^2))(x + b)) / ((1-x^2)(x - b)(x + sqrt(1-b^2)))).
double weight_e4(double x, double b);

}  // namespace gapmom

#endif
