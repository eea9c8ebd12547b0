#include "gapmom/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gapmom/errors.hpp"

namespace gapmom {
namespace {

constexpr double kEndpointTol = 1e-14;
// Pad for b recomputed in floating point at the E4 range's closed left end.
constexpr double kRangePad = 1e-15;

double membership_tol(double x) { return kEndpointTol * std::max(1.0, std::abs(x)); }

double inner_edge(double b) { return std::sqrt((1.0 - b) * (1.0 + b)); }

bool in_e2(double x, double b) {
  const double tol = membership_tol(x);
  const double ax = std::abs(x);
  return ax <= 1.0 + tol && ax >= b - tol;
}

bool in_e4(double x, double b) {
  const double tol = membership_tol(x);
  const double ax = std::abs(x);
  if (ax > 1.0 + tol) return false;
  return ax >= b - tol || ax <= inner_edge(b) + tol;
}

[[noreturn]] void throw_outside(const char* set_name, double x) {
  std::ostringstream msg;
  msg << "x = " << x << " lies outside " << set_name;
  throw domain_error(msg.str());
}

double clamped_sqrt(double v) { return std::sqrt(std::max(v, 0.0)); }

}  // namespace

double e4_min_b() { return std::sqrt(0.5); }

void validate_b(SetKind kind, double b) {
  switch (kind) {
    case SetKind::FullRange:
    case SetKind::HalfRange:
      return;
    case SetKind::E2:
      if (!(b >= 0.0 && b < 1.0)) {
        std::ostringstream msg;
        msg << "gap parameter b = " << b << " outside [0, 1) for E2";
        throw domain_error(msg.str());
      }
      return;
    case SetKind::E4:
      if (!(b >= e4_min_b() - kRangePad && b < 1.0)) {
        std::ostringstream msg;
        msg << "gap parameter b = " << b << " outside [" << e4_min_b() << ", 1) for E4";
        throw domain_error(msg.str());
      }
      return;
  }
}

void validate_mu(double mu) {
  // The guard band keeps quadrature cross-checks meaningful at the boundary.
  if (!(mu > -0.5 + 1e-12)) {
    std::ostringstream msg;
    msg << "weight exponent mu = " << mu << " must exceed -1/2";
    throw domain_error(msg.str());
  }
}

void validate_query(const MomentQuery& q) {
  if (q.n < 0) throw domain_error("moment order n must be nonnegative");
  validate_mu(q.mu);
  validate_b(q.kind, q.b);
}

IntervalSet make_set(SetKind kind, double b) {
  validate_b(kind, b);
  IntervalSet s;
  s.kind = kind;
  s.b = b;
  switch (kind) {
    case SetKind::FullRange:
      s.intervals = {{-1.0, 1.0, true, true}};
      break;
    case SetKind::HalfRange:
      s.intervals = {{0.0, 1.0, false, true}};
      break;
    case SetKind::E2:
      if (2.0 * b <= kEndpointTol) {
        s.intervals = {{-1.0, 1.0, true, true}};
      } else {
        s.intervals = {{-1.0, -b, true, false}, {b, 1.0, true, true}};
      }
      break;
    case SetKind::E4: {
      const double c = inner_edge(b);
      if (b - c <= kEndpointTol) {
        s.intervals = {{-1.0, 1.0, true, true}};
      } else {
        s.intervals = {{-1.0, -b, true, false}, {-c, c, true, false}, {b, 1.0, true, true}};
      }
      break;
    }
  }
  return s;
}

bool contains(const IntervalSet& set, double x) {
  const double tol = membership_tol(x);
  for (const Interval& iv : set.intervals)
    if (x >= iv.lo - tol && x <= iv.hi + tol) return true;
  return false;
}

double cos_phi_e2(double x, double b) {
  validate_b(SetKind::E2, b);
  if (!in_e2(x, b)) throw_outside("E2", x);
  const double m2 = (x - b) * (x + b) / ((1.0 - b) * (1.0 + b));
  const double r = clamped_sqrt(m2);
  if (r == 0.0) return 0.0;
  return x < 0.0 ? -r : r;
}

double cos_phi_e4(double x, double b) {
  validate_b(SetKind::E4, b);
  if (!in_e4(x, b)) throw_outside("E4", x);
  const double c = inner_edge(b);
  const double m2 = (x - b) * (x + b) * (x - c) * (x + c) / (b * b * c * c);
  const double r = clamped_sqrt(m2);
  if (r == 0.0) return 0.0;
  // + on the outer intervals, - on the middle one; at the degenerate
  // b = 1/sqrt2 this reduces to T_2(x) with the same sign pattern.
  const bool outer = std::abs(x) >= b - membership_tol(x);
  return outer ? r : -r;
}

double weight_e2(double x, double b) {
  validate_b(SetKind::E2, b);
  if (!in_e2(x, b)) throw_outside("E2", x);
  if (x == 1.0 || x == -1.0 || (b > 0.0 && x == b)) {
    std::ostringstream msg;
    msg << "weight_e2: pole at singular endpoint x = " << x;
    throw pole_error(msg.str());
  }
  if (b == 0.0) return 1.0 / std::sqrt((1.0 - x) * (1.0 + x));
  const double r = (x + b) / ((1.0 - x) * (1.0 + x) * (x - b));
  if (r < 0.0) {
    // Membership tolerance admitted a point a roundoff past an endpoint; the
    // weight continues with 0 across its zero and diverges across its poles.
    const double to_pole = std::min({std::abs(1.0 - x), std::abs(1.0 + x), std::abs(x - b)});
    if (to_pole <= std::abs(x + b)) {
      std::ostringstream msg;
      msg << "weight_e2: pole at singular endpoint x = " << x;
      throw pole_error(msg.str());
    }
    return 0.0;
  }
  return std::sqrt(r);
}

double weight_e4(double x, double b) {
  validate_b(SetKind::E4, b);
  if (!in_e4(x, b)) throw_outside("E4", x);
  const double c = inner_edge(b);
  if (x == 1.0 || x == -1.0 || x == b || x == -c) {
    std::ostringstream msg;
    msg << "weight_e4: pole at singular endpoint x = " << x;
    throw pole_error(msg.str());
  }
  const double num = (x - c) * (x + b);
  const double den = (1.0 - x) * (1.0 + x) * (x - b) * (x + c);
  const double r = num / den;
  if (r < 0.0) {
    const double to_pole = std::min({std::abs(1.0 - x), std::abs(1.0 + x),
                                     std::abs(x - b), std::abs(x + c)});
    const double to_zero = std::min(std::abs(x - c), std::abs(x + b));
    if (to_pole <= to_zero) {
      std::ostringstream msg;
      msg << "weight_e4: pole at singular endpoint x = " << x;
      throw pole_error(msg.str());
    }
    return 0.0;
  }
  return std::sqrt(r);
}

}  // namespace gapmom
