#include "gapmom/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gapmom/errors.hpp"

namespace gapmom {
namespace {

// Transformed half-width beyond which endpoint offsets underflow for every
// interval this library integrates.
constexpr double kTMax = 6.115;

double ipow(double x, int n) {
  double r = 1.0;
  double base = x;
  for (int e = n; e > 0; e >>= 1) {
    if (e & 1) r *= base;
    base *= base;
  }
  return r;
}

struct PieceResult {
  double value;
  double err;
  int levels;
  long evals;
};

// x(t) = mid + half*tanh((pi/2) sinh t), carried as the distance
//   half*(1 - tanh u) = 2*half*e^{-2u} / (1 + e^{-2u})
// from the nearer endpoint, which stays exact long after x itself has
// rounded onto the endpoint.
PieceResult tanh_sinh_piece(const DistanceAwareIntegrand& f, double a, double b,
                            const QuadratureSpec& spec) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  const double width = 2.0 * half;
  if (!(half > 0.0)) return {0.0, 0.0, 0, 0};

  long evals = 0;
  auto sample = [&](double t, double& acc) {
    const double u = 0.5 * std::numbers::pi * std::sinh(t);
    const double e2u = std::exp(-2.0 * u);
    const double offset = 2.0 * half * e2u / (1.0 + e2u);
    const double sech = 2.0 * std::exp(-u) / (1.0 + e2u);
    const double w = half * 0.5 * std::numbers::pi * std::cosh(t) * sech * sech;
    if (!(offset > 0.0) || !(w > 0.0)) return;  // beyond double resolution
    // NaN marks a genuinely invalid integrand; an overflowed value at a node
    // this deep is treated as unsampled (the piece error accounting owns the
    // region beyond double range, and the level estimates stall honestly).
    auto account = [&](double fv, double x) {
      if (std::isnan(fv)) {
        std::ostringstream msg;
        msg << "integrand NaN at x = " << x;
        throw domain_error(msg.str());
      }
      if (!std::isinf(fv)) {
        acc += w * fv;
        ++evals;
      }
    };
    if (t == 0.0) {
      account(f(mid, half, half), mid);
      return;
    }
    double xl = a + offset;
    double xr = b - offset;
    if (xl <= a) xl = std::nextafter(a, b);  // x degenerated onto the endpoint
    if (xr >= b) xr = std::nextafter(b, a);
    const double far = width - offset;
    account(f(xl, offset, far), xl);
    account(f(xr, far, offset), xr);
  };

  // Level 0: unit step in the transformed variable.
  double total = 0.0;
  for (int k = 0; static_cast<double>(k) <= kTMax; ++k) sample(static_cast<double>(k), total);
  double estimate = total;  // h = 1
  double err = std::numeric_limits<double>::infinity();

  const int max_level = std::min(spec.max_level, 15);
  for (int level = 1; level <= max_level; ++level) {
    const double h = std::ldexp(1.0, -level);
    double fresh = 0.0;
    for (long k = 1; static_cast<double>(k) * h <= kTMax; k += 2)
      sample(static_cast<double>(k) * h, fresh);
    total += fresh;
    const double next = h * total;
    err = std::abs(next - estimate);
    estimate = next;
    if (level >= 3 && err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(estimate)))
      return {estimate, err, level, evals};
  }
  std::ostringstream msg;
  msg << "tanh-sinh quadrature did not converge on [" << a << ", " << b << "] within "
      << max_level << " levels (last successive difference " << err << ")";
  throw convergence_error(msg.str(), estimate, evals);
}

// A subinterval with an integrand written against its own endpoints, plus
// the algebraic exponents of the integrand at each end (f ~ C d^alpha;
// alpha >= 0 means regular).
struct Piece {
  double lo;
  double hi;
  DistanceAwareIntegrand f;
  double alpha_lo = 0.0;
  double alpha_hi = 0.0;
};

// Node offsets bottom out near the smallest positive double, leaving the
// integrand mass below ~1e-308 of the endpoint unsampled. For an endpoint
// exponent alpha in (-1, 0) that mass is C d^(alpha+1)/(alpha+1); it only
// matters as alpha approaches -1 (weight exponents near -1/2), where the
// estimates must say so.
double unsampled_tail(const Piece& p, bool at_lo) {
  const double alpha = at_lo ? p.alpha_lo : p.alpha_hi;
  if (alpha >= 0.0) return 0.0;
  const double probe_d = 1e-250;
  const double width = p.hi - p.lo;
  if (!(width > 2.0 * probe_d)) return 0.0;
  const double x = at_lo ? p.lo : p.hi;
  const double fv = at_lo ? p.f(x, probe_d, width - probe_d) : p.f(x, width - probe_d, probe_d);
  if (!std::isfinite(fv)) return std::numeric_limits<double>::infinity();
  const double c = std::abs(fv) * std::pow(probe_d, -alpha);
  constexpr double kMinOffset = 1e-308;
  return c * std::pow(kMinOffset, alpha + 1.0) / (alpha + 1.0);
}

// Split a piece at interior points, re-anchoring the distance arguments to
// the parent endpoints so singular factors keep their exact offsets.
std::vector<Piece> split_piece(const Piece& piece, const std::vector<double>& points) {
  const double tol = 1e-13 * std::max(1.0, std::max(std::abs(piece.lo), std::abs(piece.hi)));
  std::vector<double> edges{piece.lo};
  std::vector<double> sorted(points);
  std::sort(sorted.begin(), sorted.end());
  for (double s : sorted)
    if (s > edges.back() + tol && s < piece.hi - tol) edges.push_back(s);
  edges.push_back(piece.hi);

  std::vector<Piece> out;
  for (size_t i = 0; i + 1 < edges.size(); ++i) {
    const double lo = edges[i];
    const double hi = edges[i + 1];
    if (lo == piece.lo && hi == piece.hi) {
      out.push_back(piece);
      continue;
    }
    const double shift_lo = lo - piece.lo;
    const double shift_hi = piece.hi - hi;
    auto base = piece.f;
    out.push_back({lo, hi,
                   [base, shift_lo, shift_hi](double x, double dlo, double dhi) {
                     return base(x, shift_lo + dlo, shift_hi + dhi);
                   },
                   lo == piece.lo ? piece.alpha_lo : 0.0,
                   hi == piece.hi ? piece.alpha_hi : 0.0});
  }
  return out;
}

IntegralResult run_pieces(const std::vector<Piece>& pieces, const QuadratureSpec& spec) {
  IntegralResult out;
  for (const Piece& p : pieces) {
    const PieceResult r = tanh_sinh_piece(p.f, p.lo, p.hi, spec);
    out.value += r.value;
    out.err += r.err + unsampled_tail(p, true) + unsampled_tail(p, false);
    out.levels = std::max(out.levels, r.levels);
    out.evals += r.evals;
  }
  return out;
}

// --- moment integrands, factor by factor from the endpoint distances ---

// Classical weight x^n (1-x^2)^(mu-1/2) over [-1,1] or [0,1].
std::vector<Piece> classical_pieces(SetKind kind, int n, double mu) {
  if (kind == SetKind::HalfRange) {
    return {{0.0, 1.0,
             [n, mu](double x, double, double dhi) {
               return ipow(x, n) * std::pow(dhi * (1.0 + x), mu - 0.5);
             },
             0.0, mu - 0.5}};
  }
  return {{-1.0, 1.0,
           [n, mu](double x, double dlo, double dhi) {
             return ipow(x, n) * std::pow(dlo * dhi, mu - 0.5);
           },
           mu - 0.5, mu - 0.5}};
}

std::vector<Piece> e2_pieces(int n, double mu, double b) {
  if (b == 0.0) {
    return {{-1.0, 1.0,
             [n, mu](double x, double dlo, double dhi) {
               return ipow(x, n) * std::pow(dlo * dhi, mu - 0.5);
             },
             mu - 0.5, mu - 0.5}};
  }
  const double d2 = (1.0 - b) * (1.0 + b);
  Piece left{-1.0, -b,
             [n, mu, b, d2](double x, double dlo, double dhi) {
               // (1+x) = dlo, (x+b) = -dhi
               const double cos2 = (b - x) * dhi / d2;
               const double one_m = (1.0 - x) * dlo / d2;
               const double w = std::sqrt(dhi) / std::sqrt((1.0 - x) * dlo * (b - x));
               return ipow(-std::sqrt(cos2), n) * std::pow(one_m, mu) * w;
             },
             mu - 0.5, 0.0};
  Piece right{b, 1.0,
              [n, mu, b, d2](double x, double dlo, double dhi) {
                // (x-b) = dlo, (1-x) = dhi
                const double cos2 = dlo * (x + b) / d2;
                const double one_m = dhi * (1.0 + x) / d2;
                const double w = std::sqrt(x + b) / std::sqrt(dhi * (1.0 + x) * dlo);
                return ipow(std::sqrt(cos2), n) * std::pow(one_m, mu) * w;
              },
              -0.5, mu - 0.5};
  return {left, right};
}

// Degenerate E4 at b = 1/sqrt2: cos phi = T_2(x) and the weight collapses to
// the Chebyshev one; pieces split at the former interval seams and 0.
std::vector<Piece> e4_degenerate_pieces(int n, double mu, double r) {
  auto body = [n, mu](double x, double one_minus_x, double one_plus_x, double abs_x) {
    const double t2 = 2.0 * x * x - 1.0;
    const double one_m =
        std::pow(2.0 * abs_x, 2.0 * mu) * std::pow(one_minus_x * one_plus_x, mu);
    return ipow(t2, n) * one_m / std::sqrt(one_minus_x * one_plus_x);
  };
  const double am = mu - 0.5;  // exponent at +-1
  const double a0 = 2.0 * mu;  // exponent at the origin
  return {
      {-1.0, -r,
       [body](double x, double dlo, double) { return body(x, 1.0 - x, dlo, -x); }, am, 0.0},
      {-r, 0.0,
       [body](double x, double, double dhi) { return body(x, 1.0 - x, 1.0 + x, dhi); }, 0.0, a0},
      {0.0, r,
       [body](double x, double dlo, double) { return body(x, 1.0 - x, 1.0 + x, dlo); }, a0, 0.0},
      {r, 1.0,
       [body](double x, double, double dhi) { return body(x, dhi, 1.0 + x, x); }, 0.0, am},
  };
}

std::vector<Piece> e4_pieces(int n, double mu, double b) {
  const double c = std::sqrt((1.0 - b) * (1.0 + b));
  const double gap = b - c;
  if (gap <= 1e-14) return e4_degenerate_pieces(n, mu, b);
  const double B = b * b * (1.0 - b) * (1.0 + b);
  const double d2c = b * b * c * c;

  // Outer-left [-1,-b]: (1+x) = dlo, (x+b) = -dhi, (x+c) = -(dhi + gap).
  Piece p1{-1.0, -b, [n, mu, b, c, gap, B, d2c](double x, double dlo, double dhi) {
             const double cos2 = (b - x) * dhi * (c - x) * (dhi + gap) / d2c;
             const double one_m = x * x * (1.0 - x) * dlo / B;
             const double w = std::sqrt((c - x) * dhi) /
                              std::sqrt((1.0 - x) * dlo * (b - x) * (dhi + gap));
             return ipow(std::sqrt(cos2), n) * std::pow(one_m, mu) * w;
           },
           mu - 0.5, 0.0};
  // Middle-left [-c,0]: (x+c) = dlo, x = -dhi, (x+b) = gap + dlo.
  // |x|^2 underflows long before |x| does, so |x|^(2 mu) is formed from the
  // distance directly.
  Piece p2{-c, 0.0, [n, mu, b, c, gap, B, d2c](double x, double dlo, double dhi) {
             const double xpb = gap + dlo;
             const double cos2 = (b - x) * xpb * (c - x) * dlo / d2c;
             const double one_m = std::pow(dhi, 2.0 * mu) *
                                  std::pow((1.0 - x) * (1.0 + x) / B, mu);
             const double w = std::sqrt((c - x) * xpb) /
                              std::sqrt((1.0 - x) * (1.0 + x) * (b - x) * dlo);
             return ipow(-std::sqrt(cos2), n) * one_m * w;
           },
           -0.5, 2.0 * mu};
  // Middle-right [0,c]: x = dlo, (c-x) = dhi, (b-x) = gap + dhi.
  Piece p3{0.0, c, [n, mu, b, c, gap, B, d2c](double x, double dlo, double dhi) {
             const double bmx = gap + dhi;
             const double cos2 = bmx * (x + b) * dhi * (x + c) / d2c;
             const double one_m = std::pow(dlo, 2.0 * mu) *
                                  std::pow((1.0 - x) * (1.0 + x) / B, mu);
             const double w = std::sqrt(dhi * (x + b)) /
                              std::sqrt((1.0 - x) * (1.0 + x) * bmx * (x + c));
             return ipow(-std::sqrt(cos2), n) * one_m * w;
           },
           2.0 * mu, 0.0};
  // Outer-right [b,1]: (x-b) = dlo, (1-x) = dhi, (x-c) = gap + dlo.
  Piece p4{b, 1.0, [n, mu, b, c, gap, B, d2c](double x, double dlo, double dhi) {
             const double cos2 = dlo * (x + b) * (gap + dlo) * (x + c) / d2c;
             const double one_m = x * x * dhi * (1.0 + x) / B;
             const double w = std::sqrt((gap + dlo) * (x + b)) /
                              std::sqrt(dhi * (1.0 + x) * dlo * (x + c));
             return ipow(std::sqrt(cos2), n) * std::pow(one_m, mu) * w;
           },
           -0.5, mu - 0.5};
  return {p1, p2, p3, p4};
}

}  // namespace

IntegralResult integrate_de(const DistanceAwareIntegrand& f, double lo, double hi,
                            const QuadratureSpec& spec) {
  if (!(spec.abs_tol > 0.0) || !(spec.rel_tol > 0.0))
    throw domain_error("integrate_de: tolerances must be positive");
  if (!(lo <= hi)) throw domain_error("integrate_de: requires lo <= hi");
  return run_pieces(split_piece({lo, hi, f}, spec.split_points), spec);
}

IntegralResult integrate_de(const std::function<double(double)>& f, double lo, double hi,
                            const QuadratureSpec& spec) {
  return integrate_de([&f](double x, double, double) { return f(x); }, lo, hi, spec);
}

MomentValue moment_by_quadrature(const MomentQuery& q, const QuadratureSpec& spec) {
  validate_query(q);

  std::vector<Piece> pieces;
  switch (q.kind) {
    case SetKind::FullRange:
    case SetKind::HalfRange:
      pieces = classical_pieces(q.kind, q.n, q.mu);
      break;
    case SetKind::E2:
      pieces = e2_pieces(q.n, q.mu, q.b);
      break;
    case SetKind::E4:
      pieces = e4_pieces(q.n, q.mu, q.b);
      break;
  }

  MomentValue mv;
  mv.method = Method::Quadrature;
  for (const Piece& p : pieces) {
    const IntegralResult r = run_pieces(split_piece(p, spec.split_points), spec);
    mv.value += r.value;
    mv.error_estimate += r.err;
    mv.terms_or_nodes += r.evals;
  }
  return mv;
}

}  // namespace gapmom
