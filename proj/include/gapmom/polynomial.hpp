#ifndef GAPMOM_POLYNOMIAL_HPP
#define GAPMOM_POLYNOMIAL_HPP

#include <vector>

namespace gapmom {

// Dense real polynomial, coefficients in ascending degree order with exact
// trailing zeros trimmed. The zero polynomial has an empty coefficient list
// and degree() == -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs);

  static Polynomial constant(double c);
  // x - root
  static Polynomial from_root(double root);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  double coeff(int k) const;
  double leading_coeff() const { return coeffs_.empty() ? 0.0 : coeffs_.back(); }
  double max_abs_coeff() const;

  // Horner evaluation.
  double operator()(double x) const;

  Polynomial derivative() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(double s);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
  friend Polynomial operator*(double s, Polynomial a) { return a *= s; }

  bool operator==(const Polynomial&) const = default;

 private:
  void trim();
  std::vector<double> coeffs_;
};

}  // namespace gapmom

#endif
