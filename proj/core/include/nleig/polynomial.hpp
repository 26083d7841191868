#pragma once

#include <initializer_list>
#include <vector>

namespace nleig {

// Dense real polynomial, coefficients()[j] * x^j.
class Polynomial {
public:
  Polynomial() = default;
  Polynomial(std::initializer_list<double> coeffs) : c_(coeffs) { trim(); }
  explicit Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) { trim(); }

  double operator()(double x) const;

  Polynomial derivative() const;
  // Antiderivative with zero constant term.
  Polynomial antiderivative() const;

  // Degree of the zero polynomial is -1.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  double leading_coefficient() const { return c_.empty() ? 0.0 : c_.back(); }
  double constant_term() const { return c_.empty() ? 0.0 : c_.front(); }
  const std::vector<double>& coefficients() const { return c_; }
  bool is_zero() const { return c_.empty(); }

  bool operator==(const Polynomial&) const = default;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(double s, const Polynomial& p);

private:
  void trim();
  std::vector<double> c_;
};

}  // namespace nleig
