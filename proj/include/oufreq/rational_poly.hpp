#ifndef OUFREQ_RATIONAL_POLY_HPP
#define OUFREQ_RATIONAL_POLY_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace oufreq {

using Rational = boost::multiprecision::cpp_rational;

/// Dense polynomial with exact rational coefficients, index = power of x.
/// Canonical form: no trailing zero coefficient; the zero polynomial has an
/// empty coefficient list and degree() == -1.
class RationalPoly {
public:
  RationalPoly() = default;
  explicit RationalPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
    trim();
  }

  static RationalPoly constant(const Rational &v) {
    return v == 0 ? RationalPoly() : RationalPoly({v});
  }
  static RationalPoly monomial(int power, const Rational &v);

  const std::vector<Rational> &coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Rational coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : Rational(0);
  }

  RationalPoly derivative() const;
  RationalPoly times_x(int power = 1) const;

  Rational eval(const Rational &x) const;
  double eval_double(double x) const;

  /// true if every nonzero coefficient sits at an index with the given parity
  bool has_parity(int parity_mod_2) const;

  friend RationalPoly operator+(const RationalPoly &a, const RationalPoly &b);
  friend RationalPoly operator-(const RationalPoly &a, const RationalPoly &b);
  friend RationalPoly operator*(const RationalPoly &a, const RationalPoly &b);
  friend RationalPoly operator*(const Rational &s, const RationalPoly &a);
  friend bool operator==(const RationalPoly &a, const RationalPoly &b) {
    return a.c_ == b.c_;
  }

  /// coefficients as "num/den" strings, lowest power first
  std::vector<std::string> to_strings() const;
  static RationalPoly from_strings(const std::vector<std::string> &parts);

private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
    // double images cached up front: eval_double sits on quadrature hot
    // paths where per-call rational-to-double conversion is too slow
    dc_.resize(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i)
      dc_[i] = c_[i].convert_to<double>();
  }
  std::vector<Rational> c_;
  std::vector<double> dc_;
};

} // namespace oufreq

#endif
