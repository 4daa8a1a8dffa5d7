#include "oufreq/rational_poly.hpp"

#include <stdexcept>

namespace oufreq {

RationalPoly RationalPoly::monomial(int power, const Rational &v) {
  if (v == 0) return RationalPoly();
  std::vector<Rational> c(power + 1, Rational(0));
  c[power] = v;
  return RationalPoly(std::move(c));
}

RationalPoly RationalPoly::derivative() const {
  if (c_.size() <= 1) return RationalPoly();
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = Rational(i) * c_[i];
  return RationalPoly(std::move(d));
}

RationalPoly RationalPoly::times_x(int power) const {
  if (is_zero() || power == 0) return power == 0 ? *this : RationalPoly(c_);
  std::vector<Rational> d(c_.size() + power, Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) d[i + power] = c_[i];
  return RationalPoly(std::move(d));
}

Rational RationalPoly::eval(const Rational &x) const {
  Rational acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double RationalPoly::eval_double(double x) const {
  double acc = 0.0;
  for (auto it = dc_.rbegin(); it != dc_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

bool RationalPoly::has_parity(int parity_mod_2) const {
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0 && static_cast<int>(i % 2) != parity_mod_2) return false;
  return true;
}

RationalPoly operator+(const RationalPoly &a, const RationalPoly &b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return RationalPoly(std::move(c));
}

RationalPoly operator-(const RationalPoly &a, const RationalPoly &b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
  return RationalPoly(std::move(c));
}

RationalPoly operator*(const RationalPoly &a, const RationalPoly &b) {
  if (a.is_zero() || b.is_zero()) return RationalPoly();
  std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return RationalPoly(std::move(c));
}

RationalPoly operator*(const Rational &s, const RationalPoly &a) {
  if (s == 0) return RationalPoly();
  std::vector<Rational> c = a.c_;
  for (auto &v : c) v *= s;
  return RationalPoly(std::move(c));
}

std::vector<std::string> RationalPoly::to_strings() const {
  std::vector<std::string> out;
  out.reserve(c_.size());
  for (const auto &v : c_) {
    out.push_back(boost::multiprecision::numerator(v).str() + "/" +
                  boost::multiprecision::denominator(v).str());
  }
  return out;
}

RationalPoly RationalPoly::from_strings(const std::vector<std::string> &parts) {
  std::vector<Rational> c;
  c.reserve(parts.size());
  for (const auto &s : parts) {
    auto slash = s.find('/');
    if (slash == std::string::npos) {
      c.emplace_back(boost::multiprecision::cpp_int(s));
    } else {
      boost::multiprecision::cpp_int num(s.substr(0, slash));
      boost::multiprecision::cpp_int den(s.substr(slash + 1));
      if (den == 0) throw std::invalid_argument("RationalPoly: zero denominator");
      c.emplace_back(Rational(num, den));
    }
  }
  return RationalPoly(std::move(c));
}

} // namespace oufreq
