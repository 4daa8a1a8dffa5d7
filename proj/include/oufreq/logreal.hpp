#ifndef OUFREQ_LOGREAL_HPP
#define OUFREQ_LOGREAL_HPP

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace oufreq {

/// Signed log-magnitude scalar.  Represents sign * exp(logmag), with the
/// zero state tagged by sign == 0 (logmag is ignored there).  All arithmetic
/// stays in the log domain, so quantities of size e^{r^2/4} with r ~ 200
/// remain representable.
struct LogReal {
  int sign = 0;        // -1, 0, +1
  double logmag = 0.0; // natural log of |value|; meaningful only if sign != 0

  constexpr LogReal() = default;
  constexpr LogReal(int s, double lm) : sign(s), logmag(s == 0 ? 0.0 : lm) {}

  static LogReal zero() { return LogReal(); }
  static LogReal one() { return LogReal(1, 0.0); }

  static LogReal from_double(double x) {
    if (x == 0.0) return zero();
    return LogReal(x > 0.0 ? 1 : -1, std::log(std::fabs(x)));
  }

  /// sign * e^l without ever forming e^l when it would overflow the caller's
  /// intent; the caller is responsible for l being a genuine log-magnitude.
  static LogReal from_log(int s, double l) {
    if (s == 0) return zero();
    return LogReal(s > 0 ? 1 : -1, l);
  }

  bool is_zero() const { return sign == 0; }

  double to_double() const {
    if (sign == 0) return 0.0;
    return sign * std::exp(logmag);
  }

  LogReal negate() const { return LogReal(-sign, logmag); }

  LogReal reciprocal() const {
    if (sign == 0) throw std::domain_error("LogReal: reciprocal of zero");
    return LogReal(sign, -logmag);
  }

  LogReal abs() const { return LogReal(sign == 0 ? 0 : 1, logmag); }
};

/// Signed log-sum-exp.  Factors out the larger magnitude; equal magnitudes
/// with opposite signs cancel to the exact zero state.
inline LogReal lr_add(const LogReal &a, const LogReal &b) {
  if (a.sign == 0) return b;
  if (b.sign == 0) return a;
  const LogReal &big = (a.logmag >= b.logmag) ? a : b;
  const LogReal &small = (a.logmag >= b.logmag) ? b : a;
  const double d = small.logmag - big.logmag; // <= 0
  if (a.sign == b.sign)
    return LogReal(a.sign, big.logmag + std::log1p(std::exp(d)));
  if (d == 0.0) return LogReal::zero(); // exact cancellation
  const double t = std::exp(d);
  if (t >= 1.0) return LogReal::zero(); // d == -0.0 rounding guard
  return LogReal(big.sign, big.logmag + std::log1p(-t));
}

inline LogReal lr_sub(const LogReal &a, const LogReal &b) {
  return lr_add(a, b.negate());
}

inline LogReal lr_mul(const LogReal &a, const LogReal &b) {
  if (a.sign == 0 || b.sign == 0) return LogReal::zero();
  return LogReal(a.sign * b.sign, a.logmag + b.logmag);
}

inline LogReal lr_div(const LogReal &a, const LogReal &b) {
  return lr_mul(a, b.reciprocal());
}

inline LogReal lr_scale(const LogReal &a, double c) {
  return lr_mul(a, LogReal::from_double(c));
}

inline LogReal lr_sq(const LogReal &a) { return lr_mul(a, a); }

inline LogReal operator+(const LogReal &a, const LogReal &b) { return lr_add(a, b); }
inline LogReal operator-(const LogReal &a, const LogReal &b) { return lr_sub(a, b); }
inline LogReal operator*(const LogReal &a, const LogReal &b) { return lr_mul(a, b); }
inline LogReal operator/(const LogReal &a, const LogReal &b) { return lr_div(a, b); }
inline LogReal operator-(const LogReal &a) { return a.negate(); }

/// value comparison (not representation comparison)
inline bool lr_less(const LogReal &a, const LogReal &b) {
  if (a.sign != b.sign) return a.sign < b.sign;
  if (a.sign == 0) return false;
  return a.sign > 0 ? a.logmag < b.logmag : a.logmag > b.logmag;
}

} // namespace oufreq

#endif
