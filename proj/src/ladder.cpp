#include "oufreq/ladder.hpp"

#include "oufreq/quadrature.hpp"
#include "oufreq/u0.hpp"

#include <json.hpp>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace oufreq {

namespace {

const Rational kHalf(1, 2);

SymbolicFunction times_poly(const SymbolicFunction &f, const RationalPoly &g) {
  return {g * f.p, g * f.q, g * f.s};
}

SymbolicFunction scale(const SymbolicFunction &f, const Rational &c) {
  return {c * f.p, c * f.q, c * f.s};
}

SymbolicFunction add(const SymbolicFunction &a, const SymbolicFunction &b) {
  return {a.p + b.p, a.q + b.q, a.s + b.s};
}

SymbolicFunction sub(const SymbolicFunction &a, const SymbolicFunction &b) {
  return {a.p - b.p, a.q - b.q, a.s - b.s};
}

} // namespace

SymbolicFunction differentiate(const SymbolicFunction &f) {
  const RationalPoly half_x = RationalPoly::monomial(1, kHalf);
  return {f.p.derivative(), f.p + f.q.derivative() + half_x * f.q,
          f.s.derivative()};
}

LadderFunction ladder_differentiate(const LadderFunction &F) {
  return {F.k - 1, differentiate(F.f)};
}

SymbolicFunction integrate_basis(int m, BasisTag which) {
  if (m < 0 || m > 128)
    throw std::invalid_argument("integrate_basis: need 0 <= m <= 128");
  switch (which) {
    case BasisTag::Monomial:
      return {RationalPoly(), RationalPoly(),
              RationalPoly::monomial(m + 1, Rational(1, m + 1))};
    case BasisTag::ExpQuarterSq: {
      // E_m = \int_0^x s^m e^{s^2/4} ds; by parts
      // E_m = 2 x^{m-1} e^{x^2/4} - 2(m-1) E_{m-2}, E_0 = u0, E_1 = 2e^{x^2/4}-2.
      if (m == 0) return {RationalPoly::constant(1), RationalPoly(), RationalPoly()};
      if (m == 1)
        return {RationalPoly(), RationalPoly::constant(2),
                RationalPoly::constant(-2)};
      SymbolicFunction tail = scale(integrate_basis(m - 2, BasisTag::ExpQuarterSq),
                                    Rational(-2 * (m - 1)));
      tail.q = tail.q + RationalPoly::monomial(m - 1, Rational(2));
      return tail;
    }
    case BasisTag::U0: {
      // \int_0^x s^m u0 = x^{m+1} u0 / (m+1) - E_{m+1} / (m+1)
      SymbolicFunction e = scale(integrate_basis(m + 1, BasisTag::ExpQuarterSq),
                                 Rational(-1, m + 1));
      e.p = e.p + RationalPoly::monomial(m + 1, Rational(1, m + 1));
      return e;
    }
  }
  throw std::logic_error("integrate_basis: bad tag");
}

SymbolicFunction antidifferentiate(const SymbolicFunction &f) {
  SymbolicFunction out;
  for (int i = 0; i <= f.p.degree(); ++i)
    if (f.p.coeff(i) != 0)
      out = add(out, scale(integrate_basis(i, BasisTag::U0), f.p.coeff(i)));
  for (int i = 0; i <= f.q.degree(); ++i)
    if (f.q.coeff(i) != 0)
      out = add(out, scale(integrate_basis(i, BasisTag::ExpQuarterSq), f.q.coeff(i)));
  for (int i = 0; i <= f.s.degree(); ++i)
    if (f.s.coeff(i) != 0)
      out = add(out, scale(integrate_basis(i, BasisTag::Monomial), f.s.coeff(i)));
  return out;
}

Rational value_at_zero(const SymbolicFunction &f) {
  return f.q.coeff(0) + f.s.coeff(0); // u0(0) = 0, e^{0} = 1
}

namespace {

// Levels are built sequentially and memoized; the per-level step is cheap,
// so one map guarded by a mutex is enough.
std::map<int, LadderFunction> &ladder_cache() {
  static std::map<int, LadderFunction> cache = {
      {0, {0, {RationalPoly::constant(1), RationalPoly(), RationalPoly()}}}};
  return cache;
}
std::mutex ladder_mutex;

} // namespace

LadderFunction ladder_build(int k) {
  if (k < -64 || k > 64)
    throw std::invalid_argument("ladder_build: |k| <= 64 required");
  std::lock_guard<std::mutex> lock(ladder_mutex);
  auto &cache = ladder_cache();
  auto it = cache.find(k);
  if (it != cache.end()) return it->second;
  if (k < 0) {
    int have = 0;
    while (cache.count(have - 1)) --have;
    for (int j = have; j > k; --j)
      cache[j - 1] = ladder_differentiate(cache[j]);
  } else {
    int have = 0;
    while (cache.count(have + 1)) ++have;
    for (int j = have; j < k; ++j) {
      // u_{j+1} = \int_0^x u_j + d_{j+1}, with d_{j+1} = -2 u_{j-1}(0)/(j+1)
      // chosen so the eigen-residual vanishes at the origin.
      const SymbolicFunction u_prev =
          (j >= 1) ? cache[j - 1].f : differentiate(cache[0].f);
      const Rational d = Rational(-2) * value_at_zero(u_prev) / Rational(j + 1);
      SymbolicFunction next = antidifferentiate(cache[j].f);
      next.s = next.s + RationalPoly::constant(d);
      cache[j + 1] = {j + 1, next};
    }
  }
  return cache[k];
}

Rational ladder_constant(int k) {
  if (k < 1) throw std::invalid_argument("ladder_constant: k >= 1 required");
  return value_at_zero(ladder_build(k).f);
}

SymbolicFunction eigen_residual(const LadderFunction &F) {
  const SymbolicFunction d1 = differentiate(F.f);
  const SymbolicFunction d2 = differentiate(d1);
  const RationalPoly half_x = RationalPoly::monomial(1, kHalf);
  return add(sub(d2, times_poly(d1, half_x)), scale(F.f, Rational(F.k, 2)));
}

LogReal symbolic_eval(const SymbolicFunction &f, double x) {
  const double w = u0_scaled(x);
  const double head = f.p.eval_double(x) * w + f.q.eval_double(x);
  LogReal out = LogReal::zero();
  if (head != 0.0)
    out = LogReal::from_log(head > 0.0 ? 1 : -1,
                            x * x / 4.0 + std::log(std::fabs(head)));
  return lr_add(out, LogReal::from_double(f.s.eval_double(x)));
}

LogReal ladder_eval(const LadderFunction &F, double x, int deriv_order) {
  if (deriv_order < 0 || deriv_order > 2)
    throw std::invalid_argument("ladder_eval: derivative order <= 2");
  SymbolicFunction f = F.f;
  for (int i = 0; i < deriv_order; ++i) f = differentiate(f);
  return symbolic_eval(f, x);
}

HermitePoly hermite_polynomial(int k) {
  if (k < 0 || k > 64)
    throw std::invalid_argument("hermite_polynomial: 0 <= k <= 64 required");
  RationalPoly h0 = RationalPoly::constant(1);
  if (k == 0) return {0, h0};
  RationalPoly h1 = RationalPoly::monomial(1, Rational(1));
  for (int j = 1; j < k; ++j) {
    RationalPoly h2 = h1.times_x() - (Rational(2 * j) * h0);
    h0 = h1;
    h1 = h2;
  }
  return {k, h1};
}

RationalPoly taylor_polynomial(const SymbolicFunction &f, int degree) {
  if (degree < 0) return RationalPoly();
  // series of e^{x^2/4}: sum x^{2j} / (4^j j!);  u0: sum x^{2j+1} / (4^j j! (2j+1))
  std::vector<Rational> e_ser(degree + 1, Rational(0));
  std::vector<Rational> u_ser(degree + 1, Rational(0));
  Rational fact(1); // 4^j j!
  for (int j = 0; 2 * j <= degree; ++j) {
    if (j > 0) fact *= Rational(4 * j);
    e_ser[2 * j] = Rational(1) / fact;
    if (2 * j + 1 <= degree) u_ser[2 * j + 1] = Rational(1) / (fact * (2 * j + 1));
  }
  auto truncate = [degree](const RationalPoly &a) {
    std::vector<Rational> c;
    for (int i = 0; i <= std::min(degree, a.degree()); ++i) c.push_back(a.coeff(i));
    return RationalPoly(std::move(c));
  };
  RationalPoly out = truncate(f.p * RationalPoly(u_ser)) +
                     truncate(f.q * RationalPoly(e_ser)) + truncate(f.s);
  return truncate(out);
}

TaylorCheckResult taylor_approx_check(int k, double R0, double R) {
  if (k < 0) throw std::invalid_argument("taylor_approx_check: k >= 0");
  if (R < std::max(2.0 * R0, 4.0))
    throw std::invalid_argument("taylor_approx_check: R >= max(2 R0, 4)");
  const LadderFunction u = ladder_build(k);
  const RationalPoly v = taylor_polynomial(u.f, k);

  double sup_sq = 0.0;
  const int steps = 256;
  for (int i = -steps; i <= steps; ++i) {
    const double x = R0 * i / steps;
    const double diff = symbolic_eval(u.f, x).to_double() - v.eval_double(x);
    sup_sq = std::max(sup_sq, diff * diff);
  }

  // annulus integral of u^2 on |x| in [R - 1/R, R + 1/R]; u^2 is even
  LogReal integral = LogReal::zero();
  const double lo = R - 1.0 / R, hi = R + 1.0 / R;
  const int panels = 8;
  for (int p = 0; p < panels; ++p) {
    const double a = lo + (hi - lo) * p / panels;
    const double b = lo + (hi - lo) * (p + 1) / panels;
    QuadratureRule rule = gauss_rule(16, a, b);
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const LogReal uval = symbolic_eval(u.f, rule.nodes[i]);
      if (uval.is_zero()) continue;
      integral = lr_add(integral, LogReal::from_log(
                                      1, std::log(rule.weights[i]) + 2.0 * uval.logmag));
    }
  }
  if (integral.is_zero())
    throw std::domain_error("taylor_approx_check: annulus quadrature underflow");
  integral = lr_scale(integral, 2.0); // both sides of the line

  const double power = 4.0 * 1 - 1 + std::max(0, 2 * k + 2);
  const LogReal rhs = lr_mul(
      LogReal::from_log(1, power * std::log(R) - R * R / 2.0), integral);
  return {LogReal::from_double(sup_sq), rhs};
}

std::string ladder_to_json(const LadderFunction &F) {
  nlohmann::json j;
  j["k"] = F.k;
  j["p"] = F.f.p.to_strings();
  j["q"] = F.f.q.to_strings();
  j["s"] = F.f.s.to_strings();
  return j.dump();
}

LadderFunction ladder_from_json(const std::string &text) {
  nlohmann::json j = nlohmann::json::parse(text);
  LadderFunction F;
  F.k = j.at("k").get<int>();
  F.f.p = RationalPoly::from_strings(j.at("p").get<std::vector<std::string>>());
  F.f.q = RationalPoly::from_strings(j.at("q").get<std::vector<std::string>>());
  F.f.s = RationalPoly::from_strings(j.at("s").get<std::vector<std::string>>());
  return F;
}

} // namespace oufreq
