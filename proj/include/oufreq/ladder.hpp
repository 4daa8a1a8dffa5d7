#ifndef OUFREQ_LADDER_HPP
#define OUFREQ_LADDER_HPP

#include "oufreq/logreal.hpp"
#include "oufreq/rational_poly.hpp"

#include <string>

namespace oufreq {

/// A function written in the closed symbolic basis
///     u(x) = p(x) * u0(x) + q(x) * e^{x^2/4} + s(x)
/// with exact rational polynomial coefficients.  The basis is closed under
/// differentiation and antidifferentiation, which is what makes the whole
/// solution ladder exact algebra.
struct SymbolicFunction {
  RationalPoly p, q, s;

  bool operator==(const SymbolicFunction &o) const {
    return p == o.p && q == o.q && s == o.s;
  }
};

/// Solution u_k of the drift eigenvalue equation at level k (eigenvalue
/// -k/2), together with its symbolic representation.
struct LadderFunction {
  int k = 0;
  SymbolicFunction f;
};

struct HermitePoly {
  int k = 0;
  RationalPoly poly; // monic, degree k
};

enum class BasisTag { U0, ExpQuarterSq, Monomial };

/// d/dx in the closed basis: u0' = e^{x^2/4}, (e^{x^2/4})' = (x/2) e^{x^2/4}.
SymbolicFunction differentiate(const SymbolicFunction &f);
LadderFunction ladder_differentiate(const LadderFunction &F);

/// Antiderivative, vanishing at x = 0, of x^m * (basis member).
SymbolicFunction integrate_basis(int m, BasisTag which);
/// Antiderivative, vanishing at x = 0, of a general basis combination.
SymbolicFunction antidifferentiate(const SymbolicFunction &f);

/// Exact value at x = 0 (only q and s contribute).
Rational value_at_zero(const SymbolicFunction &f);

/// u_k: u_0 = (1,0,0); negative k by repeated differentiation; positive k by
/// antidifferentiation plus the constant d_{k+1} = -2 u_{k-1}(0)/(k+1) that
/// kills the eigen-residual at the origin.  |k| <= 64.
LadderFunction ladder_build(int k);

/// The constant d_k used when building level k >= 1 (d_k = u_k(0)).
Rational ladder_constant(int k);

/// L F + (k/2) F expanded in the closed basis.  (0,0,0) iff F solves the
/// eigenvalue equation at level F.k.
SymbolicFunction eigen_residual(const LadderFunction &F);

/// Evaluate F (or its d-th derivative, d <= 2) at x in the log domain.
LogReal ladder_eval(const LadderFunction &F, double x, int deriv_order = 0);
LogReal symbolic_eval(const SymbolicFunction &f, double x);

/// Monic eigen-polynomials: h_0 = 1, h_1 = x, h_{k+1} = x h_k - 2k h_{k-1}.
HermitePoly hermite_polynomial(int k);

/// Exact Taylor polynomial of F at 0, truncated to the given degree.
RationalPoly taylor_polynomial(const SymbolicFunction &f, int degree);

struct TaylorCheckResult {
  LogReal lhs;      // sup over a grid of B_{R0} of |u - v|^2
  LogReal rhs_core; // R^{4n-1+max(0,2k+2)} e^{-R^2/2} \int_annulus u^2, n = 1
  double ratio() const { return lr_div(lhs, rhs_core).to_double(); }
};

/// Local polynomial-approximation quantities for u = u_k, v = its degree-k
/// Taylor polynomial at 0, on the line (n = 1).  Requires R >= max(2 R0, 4).
TaylorCheckResult taylor_approx_check(int k, double R0, double R);

/// JSON round-trip: {"k": int, "p": ["num/den", ...], "q": [...], "s": [...]}
std::string ladder_to_json(const LadderFunction &F);
LadderFunction ladder_from_json(const std::string &text);

} // namespace oufreq

#endif
