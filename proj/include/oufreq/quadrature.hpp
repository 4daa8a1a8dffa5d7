#ifndef OUFREQ_QUADRATURE_HPP
#define OUFREQ_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace oufreq {

/// Gauss-Legendre rule on an interval [a, b].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  double a = -1.0;
  double b = 1.0;

  std::size_t size() const { return nodes.size(); }

  double integrate(const std::function<double(double)> &f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
    return s;
  }
};

/// m-node Gauss-Legendre rule mapped to [a, b].  Exact for polynomials of
/// degree <= 2m - 1.  Newton iteration on the Legendre recurrence; converges
/// for every m we ever request (checked up to 512).
QuadratureRule gauss_rule(int m, double a, double b);

/// Composite Gauss integration with panel doubling until two successive
/// refinements agree to rel_tol (or abs floor).  Used as the independent
/// oracle against closed-form evaluation paths.
double adaptive_integrate(const std::function<double(double)> &f, double a,
                          double b, double rel_tol = 1e-13);

} // namespace oufreq

#endif
