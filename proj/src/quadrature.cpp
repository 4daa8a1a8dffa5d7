#include "oufreq/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace oufreq {

namespace {

// Nodes/weights on the reference interval [-1, 1].
struct ReferenceRule {
  std::vector<double> x;
  std::vector<double> w;
};

ReferenceRule build_reference(int m) {
  ReferenceRule rule;
  rule.x.resize(m);
  rule.w.resize(m);
  const double pi = std::acos(-1.0);
  for (int i = 0; i < m; ++i) {
    // Chebyshev-based initial guess for the i-th root of P_m.
    double x = std::cos(pi * (i + 0.75) / (m + 0.5));
    double pp = 0.0;
    bool converged = false;
    for (int iter = 0; iter < 100; ++iter) {
      // Legendre recurrence for P_m(x) and P_m'(x).
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= m; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = m * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) {
        converged = true;
        break;
      }
    }
    if (!converged) throw std::runtime_error("gauss_rule: Newton iteration failed");
    rule.x[m - 1 - i] = x;
    rule.w[m - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
  return rule;
}

const ReferenceRule &cached_reference(int m) {
  static std::map<int, ReferenceRule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it == cache.end()) it = cache.emplace(m, build_reference(m)).first;
  return it->second;
}

} // namespace

QuadratureRule gauss_rule(int m, double a, double b) {
  if (m < 1) throw std::invalid_argument("gauss_rule: m must be >= 1");
  if (!(a < b)) throw std::invalid_argument("gauss_rule: need a < b");
  const ReferenceRule &ref = cached_reference(m);
  QuadratureRule rule;
  rule.a = a;
  rule.b = b;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < m; ++i) {
    rule.nodes[i] = mid + half * ref.x[i];
    rule.weights[i] = half * ref.w[i];
  }
  return rule;
}

double adaptive_integrate(const std::function<double(double)> &f, double a,
                          double b, double rel_tol) {
  if (a == b) return 0.0;
  const int nodes_per_panel = 16;
  double prev = 0.0;
  bool have_prev = false;
  for (int panels = 1; panels <= 4096; panels *= 2) {
    double total = 0.0;
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
      QuadratureRule r = gauss_rule(nodes_per_panel, a + p * h, a + (p + 1) * h);
      total += r.integrate(f);
    }
    if (have_prev) {
      double scale = std::max(std::fabs(total), 1e-300);
      if (std::fabs(total - prev) <= rel_tol * scale) return total;
    }
    prev = total;
    have_prev = true;
  }
  return prev;
}

} // namespace oufreq
