#include "oufreq/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace oufreq {

double eval_P(double g, double gprime, double r, const FreqOpParams &params) {
  if (!(g > 0.0)) throw std::domain_error("eval_P: g must be positive");
  if (!(r > 0.0)) throw std::domain_error("eval_P: r must be positive");
  const double fp = params.fprime(r);
  if (fp < r / 2.0 - 1e-12)
    throw std::invalid_argument("eval_P: f'(r) >= r/2 violated at r = " +
                                std::to_string(r));
  return gprime / g + (params.n - 2.0) / r - fp + g / r +
         r * params.lambda / g;
}

ChoosegResult chooseg_r1(int n, double eps, double lambda) {
  if (!(eps > 0.0)) throw std::invalid_argument("chooseg_r1: eps > 0 required");
  const double a = 2.0 * (n + eps + 2.0 * lambda);
  const double target = 2.0 + 2.0 * lambda + eps / 2.0;

  ChoosegResult res;
  res.positivity_radius = a > 0.0 ? std::sqrt(a) : 0.0;

  // Q(r1): the inequality holds for every r >= r1.  The left side is
  // decreasing past sqrt(a), so it is enough to test at r1 itself (plus the
  // domain constraint r1^2 >= a when the limit 2(lambda+1) is positive).
  auto holds_from = [&](double r) {
    if (lambda + 1.0 <= 0.0) return a <= 0.0 || r * r >= a;
    if (a <= 0.0) return 2.0 * (lambda + 1.0) / (1.0 - a / (r * r)) <= target;
    if (r * r < a) return false;
    const double denom = 1.0 - a / (r * r);
    if (denom <= 0.0) return false;
    return 2.0 * (lambda + 1.0) / denom <= target;
  };

  double hi = std::max(4.0, 2.0 * res.positivity_radius + 4.0);
  int guard = 0;
  while (!holds_from(hi)) {
    hi *= 2.0;
    if (++guard > 60)
      throw std::invalid_argument("chooseg_r1: infeasible parameters");
  }
  double lo = 0.0;
  if (holds_from(1e-12)) {
    res.r1 = 0.0;
  } else {
    while (hi - lo > 1e-9) {
      const double mid = 0.5 * (lo + hi);
      (holds_from(mid) ? hi : lo) = mid;
    }
    res.r1 = hi;
  }

  // post-check: P g <= -eps/(2r) on [r1, 4 r1] where g is positive
  const double start = std::max(res.r1, res.positivity_radius * (1.0 + 1e-6));
  const double stop = std::max(4.0 * std::max(res.r1, 1.0), start + 1.0);
  const FreqOpParams params = FreqOpParams::gaussian(n, lambda);
  double max_excess = -HUGE_VAL;
  const int steps = 200;
  for (int i = 0; i <= steps; ++i) {
    const double r = start + (stop - start) * i / steps;
    const double g = r * r / 2.0 - n - eps - 2.0 * lambda;
    if (!(g > 0.0)) continue;
    const double excess = eval_P(g, r, r, params) + eps / (2.0 * r);
    max_excess = std::max(max_excess, excess);
  }
  res.max_P_excess = max_excess;
  return res;
}

Trajectory Trajectory::from_function(const std::function<double(double)> &fn,
                                     const std::function<double(double)> &dfn,
                                     const std::vector<double> &grid) {
  Trajectory t;
  t.r = grid;
  t.h.reserve(grid.size());
  t.hprime.reserve(grid.size());
  for (double r : grid) {
    t.h.push_back(fn(r));
    t.hprime.push_back(dfn(r));
  }
  return t;
}

Trajectory integrate_extremal(const FreqOpParams &params, double r0, double h0,
                              double r_max) {
  if (!(h0 > 0.0))
    throw std::invalid_argument("integrate_extremal: h0 > 0 required");
  auto field = [&](double r, double h) {
    return h * (params.fprime(r) - (params.n - 2.0) / r - h / r) -
           r * params.lambda;
  };
  Trajectory t;
  const double record_every = 0.005;
  double r = r0, h = h0, next_record = r0;
  while (r < r_max) {
    if (r >= next_record) {
      t.r.push_back(r);
      t.h.push_back(h);
      t.hprime.push_back(field(r, h));
      next_record += record_every;
    }
    const double step = std::min(1e-3 * std::min(1.0, 1.0 / r), r_max - r);
    const double k1 = field(r, h);
    const double k2 = field(r + step / 2.0, h + step / 2.0 * k1);
    const double k3 = field(r + step / 2.0, h + step / 2.0 * k2);
    const double k4 = field(r + step, h + step * k3);
    h += step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    r += step;
    if (!(h > 0.0)) throw TrajectoryCrossing(r);
  }
  t.r.push_back(r);
  t.h.push_back(h);
  t.hprime.push_back(field(r, h));
  return t;
}

std::string Trajectory::to_csv(const FreqOpParams &params) const {
  std::string out = "r,h,hprime,Pvalue\n";
  char buf[160];
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", r[i], h[i],
                  hprime[i], eval_P(h[i], hprime[i], r[i], params));
    out += buf;
  }
  return out;
}

MaxPrincipleReport verify_max_principle(const Trajectory &h,
                                        const Trajectory &g,
                                        const FreqOpParams &params, double eps,
                                        double tol) {
  if (h.r != g.r)
    throw std::invalid_argument("verify_max_principle: trajectories must share a grid");
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double r = h.r[i];
    if (eval_P(h.h[i], h.hprime[i], r, params) < -tol)
      throw std::runtime_error("verify_max_principle: P h >= 0 fails at r = " +
                               std::to_string(r));
    if (eval_P(g.h[i], g.hprime[i], r, params) > -eps / r + tol)
      throw std::runtime_error(
          "verify_max_principle: P g <= -eps/r fails at r = " +
          std::to_string(r));
  }
  MaxPrincipleReport rep;
  std::size_t lead = h.size();
  for (std::size_t i = 0; i < h.size(); ++i)
    if (h.h[i] > g.h[i]) {
      lead = i;
      break;
    }
  if (lead == h.size()) return rep; // never overtakes on this grid
  rep.first_lead = h.r[lead];
  rep.ordered_after = true;
  for (std::size_t i = lead; i < h.size(); ++i)
    if (!(h.h[i] > g.h[i])) rep.ordered_after = false;

  if (params.lambda <= 0.0 && h.h[0] < g.h[0]) {
    const double r1 = h.r[0];
    rep.predicted_bound = r1 * std::pow(g.h[0] / h.h[0], 1.0 / eps);
    const double grid_step =
        h.size() > 1 ? h.r[1] - h.r[0] : 0.0;
    rep.within_predicted = rep.first_lead <= rep.predicted_bound + grid_step;
  } else {
    rep.predicted_bound = rep.first_lead;
    rep.within_predicted = true;
  }
  return rep;
}

PositiveLambdaReport verify_positive_lambda(const Trajectory &h,
                                            const FreqOpParams &params,
                                            double delta, double eps) {
  if (!(params.lambda > 0.0))
    throw std::invalid_argument("verify_positive_lambda: lambda > 0 required");
  if (!(delta > 0.0))
    throw std::invalid_argument("verify_positive_lambda: delta > 0 required");
  const double lam = params.lambda;
  const int n = params.n;
  PositiveLambdaReport rep;

  std::size_t i2 = h.size();
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double r = h.r[i];
    if ((2.0 - n) / r + r / 2.0 - r * lam / (delta + 2.0 * lam) >
        std::sqrt(lam)) {
      i2 = i;
      break;
    }
  }
  if (i2 == h.size()) return rep;
  rep.r2 = h.r[i2];

  std::size_t is = h.size();
  for (std::size_t i = i2; i < h.size(); ++i)
    if (h.h[i] > 2.0 * lam + delta) {
      is = i;
      break;
    }
  if (is == h.size()) return rep;

  auto bound = [&](double r) { return r * r / 2.0 - n - 2.0 * lam - eps; };
  std::size_t last_below = is;
  bool any_below = false;
  for (std::size_t i = is; i < h.size(); ++i)
    if (h.h[i] < bound(h.r[i])) {
      last_below = i;
      any_below = true;
    }
  const std::size_t tail = any_below ? last_below + 1 : is;
  if (tail >= h.size() || h.r.back() - h.r[tail] < 1.0) return rep;
  rep.conclusive = true;
  rep.escape_R = h.r[tail];
  double min_margin = HUGE_VAL;
  for (std::size_t i = tail; i < h.size(); ++i)
    min_margin = std::min(min_margin, h.h[i] - bound(h.r[i]));
  rep.min_margin = min_margin;
  return rep;
}

} // namespace oufreq
