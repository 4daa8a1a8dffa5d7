#include "oufreq/frequency.hpp"

#include "oufreq/parallel.hpp"
#include "oufreq/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace oufreq {

LogReal LogAccumulator::sum() const {
  if (terms_.empty()) return LogReal::zero();
  double peak = terms_[0].logmag;
  for (const auto &t : terms_) peak = std::max(peak, t.logmag);
  double acc = 0.0;
  for (const auto &t : terms_) acc += t.sign * std::exp(t.logmag - peak);
  if (acc == 0.0) return LogReal::zero();
  return LogReal::from_log(acc > 0.0 ? 1 : -1, peak + std::log(std::fabs(acc)));
}

SphereNodeCounts default_sphere_nodes(double r) {
  int az = std::max(32, static_cast<int>(std::ceil(r * r / 2.0)) + 32);
  if (az % 2) ++az;
  // polar Gauss must resolve e^{(r^2/2) cos^2} peaking from squared
  // exponential-branch factors sitting on the axis
  const int polar = std::max(16, static_cast<int>(std::ceil(r * r / 2.0)) + 16);
  return {az, polar};
}

namespace {

using Density =
    std::function<LogReal(const FieldPoint &, std::span<const double>)>;

// One pass over the sphere; every density sees the same field evaluation.
std::vector<LogReal> sphere_integrals(const EvaluableField &v, double r,
                                      const std::vector<Density> &densities,
                                      SphereNodeCounts m) {
  const int n = v.n;
  std::vector<LogAccumulator> acc(densities.size());
  auto visit = [&](std::span<const double> x, double weight) {
    const FieldPoint pt = v.eval(x);
    const double logw = std::log(weight);
    for (std::size_t d = 0; d < densities.size(); ++d) {
      LogReal val = densities[d](pt, x);
      if (val.sign != 0) acc[d].push(LogReal::from_log(val.sign, val.logmag + logw));
    }
  };
  if (n == 1) {
    const double xs[2] = {r, -r};
    for (double x : xs) visit(std::span<const double>(&x, 1), 1.0);
  } else if (n == 2) {
    const double pi = std::acos(-1.0);
    const double w = 2.0 * pi * r / m.azimuth;
    for (int j = 0; j < m.azimuth; ++j) {
      const double th = 2.0 * pi * j / m.azimuth;
      const double x[2] = {r * std::cos(th), r * std::sin(th)};
      visit(std::span<const double>(x, 2), w);
    }
  } else if (n == 3) {
    // polar axis along x_1, where product eigenfunctions peak
    const double pi = std::acos(-1.0);
    QuadratureRule cos_rule = gauss_rule(m.polar, -1.0, 1.0);
    for (std::size_t i = 0; i < cos_rule.size(); ++i) {
      const double c = cos_rule.nodes[i];
      const double rho = std::sqrt(std::max(0.0, 1.0 - c * c));
      const double w = r * r * cos_rule.weights[i] * 2.0 * pi / m.azimuth;
      for (int j = 0; j < m.azimuth; ++j) {
        const double ph = 2.0 * pi * j / m.azimuth;
        const double x[3] = {r * c, r * rho * std::cos(ph), r * rho * std::sin(ph)};
        visit(std::span<const double>(x, 3), w);
      }
    }
  } else {
    throw std::invalid_argument("sphere integrals: dimension must be 1, 2 or 3");
  }
  std::vector<LogReal> out(densities.size());
  for (std::size_t d = 0; d < densities.size(); ++d) out[d] = acc[d].sum();
  return out;
}

std::vector<LogReal> bulk_integrals(const EvaluableField &v, double r,
                                    const std::vector<Density> &densities,
                                    int radial_nodes_per_unit) {
  // shells via composite Gauss in radius; integrand varies on scale 1/s
  const double panel = 0.25;
  const int per_panel = std::max(2, static_cast<int>(panel * radial_nodes_per_unit));
  const int panels = std::max(1, static_cast<int>(std::ceil(r / panel)));
  std::vector<double> nodes, logw;
  for (int p = 0; p < panels; ++p) {
    const double a = r * p / panels, b = r * (p + 1) / panels;
    QuadratureRule rule = gauss_rule(per_panel, a, b);
    for (std::size_t i = 0; i < rule.size(); ++i) {
      nodes.push_back(rule.nodes[i]);
      logw.push_back(std::log(rule.weights[i]) - rule.nodes[i] * rule.nodes[i] / 4.0);
    }
  }
  std::vector<std::vector<LogReal>> shells(nodes.size());
  parallel_for(nodes.size(), [&](std::size_t i) {
    shells[i] = sphere_integrals(v, nodes[i], densities,
                                 default_sphere_nodes(nodes[i]));
  });
  // fixed-order reduction after the parallel map
  std::vector<LogAccumulator> acc(densities.size());
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t d = 0; d < densities.size(); ++d)
      if (shells[i][d].sign != 0)
        acc[d].push(LogReal::from_log(shells[i][d].sign,
                                      shells[i][d].logmag + logw[i]));
  std::vector<LogReal> out(densities.size());
  for (std::size_t d = 0; d < densities.size(); ++d) out[d] = acc[d].sum();
  return out;
}

LogReal density_value_sq(const FieldPoint &pt, std::span<const double>) {
  return lr_sq(pt.value);
}

LogReal radial_derivative(const FieldPoint &pt, std::span<const double> x) {
  double s2 = 0.0;
  for (double xi : x) s2 += xi * xi;
  const double s = std::sqrt(s2);
  LogReal ur = LogReal::zero();
  for (std::size_t i = 0; i < x.size(); ++i)
    ur = lr_add(ur, lr_scale(pt.grad[i], x[i] / s));
  return ur;
}

LogReal density_u_ur(const FieldPoint &pt, std::span<const double> x) {
  return lr_mul(pt.value, radial_derivative(pt, x));
}

LogReal density_ur_sq(const FieldPoint &pt, std::span<const double> x) {
  return lr_sq(radial_derivative(pt, x));
}

LogReal density_grad_sq(const FieldPoint &pt, std::span<const double>) {
  LogReal g = LogReal::zero();
  for (const auto &gi : pt.grad) g = lr_add(g, lr_sq(gi));
  return g;
}

Density density_dirichlet(double V) {
  return [V](const FieldPoint &pt, std::span<const double> x) {
    return lr_sub(density_grad_sq(pt, x), lr_scale(density_value_sq(pt, x), V));
  };
}

LogReal scale_power(const LogReal &v, double r, double power) {
  if (v.sign == 0 || power == 0.0) return v;
  return LogReal::from_log(v.sign, v.logmag + power * std::log(r));
}

} // namespace

LogReal sphere_integral(const std::function<LogReal(std::span<const double>)> &g,
                        double r, int n, SphereNodeCounts m) {
  // route the plain scalar field through the fused machinery
  EvaluableField wrapper;
  wrapper.n = n;
  wrapper.eval = [&g, n](std::span<const double> x) {
    FieldPoint pt;
    pt.value = g(x);
    pt.grad.assign(n, LogReal::zero());
    return pt;
  };
  const Density identity = [](const FieldPoint &pt, std::span<const double>) {
    return pt.value;
  };
  return sphere_integrals(wrapper, r, {identity}, m)[0];
}

LogReal sphere_integral(const std::function<LogReal(std::span<const double>)> &g,
                        double r, int n) {
  return sphere_integral(g, r, n, default_sphere_nodes(r));
}

LogReal compute_I(const EvaluableField &v, double r, SphereNodeCounts m) {
  const LogReal raw = sphere_integrals(v, r, {density_value_sq}, m)[0];
  return scale_power(raw, r, 1.0 - v.n);
}

LogReal compute_I(const EvaluableField &v, double r) {
  return compute_I(v, r, default_sphere_nodes(r));
}

LogReal compute_D(const EvaluableField &v, double r, DMode mode,
                  SphereNodeCounts m, int radial_nodes_per_unit) {
  if (mode == DMode::Boundary) {
    const LogReal raw = sphere_integrals(v, r, {density_u_ur}, m)[0];
    return scale_power(raw, r, 2.0 - v.n);
  }
  if (!v.has_potential)
    throw std::logic_error("compute_D: bulk mode needs a declared potential");
  const LogReal raw =
      bulk_integrals(v, r, {density_dirichlet(v.potential)},
                     radial_nodes_per_unit)[0];
  LogReal out = scale_power(raw, r, 2.0 - v.n);
  if (out.sign != 0) out.logmag += r * r / 4.0;
  return out;
}

LogReal compute_D(const EvaluableField &v, double r, DMode mode) {
  return compute_D(v, r, mode, default_sphere_nodes(r), 32);
}

LogReal bulk_integral(
    const std::function<LogReal(const FieldPoint &, std::span<const double>)>
        &density,
    const EvaluableField &v, double r, SphereNodeCounts,
    int radial_nodes_per_unit) {
  return bulk_integrals(v, r, {density}, radial_nodes_per_unit)[0];
}

std::vector<double> make_grid(double r_min, double r_max, double step) {
  std::vector<double> g;
  for (double r = r_min; r <= r_max + 1e-12; r += step) g.push_back(r);
  return g;
}

FrequencyCurve compute_curve(const EvaluableField &v,
                             const std::vector<double> &r_grid) {
  FrequencyCurve c;
  c.r = r_grid;
  const std::size_t N = r_grid.size();
  c.I.resize(N);
  c.D.resize(N);
  c.U.resize(N);
  c.W.resize(N);
  c.margin.assign(N, 0.0);
  const std::vector<Density> both = {density_value_sq, density_u_ur};
  std::vector<int> nodal(N, 0);
  parallel_for(N, [&](std::size_t i) {
    const double r = r_grid[i];
    const auto vals = sphere_integrals(v, r, both, default_sphere_nodes(r));
    c.I[i] = scale_power(vals[0], r, 1.0 - v.n);
    c.D[i] = scale_power(vals[1], r, 2.0 - v.n);
    if (c.I[i].sign <= 0) {
      nodal[i] = 1;
      return;
    }
    c.U[i] = lr_div(c.D[i], c.I[i]).to_double();
    c.W[i] = c.U[i] - r * r / 4.0 + v.n / 2.0;
  });
  for (std::size_t i = 0; i < N; ++i)
    if (nodal[i]) throw NodalSphereError(r_grid[i]);
  c.Uprime.resize(N);
  for (std::size_t i = 0; i < N; ++i) {
    if (i == 0)
      c.Uprime[i] = (c.U[1] - c.U[0]) / (r_grid[1] - r_grid[0]);
    else if (i + 1 == N)
      c.Uprime[i] = (c.U[N - 1] - c.U[N - 2]) / (r_grid[N - 1] - r_grid[N - 2]);
    else
      c.Uprime[i] = (c.U[i + 1] - c.U[i - 1]) / (r_grid[i + 1] - r_grid[i - 1]);
  }
  return c;
}

std::string FrequencyCurve::to_csv() const {
  std::string out = "r,logI,logD,U,Uprime,W,margin\n";
  char buf[256];
  for (std::size_t i = 0; i < r.size(); ++i) {
    // logI/logD columns carry log|.|; the sign of D is visible through U
    const double li = I[i].sign == 0 ? -HUGE_VAL : I[i].logmag;
    const double ld = D[i].sign == 0 ? -HUGE_VAL : D[i].logmag;
    std::snprintf(buf, sizeof(buf),
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r[i], li, ld,
                  U[i], Uprime[i], W[i], margin[i]);
    out += buf;
  }
  return out;
}

RellichResult rellich_check(const EvaluableField &v, double V, double r) {
  const int n = v.n;
  const auto m = default_sphere_nodes(r);
  const std::vector<Density> boundary = {density_ur_sq, density_grad_sq,
                                         density_value_sq, density_u_ur};
  const auto b = sphere_integrals(v, r, boundary, m);
  const LogReal ur2 = b[0], grad2 = b[1], u2 = b[2];

  const std::vector<Density> bulk = {
      density_grad_sq,
      [](const FieldPoint &pt, std::span<const double> x) {
        double s2 = 0.0;
        for (double xi : x) s2 += xi * xi;
        return lr_scale(density_grad_sq(pt, x), s2 / 4.0);
      },
      [n](const FieldPoint &pt, std::span<const double> x) {
        double s2 = 0.0;
        for (double xi : x) s2 += xi * xi;
        return lr_scale(density_value_sq(pt, x), n / 2.0 - s2 / 4.0);
      },
      [V](const FieldPoint &pt, std::span<const double> x) {
        double s2 = 0.0;
        for (double xi : x) s2 += xi * xi;
        return lr_scale(density_dirichlet(V)(pt, x), s2 / 4.0);
      }};
  auto bk = bulk_integrals(v, r, bulk, 32);
  const double ef = r * r / 4.0;
  auto weighted = [ef](LogReal x) {
    if (x.sign != 0) x.logmag += ef;
    return x;
  };
  const LogReal grad_f = weighted(bk[0]);   // e^f \int |grad u|^2 e^{-f}
  const LogReal gradf_f = weighted(bk[1]);  // e^f \int |grad u|^2 f e^{-f}
  const LogReal u2nf = weighted(bk[2]);     // e^f \int u^2 (n/2 - f) e^{-f}
  const LogReal dir_f = weighted(bk[3]);    // e^f \int (|grad u|^2 - V u^2) f e^{-f}

  RellichResult res;
  res.lhs = lr_sub(lr_scale(ur2, 2.0 * r),
                   lr_scale(lr_sub(grad2, lr_scale(u2, V)), r));
  res.rhs = lr_add(lr_scale(grad_f, 2.0 - n),
                   lr_add(lr_scale(gradf_f, 2.0), lr_scale(u2nf, 2.0 * V)));

  const LogReal I = compute_I(v, r, m);
  const LogReal D = scale_power(b[3], r, 2.0 - v.n);
  res.combine_lhs = scale_power(dir_f, r, 1.0 - n);
  res.combine_rhs = lr_add(lr_scale(lr_sub(D, I), r / 4.0),
                           lr_scale(scale_power(u2nf, r, 1.0 - n), 0.5));
  return res;
}

GrowthReport verify_growth_field(const EvaluableField &v, double lambda,
                                 double eps, double delta,
                                 const std::vector<double> &grid) {
  const FrequencyCurve c = compute_curve(v, grid);
  const int n = v.n;
  const double threshold = delta + 2.0 * std::max(0.0, lambda);
  GrowthReport rep;
  rep.max_U = *std::max_element(c.U.begin(), c.U.end());

  std::size_t cross = c.size();
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c.U[i] >= threshold) {
      cross = i;
      break;
    }
  if (cross == c.size()) {
    // never reaches the threshold; call it the bounded branch only if the
    // tail has settled
    const std::size_t q = 3 * c.size() / 4;
    const double drift = std::fabs(c.U.back() - c.U[q]);
    rep.branch = drift <= 0.05 ? GrowthBranch::Bounded : GrowthBranch::Inconclusive;
    return rep;
  }
  rep.crossing_radius = c.r[cross];

  auto bound = [&](double r) {
    return r * r / 2.0 - n - 2.0 * lambda - eps;
  };
  std::size_t last_below = 0;
  bool any_below = false;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c.U[i] <= bound(c.r[i])) {
      last_below = i;
      any_below = true;
    }
  const std::size_t tail_start = any_below ? last_below + 1 : 0;
  if (tail_start >= c.size() || c.r.back() - c.r[tail_start] < 1.0) {
    rep.branch = GrowthBranch::Inconclusive;
    return rep;
  }
  rep.branch = GrowthBranch::Unbounded;
  rep.R_meas = c.r[tail_start];
  double min_margin = HUGE_VAL;
  for (std::size_t i = tail_start; i < c.size(); ++i)
    min_margin = std::min(min_margin, c.U[i] - bound(c.r[i]));
  rep.min_margin = min_margin;
  return rep;
}

GrowthReport verify_growth(const ProductEigenfunction &v, double eps,
                           double delta, double r_max, double r_step) {
  return verify_growth_field(v.as_field(), v.lambda(), eps, delta,
                             make_grid(0.5, r_max, r_step));
}

double radial_growing_U(int k, int n, double r) {
  if (!(r >= 6.0)) throw std::invalid_argument("radial_growing_U: r >= 6 required");
  // Integrate the linear radial equation
  //   u'' + ((n-1)/s - s/2) u' + (k/2) u = 0
  // from a generic start.  The growing branch dominates any admixture of the
  // decaying one by a factor ~ e^{s^2/4}, so u'/u at r >= 6 carries the
  // growing solution's frequency to far below the tolerances used here.
  // (A Riccati form would hit poles at the zeros of u inside the oscillatory
  // region s^2 < 2k + O(n); the linear form passes straight through them.)
  auto deriv = [&](double s, double u, double v, double &du, double &dv) {
    du = v;
    dv = (s / 2.0 - (n - 1.0) / s) * v - 0.5 * k * u;
  };
  double s = 0.5, u = 1.0, v = 1.0;
  const double hbase = 1e-3;
  while (s < r - 1e-12) {
    const double h = std::min(hbase, r - s);
    double k1u, k1v, k2u, k2v, k3u, k3v, k4u, k4v;
    deriv(s, u, v, k1u, k1v);
    deriv(s + h / 2.0, u + h / 2.0 * k1u, v + h / 2.0 * k1v, k2u, k2v);
    deriv(s + h / 2.0, u + h / 2.0 * k2u, v + h / 2.0 * k2v, k3u, k3v);
    deriv(s + h, u + h * k3u, v + h * k3v, k4u, k4v);
    u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
    v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    s += h;
    // only the ratio v/u matters; renormalize before doubles overflow
    const double m = std::max(std::fabs(u), std::fabs(v));
    if (m > 1e100) {
      u /= m;
      v /= m;
    }
  }
  return r * v / u;
}

SharpnessReport verify_sharpness(int k, int n, double eps,
                                 const std::vector<double> &r_list) {
  // n = 1: the solution ladder itself is extremal.  n >= 2: products of
  // 1-d solutions are not (spheres see the near-axis mass, and U tends to
  // r^2/2 - 3/2 independent of k), so the witness is the fastest-growing
  // radial eigenfunction, whose frequency is r^2/2 - n - k + O(r^{-2}).
  SharpnessReport rep;
  rep.all_hold = true;
  const EvaluableField v = ProductEigenfunction::v_k(k, 1).as_field();
  for (double r : r_list) {
    double U;
    if (n == 1) {
      const LogReal I = compute_I(v, r);
      if (I.sign <= 0) throw NodalSphereError(r);
      U = lr_div(compute_D(v, r, DMode::Boundary), I).to_double();
    } else {
      U = radial_growing_U(k, n, r);
    }
    const double margin = (r * r / 2.0 - n - k + eps) - U;
    rep.margins.push_back(margin);
    if (margin < 0.0) rep.all_hold = false;
  }
  return rep;
}

UprimeReport verify_uprime(const EvaluableField &v, double lambda,
                           const std::vector<double> &grid) {
  const FrequencyCurve c = compute_curve(v, grid);
  const int n = v.n;
  UprimeReport rep;
  const double maxU = *std::max_element(c.U.begin(), c.U.end());
  if (maxU <= 2.0 * std::fabs(lambda) + 1e-9) {
    rep.exempt = true;
    rep.conclusive = true;
    return rep;
  }
  // interior points only; the one-sided end differences are noisier
  const std::size_t lo = 1, hi = c.size() - 1;
  auto ok = [&](std::size_t i) {
    const double r = c.r[i], U = c.U[i];
    const double d1 = 2.0 * n + 4.0 + 4.0 * U - r * r;
    const double d2 = 2.0 * n + 4.0 * U - r * r;
    return d1 > 0.0 && d2 > 0.0 && c.Uprime[i] >= r / 2.0;
  };
  std::size_t start = hi;
  for (std::size_t i = hi; i-- > lo;) {
    if (!ok(i)) break;
    start = i;
  }
  if (start >= hi - 1) return rep; // no usable tail: inconclusive
  rep.R_meas = c.r[start];
  rep.conclusive = true;

  double min_half = HUGE_VAL;
  double C_hat = HUGE_VAL;
  std::vector<double> main_term(c.size()), coeff(c.size());
  for (std::size_t i = start; i < hi; ++i) {
    const double r = c.r[i], U = c.U[i];
    const double d1 = 2.0 * n + 4.0 + 4.0 * U - r * r;
    const double d2 = 2.0 * n + 4.0 * U - r * r;
    main_term[i] =
        r / 2.0 * (1.0 + r * r / d1 - (2.0 * n + 8.0 * lambda) / d2);
    coeff[i] = std::pow(r, 1.0 - n) / d2;
    min_half = std::min(min_half, c.Uprime[i] - r / 2.0);
    C_hat = std::min(C_hat, (c.Uprime[i] - main_term[i]) / coeff[i]);
  }
  rep.min_half_slack = min_half;
  rep.C_hat = C_hat;
  double min_full = HUGE_VAL;
  for (std::size_t i = start; i < hi; ++i)
    min_full = std::min(min_full, c.Uprime[i] - main_term[i] - C_hat * coeff[i]);
  rep.min_full_slack = min_full;
  return rep;
}

MonotonicityReport monotonicity_check(const EvaluableField &v,
                                      const std::vector<double> &grid) {
  if (!v.has_potential || v.potential != 0.0)
    throw std::invalid_argument("monotonicity_check: requires declared V == 0");
  const FrequencyCurve c = compute_curve(v, grid);
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c.U[i] <= 0.0)
      throw std::invalid_argument(
          "monotonicity_check: U = 0 (radially constant input) at r = " +
          std::to_string(c.r[i]));
  MonotonicityReport rep;
  double min_slope = HUGE_VAL;
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    const double slope = (std::log(c.U[i + 1]) - std::log(c.U[i])) /
                         (c.r[i + 1] - c.r[i]);
    min_slope = std::min(min_slope, slope);
  }
  rep.min_logU_slope = min_slope;
  rep.holds = min_slope >= -1e-6;
  return rep;
}

} // namespace oufreq
