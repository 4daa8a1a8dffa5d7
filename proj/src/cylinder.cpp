#include "oufreq/cylinder.hpp"

#include "oufreq/frequency.hpp"
#include "oufreq/quadrature.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace oufreq {

namespace {

struct PreparedMode {
  int m;
  SymbolicFunction c, dc, ddc;
  SymbolicFunction s, ds, dds;
};

std::vector<PreparedMode> prepare(const CylinderFunction &v) {
  std::vector<PreparedMode> out;
  out.reserve(v.modes.size());
  for (const auto &mode : v.modes) {
    PreparedMode p;
    p.m = mode.m;
    p.c = mode.c;
    p.dc = differentiate(mode.c);
    p.ddc = differentiate(p.dc);
    p.s = mode.s;
    p.ds = differentiate(mode.s);
    p.dds = differentiate(p.ds);
    out.push_back(std::move(p));
  }
  return out;
}

constexpr double kPi = 3.14159265358979323846;

// \int_theta v^2
LogReal theta_v2(const std::vector<PreparedMode> &modes, double x) {
  LogAccumulator acc;
  for (const auto &p : modes) {
    const double w = p.m == 0 ? 2.0 * kPi : kPi;
    acc.push(lr_scale(lr_sq(symbolic_eval(p.c, x)), w));
    if (p.m != 0) acc.push(lr_scale(lr_sq(symbolic_eval(p.s, x)), w));
  }
  return acc.sum();
}

// \int_theta v dv/dx
LogReal theta_v_vx(const std::vector<PreparedMode> &modes, double x) {
  LogAccumulator acc;
  for (const auto &p : modes) {
    const double w = p.m == 0 ? 2.0 * kPi : kPi;
    acc.push(lr_scale(lr_mul(symbolic_eval(p.c, x), symbolic_eval(p.dc, x)), w));
    if (p.m != 0)
      acc.push(lr_scale(lr_mul(symbolic_eval(p.s, x), symbolic_eval(p.ds, x)), w));
  }
  return acc.sum();
}

// \int_theta |grad v|^2 = \int_theta (dv/dtheta)^2 + (dv/dx)^2
LogReal theta_grad2(const std::vector<PreparedMode> &modes, double x) {
  LogAccumulator acc;
  for (const auto &p : modes) {
    const double w = p.m == 0 ? 2.0 * kPi : kPi;
    acc.push(lr_scale(lr_sq(symbolic_eval(p.dc, x)), w));
    if (p.m != 0) {
      acc.push(lr_scale(lr_sq(symbolic_eval(p.ds, x)), w));
      const double m2 = static_cast<double>(p.m) * p.m;
      acc.push(lr_scale(lr_sq(symbolic_eval(p.c, x)), w * m2));
      acc.push(lr_scale(lr_sq(symbolic_eval(p.s, x)), w * m2));
    }
  }
  return acc.sum();
}

// \int_{-b}^{b} g(x) e^{-x^2/4} dx, composite Gauss in the log domain
LogReal radial_integral(const std::function<LogReal(double)> &g, double b) {
  const int panels = std::max(2, static_cast<int>(std::ceil(2.0 * b / 0.25)));
  LogAccumulator acc;
  for (int p = 0; p < panels; ++p) {
    const double a0 = -b + 2.0 * b * p / panels;
    const double a1 = -b + 2.0 * b * (p + 1) / panels;
    QuadratureRule rule = gauss_rule(8, a0, a1);
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const double x = rule.nodes[i];
      LogReal val = g(x);
      if (val.sign != 0)
        acc.push(LogReal::from_log(
            val.sign, val.logmag + std::log(rule.weights[i]) - x * x / 4.0));
    }
  }
  return acc.sum();
}

} // namespace

CylinderFunction CylinderFunction::exact_eigenfunction() {
  CylinderFunction v;
  CylinderMode mode;
  mode.m = 0;
  mode.c = {RationalPoly(), RationalPoly::constant(1), RationalPoly()};
  v.modes.push_back(std::move(mode));
  return v;
}

LogReal cylinder_value(const CylinderFunction &v, double theta, double x) {
  LogAccumulator acc;
  for (const auto &mode : v.modes) {
    acc.push(lr_scale(symbolic_eval(mode.c, x), std::cos(mode.m * theta)));
    if (mode.m != 0)
      acc.push(lr_scale(symbolic_eval(mode.s, x), std::sin(mode.m * theta)));
  }
  return acc.sum();
}

double cylinder_Lv(const CylinderFunction &v, double theta, double x) {
  // L = Delta_N + L_R: each mode picks up -m^2 from the circle
  const auto modes = prepare(v);
  double out = 0.0;
  for (const auto &p : modes) {
    const double lc = symbolic_eval(p.ddc, x).to_double() -
                      x / 2.0 * symbolic_eval(p.dc, x).to_double() -
                      p.m * p.m * symbolic_eval(p.c, x).to_double();
    out += lc * std::cos(p.m * theta);
    if (p.m != 0) {
      const double ls = symbolic_eval(p.dds, x).to_double() -
                        x / 2.0 * symbolic_eval(p.ds, x).to_double() -
                        p.m * p.m * symbolic_eval(p.s, x).to_double();
      out += ls * std::sin(p.m * theta);
    }
  }
  return out;
}

CylinderQuantities compute_E_UE(const CylinderFunction &v, double r) {
  if (v.n != 1)
    throw std::invalid_argument("compute_E_UE: only n = 1 is supported");
  const auto modes = prepare(v);
  CylinderQuantities q;
  q.I = lr_add(theta_v2(modes, r), theta_v2(modes, -r));
  if (q.I.sign <= 0) throw NodalSphereError(r);
  q.D = lr_scale(lr_sub(theta_v_vx(modes, r), theta_v_vx(modes, -r)), r);

  const LogReal dirichlet = radial_integral(
      [&](double x) {
        return lr_add(theta_grad2(modes, x), lr_scale(theta_v2(modes, x), 0.5));
      },
      r);
  q.E = lr_scale(dirichlet, r); // r^{2-n} with n = 1
  if (q.E.sign != 0) q.E.logmag += r * r / 4.0;

  // structural positivity: E dominates the weighted v^2 mass
  LogReal v2_half = radial_integral(
      [&](double x) { return lr_scale(theta_v2(modes, x), 0.5); }, r);
  v2_half = lr_scale(v2_half, r);
  if (v2_half.sign != 0) v2_half.logmag += r * r / 4.0;
  if (lr_less(q.E, v2_half))
    throw std::logic_error("compute_E_UE: E below its v^2 floor");

  q.U = lr_div(q.D, q.I).to_double();
  q.U_E = lr_div(q.E, q.I).to_double();
  return q;
}

DiffIneqReport check_diffineq(const CylinderFunction &v,
                              const std::vector<double> &r_grid) {
  std::vector<CylinderQuantities> qs;
  qs.reserve(r_grid.size());
  for (double r : r_grid) qs.push_back(compute_E_UE(v, r));
  DiffIneqReport rep;
  double min_slack = HUGE_VAL;
  for (std::size_t i = 1; i + 1 < r_grid.size(); ++i) {
    const double dlogUE = (std::log(qs[i + 1].U_E) - std::log(qs[i - 1].U_E)) /
                          (r_grid[i + 1] - r_grid[i - 1]);
    const double r = r_grid[i];
    const double DE = lr_div(qs[i].D, qs[i].E).to_double();
    const double rhs = (2.0 - v.n) / r + r / 2.0 + r / (2.0 * qs[i].U_E) +
                       qs[i].U / r * (DE - 2.0);
    min_slack = std::min(min_slack, dlogUE - rhs);
  }
  rep.min_slack = min_slack;
  rep.holds = min_slack >= -1e-4;
  return rep;
}

double diffineq_rhs(const CylinderFunction &v, double r) {
  const CylinderQuantities q = compute_E_UE(v, r);
  const double n = v.n;
  return (2.0 - n) / r + r / 2.0 + r / (2.0 * q.U_E) +
         (q.U / r) * (lr_div(q.D, q.E).to_double() - 2.0);
}

GoalReport goal_quantities(const CylinderFunction &v, double eps, double Lambda,
                           double R) {
  const auto modes = prepare(v);
  const double ball = 4.0 * v.n;
  GoalReport rep;
  rep.lhs =
      radial_integral([&](double x) { return theta_v2(modes, x); }, ball)
          .to_double();
  const LogReal I_R = lr_add(theta_v2(modes, R), theta_v2(modes, -R));
  const double expo = (1.0 - eps - Lambda) * R * R /
                      (2.0 * (1.0 + eps + Lambda) * (1.0 + eps + Lambda));
  LogReal decay = I_R;
  if (decay.sign != 0)
    decay.logmag += 2.0 * v.n * std::log(R) - expo;
  rep.decay_term = decay.to_double();
  return rep;
}

GoalReport verify_goal(const CylinderFunction &v, double psi_norm_sq,
                       double eps, double Lambda, double R, double C_hat,
                       const std::function<double(double, double)> &psi_sq) {
  if (!(Lambda > 0.0 && Lambda < 0.5))
    throw std::invalid_argument("verify_goal: Lambda in (0, 1/2) required");
  if (!(eps < 0.5)) throw std::invalid_argument("verify_goal: eps < 1/2 required");

  // condition (1) on a 64 x radial lattice
  const auto modes = prepare(v);
  const int n_theta = 64;
  for (double x = -R; x <= R + 1e-12; x += 0.05) {
    for (int j = 0; j < n_theta; ++j) {
      const double theta = 2.0 * kPi * j / n_theta;
      const double val = cylinder_value(v, theta, x).to_double();
      double vx = 0.0, vth = 0.0;
      for (const auto &p : modes) {
        vx += symbolic_eval(p.dc, x).to_double() * std::cos(p.m * theta);
        vth += -p.m * symbolic_eval(p.c, x).to_double() * std::sin(p.m * theta);
        if (p.m != 0) {
          vx += symbolic_eval(p.ds, x).to_double() * std::sin(p.m * theta);
          vth += p.m * symbolic_eval(p.s, x).to_double() * std::cos(p.m * theta);
        }
      }
      const double grad2 = vx * vx + vth * vth;
      const double resid = std::fabs(-0.5 * val * val + val * cylinder_Lv(v, theta, x));
      const double budget = (psi_sq ? psi_sq(theta, x) : 0.0) +
                            eps * (val * val / 2.0 + grad2);
      if (resid > budget + 1e-12)
        throw std::runtime_error(
            "verify_goal: condition (1) fails at theta = " + std::to_string(theta) +
            ", x = " + std::to_string(x));
    }
  }

  GoalReport rep = goal_quantities(v, eps, Lambda, R);
  rep.budget = 2.0 / Lambda * psi_norm_sq;
  rep.rhs = rep.budget + C_hat * rep.decay_term;
  rep.holds = rep.lhs <= rep.rhs;

  // intermediate chain on [4n, R]
  const double denom = 2.0 * (1.0 + eps + Lambda) * (1.0 + eps + Lambda);
  std::vector<double> grid = make_grid(4.0 * v.n, R, 0.1);
  std::size_t ok_from = grid.size();
  for (std::size_t i = grid.size(); i-- > 0;) {
    const CylinderQuantities q = compute_E_UE(v, grid[i]);
    const bool close = std::fabs(q.U - q.U_E) <= (eps + Lambda) * q.U_E + 1e-9;
    const bool above = q.U_E > (grid[i] * grid[i] - 2.0 * v.n) / denom;
    if (!(close && above)) break;
    ok_from = i;
  }
  rep.chain_ok = ok_from < grid.size();
  rep.chain_radius = rep.chain_ok ? grid[ok_from] : 0.0;
  return rep;
}

std::string cylinder_curve_csv(const CylinderFunction &v,
                               const std::vector<double> &r_grid) {
  std::string out = "r,logI,logD,U,Uprime,W,margin,E_log,UE\n";
  std::vector<CylinderQuantities> qs;
  qs.reserve(r_grid.size());
  for (double r : r_grid) qs.push_back(compute_E_UE(v, r));
  char buf[320];
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    double up;
    if (i == 0)
      up = (qs[1].U - qs[0].U) / (r_grid[1] - r_grid[0]);
    else if (i + 1 == r_grid.size())
      up = (qs[i].U - qs[i - 1].U) / (r_grid[i] - r_grid[i - 1]);
    else
      up = (qs[i + 1].U - qs[i - 1].U) / (r_grid[i + 1] - r_grid[i - 1]);
    const double r = r_grid[i];
    const double W = qs[i].U - r * r / 4.0 + v.n / 2.0;
    std::snprintf(buf, sizeof(buf),
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r,
                  qs[i].I.logmag, qs[i].D.sign == 0 ? -HUGE_VAL : qs[i].D.logmag,
                  qs[i].U, up, W, 0.0,
                  qs[i].E.sign == 0 ? -HUGE_VAL : qs[i].E.logmag, qs[i].U_E);
    out += buf;
  }
  return out;
}

} // namespace oufreq
