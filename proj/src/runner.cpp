#include "oufreq/runner.hpp"

#include "oufreq/comparison.hpp"
#include "oufreq/cylinder.hpp"
#include "oufreq/field.hpp"
#include "oufreq/frequency.hpp"
#include "oufreq/ladder.hpp"
#include "oufreq/quadrature.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace oufreq {

namespace {

using nlohmann::json;

struct Check {
  std::string name;
  bool pass = false;
  double margin = 0.0;
  json detail;
};

json checks_to_json(const RunConfig &cfg, const std::vector<Check> &checks) {
  json out;
  out["command"] = cfg.command;
  json params;
  params["n"] = cfg.n;
  params["levels"] = cfg.levels;
  params["eps"] = cfg.eps;
  params["delta"] = cfg.delta;
  params["lambda"] = cfg.lambda;
  params["r_max"] = cfg.r_max;
  out["params"] = params;
  bool all = true;
  json arr = json::array();
  for (const auto &c : checks) {
    json j;
    j["name"] = c.name;
    j["pass"] = c.pass;
    j["margin"] = c.margin;
    if (!c.detail.is_null()) j["detail"] = c.detail;
    arr.push_back(j);
    all = all && c.pass;
  }
  out["checks"] = arr;
  out["pass"] = all;
  return out;
}

void emit(const RunConfig &cfg, const std::string &content) {
  if (cfg.out.empty())
    std::cout << content;
  else
    write_file_atomic(cfg.out, content);
}

int finish(const RunConfig &cfg, const std::vector<Check> &checks) {
  const json j = checks_to_json(cfg, checks);
  emit(cfg, j.dump(2) + "\n");
  return j["pass"].get<bool>() ? 0 : 1;
}

ProductEigenfunction family_from(const RunConfig &cfg) {
  std::vector<int> levels = cfg.levels;
  if (levels.size() == 1 && cfg.n > 1) {
    levels.resize(cfg.n, 0);
  }
  if (static_cast<int>(levels.size()) != cfg.n)
    throw std::invalid_argument("levels must list one ladder index per dimension");
  std::vector<LadderFunction> fs;
  fs.reserve(levels.size());
  for (int k : levels) fs.push_back(ladder_build(k));
  return ProductEigenfunction::from_factors(std::move(fs));
}

int run_ladder(const RunConfig &cfg) {
  const LadderFunction F = ladder_build(cfg.k);
  emit(cfg, ladder_to_json(F) + "\n");
  return 0;
}

int run_freq(const RunConfig &cfg) {
  const ProductEigenfunction v = family_from(cfg);
  const EvaluableField field = v.as_field();
  const FrequencyCurve curve = compute_curve(field, make_grid(cfg.r_min, cfg.r_max, cfg.r_step));
  if (cfg.format == "json") {
    json j;
    j["r"] = curve.r;
    std::vector<double> logI, logD;
    for (std::size_t i = 0; i < curve.size(); ++i) {
      logI.push_back(curve.I[i].sign == 0 ? -HUGE_VAL : curve.I[i].logmag);
      logD.push_back(curve.D[i].sign == 0 ? -HUGE_VAL : curve.D[i].logmag);
    }
    j["logI"] = logI;
    j["logD"] = logD;
    j["U"] = curve.U;
    j["Uprime"] = curve.Uprime;
    j["W"] = curve.W;
    j["margin"] = curve.margin;
    emit(cfg, j.dump(2) + "\n");
  } else {
    emit(cfg, curve.to_csv());
  }
  return 0;
}

int run_verify(const RunConfig &cfg) {
  const ProductEigenfunction v = family_from(cfg);
  const EvaluableField field = v.as_field();
  const double lambda = v.lambda();
  const bool all = cfg.suite == "all";
  std::vector<Check> checks;

  if (all || cfg.suite == "growth") {
    const GrowthReport rep = verify_growth(v, cfg.eps, cfg.delta, cfg.r_max);
    Check c{"growth_dichotomy", false, rep.min_margin, {}};
    const char *branch = rep.branch == GrowthBranch::Unbounded  ? "unbounded"
                         : rep.branch == GrowthBranch::Bounded ? "bounded"
                                                               : "inconclusive";
    c.detail = {{"branch", branch},
                {"crossing_radius", rep.crossing_radius},
                {"R_meas", rep.R_meas},
                {"max_U", rep.max_U}};
    if (rep.branch == GrowthBranch::Bounded) {
      c.pass = true;
      c.margin = 0.0;
    } else if (rep.branch == GrowthBranch::Unbounded) {
      c.pass = rep.min_margin > 0.0;
    }
    checks.push_back(std::move(c));
  }

  const bool single_factor = [&] {
    for (std::size_t i = 1; i < v.levels.size(); ++i)
      if (v.levels[i] != 0) return false;
    return true;
  }();

  if ((all || cfg.suite == "sharpness") && single_factor && v.levels[0] > 0) {
    std::vector<double> radii;
    for (double r : {8.0, 10.0, 12.0})
      if (r <= cfg.r_max + 1e-12) radii.push_back(r);
    if (radii.empty()) radii.push_back(cfg.r_max);
    const SharpnessReport rep = verify_sharpness(v.levels[0], cfg.n, cfg.eps, radii);
    double m = HUGE_VAL;
    for (double x : rep.margins) m = std::min(m, x);
    checks.push_back({"sharpness", rep.all_hold, m, json{{"radii", radii}}});
  }

  if (all || cfg.suite == "uprime") {
    const UprimeReport rep =
        verify_uprime(field, lambda, make_grid(std::max(cfg.r_min, 0.5),
                                               std::min(cfg.r_max, 16.0), 0.05));
    Check c{"uprime_lower_bound", false, 0.0, {}};
    c.detail = {{"exempt", rep.exempt},
                {"R_meas", rep.R_meas},
                {"C_hat", rep.C_hat},
                {"min_half_slack", rep.min_half_slack}};
    if (rep.exempt) {
      c.pass = true;
    } else {
      c.pass = rep.conclusive && rep.min_half_slack >= 0.0 &&
               rep.min_full_slack >= -1e-9;
      c.margin = rep.min_full_slack;
    }
    checks.push_back(std::move(c));
  }

  if ((all && lambda == 0.0) || cfg.suite == "monotonicity") {
    if (lambda != 0.0)
      throw std::invalid_argument("monotonicity suite needs a drift-harmonic family");
    const MonotonicityReport rep = monotonicity_check(
        field, make_grid(std::max(cfg.r_min, 0.5), std::min(cfg.r_max, 12.0), 0.05));
    checks.push_back({"log_monotonicity", rep.holds, rep.min_logU_slope, {}});
  }

  if (checks.empty())
    throw std::invalid_argument("suite '" + cfg.suite + "' does not apply to this family");
  return finish(cfg, checks);
}

int run_compare(const RunConfig &cfg) {
  std::vector<Check> checks;
  const FreqOpParams params = FreqOpParams::gaussian(cfg.n, cfg.lambda);

  const ChoosegResult cg = chooseg_r1(cfg.n, cfg.eps, cfg.lambda);
  checks.push_back({"barrier_negativity", cg.max_P_excess <= 1e-9, -cg.max_P_excess,
                    json{{"r1", cg.r1}, {"positivity_radius", cg.positivity_radius}}});

  const auto g_of = [&](double r) {
    return r * r / 2.0 - cfg.n - cfg.eps - 2.0 * cfg.lambda;
  };
  const double r0 = std::max(cg.r1, cg.positivity_radius) + 0.1;
  const double h0 = g_of(r0) / 2.0;
  const double r_max = std::max(cfg.r_max, r0 + 4.0);

  try {
    const Trajectory h = integrate_extremal(params, r0, h0, r_max);
    const Trajectory g = Trajectory::from_function(
        g_of, [](double r) { return r; }, h.r);
    if (cfg.lambda <= 0.0) {
      // the barrier only satisfies P g <= -eps/(2r), so the maximum
      // principle applies with decay rate eps/2
      const MaxPrincipleReport rep =
          verify_max_principle(h, g, params, cfg.eps / 2.0);
      checks.push_back({"overtaking", rep.ordered_after && rep.within_predicted,
                        rep.predicted_bound - rep.first_lead,
                        json{{"first_lead", rep.first_lead},
                             {"predicted_bound", rep.predicted_bound}}});
    } else {
      const PositiveLambdaReport rep =
          verify_positive_lambda(h, params, cfg.delta, cfg.eps);
      checks.push_back({"positive_lambda_escape",
                        rep.conclusive && rep.min_margin >= 0.0, rep.min_margin,
                        json{{"r2", rep.r2}, {"escape_R", rep.escape_R}}});
    }
  } catch (const TrajectoryCrossing &ex) {
    checks.push_back({"trajectory_positive", false, -ex.radius,
                      json{{"crossing_radius", ex.radius}}});
  }
  return finish(cfg, checks);
}

// Perturbed model function e^{x^2/4} + a x cos(theta).
CylinderFunction perturbed_cylinder(const Rational &a) {
  CylinderFunction v;
  CylinderMode m0;
  m0.m = 0;
  m0.c.q = RationalPoly::constant(Rational(1));
  CylinderMode m1;
  m1.m = 1;
  m1.c.s = RationalPoly::monomial(1, a);
  v.modes = {m0, m1};
  return v;
}

double perturbed_psi_norm_sq(const CylinderFunction &v, double R, int n_theta) {
  // \int_{|x|<R} \int_theta |v L v - v^2/2| e^{-x^2/4}
  const QuadratureRule base = gauss_rule(8, 0.0, 1.0);
  double total = 0.0;
  const int panels = static_cast<int>(std::ceil(2.0 * R / 0.25));
  for (int p = 0; p < panels; ++p) {
    const double a = -R + 2.0 * R * p / panels;
    const double b = -R + 2.0 * R * (p + 1) / panels;
    for (std::size_t q = 0; q < base.nodes.size(); ++q) {
      const double x = a + (b - a) * base.nodes[q];
      const double wx = (b - a) * base.weights[q];
      double theta_sum = 0.0;
      for (int j = 0; j < n_theta; ++j) {
        const double theta = 2.0 * std::acos(-1.0) * j / n_theta;
        const double val = cylinder_value(v, theta, x).to_double();
        theta_sum += std::fabs(-0.5 * val * val + val * cylinder_Lv(v, theta, x));
      }
      total += wx * theta_sum * (2.0 * std::acos(-1.0) / n_theta) *
               std::exp(-x * x / 4.0);
    }
  }
  return total;
}

int run_cylinder(const RunConfig &cfg) {
  std::vector<Check> checks;
  const CylinderFunction exact = CylinderFunction::exact_eigenfunction();
  const double Lambda = 0.25;
  const double R = std::min(cfg.r_max, 12.0);

  {
    double worst = 0.0;
    for (double r : {4.0, 8.0, R}) {
      const CylinderQuantities q = compute_E_UE(exact, r);
      const double target = r * r / 2.0;
      worst = std::max(worst, std::fabs(q.U - target) / target);
      worst = std::max(worst, std::fabs(q.U_E - target) / target);
    }
    checks.push_back({"exact_frequency", worst <= 1e-8, 1e-8 - worst, {}});
  }

  {
    const DiffIneqReport rep =
        check_diffineq(exact, make_grid(2.0, R, 0.25));
    checks.push_back({"frequency_differential_inequality", rep.holds,
                      rep.min_slack, {}});
  }

  // Fit the decay constant on the exact eigenfunction, then freeze it.
  double C_hat = 0.0;
  for (double Rf : {8.0, 10.0, 12.0}) {
    const GoalReport gq = goal_quantities(exact, cfg.eps, Lambda, Rf);
    if (gq.decay_term > 0.0) C_hat = std::max(C_hat, gq.lhs / gq.decay_term);
  }
  C_hat *= 2.0;

  {
    const GoalReport rep = verify_goal(exact, 0.0, cfg.eps, Lambda, R, C_hat);
    checks.push_back({"integral_bound_exact", rep.holds && rep.chain_ok,
                      rep.rhs - rep.lhs,
                      json{{"C_hat", C_hat}, {"chain_radius", rep.chain_radius}}});
  }

  {
    const CylinderFunction v = perturbed_cylinder(Rational(1, 20));
    const double psi_norm_sq = perturbed_psi_norm_sq(v, R, 64);
    const auto psi_sq = [&](double theta, double x) {
      const double val = cylinder_value(v, theta, x).to_double();
      return std::fabs(-0.5 * val * val + val * cylinder_Lv(v, theta, x));
    };
    const GoalReport rep =
        verify_goal(v, psi_norm_sq, 0.0, Lambda, R, C_hat, psi_sq);
    checks.push_back({"integral_bound_perturbed", rep.holds && rep.chain_ok,
                      rep.rhs - rep.lhs,
                      json{{"psi_norm_sq", psi_norm_sq},
                           {"chain_radius", rep.chain_radius}}});
  }

  return finish(cfg, checks);
}

void validate(const RunConfig &cfg) {
  static const std::vector<std::string> commands = {"ladder", "freq", "verify",
                                                    "compare", "cylinder"};
  bool known = false;
  for (const auto &c : commands) known = known || c == cfg.command;
  if (!known) throw std::invalid_argument("unknown command '" + cfg.command + "'");
  if (cfg.n < 1 || cfg.n > 3)
    throw std::invalid_argument("n must be 1, 2 or 3");
  if (std::abs(cfg.k) > 64)
    throw std::invalid_argument("|k| <= 64 required");
  if (!(cfg.r_min > 0.0) || !(cfg.r_step > 0.0) || !(cfg.r_max > cfg.r_min))
    throw std::invalid_argument("need 0 < r_min < r_max and r_step > 0");
  if (!(cfg.eps > 0.0 && cfg.eps < 1.0))
    throw std::invalid_argument("eps in (0, 1) required");
  if (!(cfg.delta > 0.0))
    throw std::invalid_argument("delta > 0 required");
  if (cfg.format != "csv" && cfg.format != "json")
    throw std::invalid_argument("format must be csv or json");
  static const std::vector<std::string> suites = {"all", "growth", "sharpness",
                                                  "uprime", "monotonicity"};
  bool suite_ok = false;
  for (const auto &s : suites) suite_ok = suite_ok || s == cfg.suite;
  if (!suite_ok) throw std::invalid_argument("unknown suite '" + cfg.suite + "'");
  for (int k : cfg.levels)
    if (std::abs(k) > 64) throw std::invalid_argument("|level| <= 64 required");
}

} // namespace

void write_file_atomic(const std::string &path, const std::string &content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write to " + tmp + " failed");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("rename to " + path + " failed");
}

RunConfig config_from_json_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file " + path);
  json j;
  in >> j;
  RunConfig cfg;
  cfg.command = j.value("command", cfg.command);
  cfg.n = j.value("n", cfg.n);
  if (j.contains("levels")) cfg.levels = j["levels"].get<std::vector<int>>();
  cfg.k = j.value("k", cfg.k);
  cfg.eps = j.value("eps", cfg.eps);
  cfg.delta = j.value("delta", cfg.delta);
  cfg.lambda = j.value("lambda", cfg.lambda);
  cfg.r_min = j.value("r_min", cfg.r_min);
  cfg.r_max = j.value("r_max", cfg.r_max);
  cfg.r_step = j.value("r_step", cfg.r_step);
  cfg.nodes = j.value("nodes", cfg.nodes);
  cfg.suite = j.value("suite", cfg.suite);
  cfg.out = j.value("out", cfg.out);
  cfg.format = j.value("format", cfg.format);
  return cfg;
}

int run(const RunConfig &cfg) {
  try {
    validate(cfg);
  } catch (const std::invalid_argument &ex) {
    std::cerr << "config error: " << ex.what() << "\n";
    return 2;
  }
  try {
    if (cfg.command == "ladder") return run_ladder(cfg);
    if (cfg.command == "freq") return run_freq(cfg);
    if (cfg.command == "verify") return run_verify(cfg);
    if (cfg.command == "compare") return run_compare(cfg);
    return run_cylinder(cfg);
  } catch (const std::invalid_argument &ex) {
    std::cerr << "config error: " << ex.what() << "\n";
    return 2;
  } catch (const std::exception &ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
}

} // namespace oufreq
