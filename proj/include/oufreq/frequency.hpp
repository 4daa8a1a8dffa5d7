#ifndef OUFREQ_FREQUENCY_HPP
#define OUFREQ_FREQUENCY_HPP

#include "oufreq/field.hpp"
#include "oufreq/logreal.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace oufreq {

/// I(r) = 0 on a sampled sphere: the frequency is undefined there.
struct NodalSphereError : std::runtime_error {
  explicit NodalSphereError(double r)
      : std::runtime_error("nodal sphere: I(r) = 0 at r = " + std::to_string(r)),
        radius(r) {}
  double radius;
};

/// Deterministic signed log-domain reduction: two passes, fixed order.
class LogAccumulator {
public:
  void push(const LogReal &term) {
    if (term.sign != 0) terms_.push_back(term);
  }
  LogReal sum() const;

private:
  std::vector<LogReal> terms_;
};

struct SphereNodeCounts {
  int azimuth; // trapezoid count (n = 2, 3)
  int polar;   // Gauss count in cos(polar), n = 3
};

/// Enough nodes that the e^{r^2 c^2 / 4}-type peaking of eigenfunction
/// integrands is resolved to spectral accuracy at radius r.
SphereNodeCounts default_sphere_nodes(double r);

/// \int_{\partial B_r} g for n in {1,2,3}.  n=1: two-point sum; n=2: periodic
/// trapezoid; n=3: Gauss in cos(polar) x trapezoid in azimuth.
LogReal sphere_integral(const std::function<LogReal(std::span<const double>)> &g,
                        double r, int n, SphereNodeCounts m);
LogReal sphere_integral(const std::function<LogReal(std::span<const double>)> &g,
                        double r, int n);

enum class DMode { Boundary, Bulk };

/// I(r) = r^{1-n} \int_{\partial B_r} u^2
LogReal compute_I(const EvaluableField &v, double r);
LogReal compute_I(const EvaluableField &v, double r, SphereNodeCounts m);

/// D(r) = r^{2-n} \int_{\partial B_r} u u_r, or equivalently the
/// Gaussian-weighted bulk Dirichlet form (divergence theorem).
LogReal compute_D(const EvaluableField &v, double r, DMode mode);
LogReal compute_D(const EvaluableField &v, double r, DMode mode,
                  SphereNodeCounts m, int radial_nodes_per_unit);

/// Gaussian-weighted bulk integral e^{f(r)} r^{1-n} scaling left to caller:
/// returns \int_{B_r} density(point) e^{-|x|^2/4}.
LogReal bulk_integral(
    const std::function<LogReal(const FieldPoint &, std::span<const double>)>
        &density,
    const EvaluableField &v, double r, SphereNodeCounts m,
    int radial_nodes_per_unit = 32);

struct FrequencyCurve {
  std::vector<double> r;
  std::vector<LogReal> I, D;
  std::vector<double> U, Uprime, W;
  std::vector<double> margin;

  std::size_t size() const { return r.size(); }
  std::string to_csv() const;
};

std::vector<double> make_grid(double r_min, double r_max, double step);

FrequencyCurve compute_curve(const EvaluableField &v,
                             const std::vector<double> &r_grid);

struct RellichResult {
  LogReal lhs, rhs;           // the Rellich boundary/bulk identity
  LogReal combine_lhs, combine_rhs; // the (r/4)(D - I) rewrite
};

RellichResult rellich_check(const EvaluableField &v, double V, double r);

enum class GrowthBranch { Unbounded, Bounded, Inconclusive };

struct GrowthReport {
  GrowthBranch branch = GrowthBranch::Inconclusive;
  double crossing_radius = 0.0; // first r with U >= delta + 2 max(0, lambda)
  double R_meas = 0.0;          // bound holds on the whole grid beyond this
  double min_margin = 0.0;      // min over tail of U - (r^2/2 - n - 2 lambda - eps)
  double max_U = 0.0;
};

GrowthReport verify_growth(const ProductEigenfunction &v, double eps,
                           double delta, double r_max, double r_step = 0.1);
GrowthReport verify_growth_field(const EvaluableField &v, double lambda,
                                 double eps, double delta,
                                 const std::vector<double> &grid);

struct SharpnessReport {
  bool all_hold = false;
  std::vector<double> margins; // (r^2/2 - n - k + eps) - U(r), per radius
};

/// Frequency of the fastest-growing radial eigenfunction with V = k/2 on
/// R^n, computed by integrating the radial equation with renormalization
/// (U = r u'/u).  Requires r >= 6 so the dominant branch has taken over.
double radial_growing_U(int k, int n, double r);

/// Witnesses U(r_i) <= r_i^2/2 - n - k + eps: the 1-d ladder solution for
/// n = 1, the growing radial eigenfunction for n >= 2.
SharpnessReport verify_sharpness(int k, int n, double eps,
                                 const std::vector<double> &r_list);

struct UprimeReport {
  bool exempt = false;      // limsup U <= 2|lambda| branch
  double R_meas = 0.0;      // U' >= r/2 beyond this radius
  double min_half_slack = 0.0; // min of U' - r/2 beyond R_meas
  double C_hat = 0.0;       // fitted constant for the O(r^{1-n}) term
  double min_full_slack = 0.0; // min slack of the full lower bound
  bool conclusive = false;
};

UprimeReport verify_uprime(const EvaluableField &v, double lambda,
                           const std::vector<double> &grid);

struct MonotonicityReport {
  double min_logU_slope = 0.0; // min finite-difference (log U)'
  bool holds = false;          // >= -1e-6 everywhere
};

MonotonicityReport monotonicity_check(const EvaluableField &v,
                                      const std::vector<double> &grid);

} // namespace oufreq

#endif
