#ifndef OUFREQ_CYLINDER_HPP
#define OUFREQ_CYLINDER_HPP

#include "oufreq/ladder.hpp"
#include "oufreq/logreal.hpp"

#include <functional>
#include <string>
#include <vector>

namespace oufreq {

/// Function on the cylinder S^1 x R (unit circle, n = 1):
///   v(theta, x) = sum_m [ c_m(x) cos(m theta) + s_m(x) sin(m theta) ]
/// with radial profiles in the closed symbolic basis.  Cross-mode
/// orthogonality turns every quadratic integral into a sum over modes.
struct CylinderMode {
  int m = 0;
  SymbolicFunction c; // cosine profile
  SymbolicFunction s; // sine profile (ignored for m = 0)
};

struct CylinderFunction {
  int n = 1; // Euclidean dimension; fixed to 1 at desk scale
  std::vector<CylinderMode> modes;

  /// v = e^{x^2/4} as a single m = 0 mode (the exact -1/2 eigenfunction)
  static CylinderFunction exact_eigenfunction();
};

/// Pointwise value (mode sum); the cross-check target for the mode-summed
/// integrals.
LogReal cylinder_value(const CylinderFunction &v, double theta, double x);

struct CylinderQuantities {
  LogReal E, D, I;
  double U_E = 0.0, U = 0.0;
};

/// I, D, E, U = D/I and U_E = E/I at radius r, via mode-summed
/// Gaussian-weighted quadrature.  Throws NodalSphereError-style when I = 0.
CylinderQuantities compute_E_UE(const CylinderFunction &v, double r);

struct DiffIneqReport {
  double min_slack = 0.0; // min over interior points of (log U_E)' - RHS
  bool holds = false;     // slack >= -1e-4 everywhere
};

/// Lemma-style differential inequality for the modified frequency:
/// (log U_E)' >= (2-n)/r + r/2 + r/(2 U_E) + (U/r)(D/E - 2).
DiffIneqReport check_diffineq(const CylinderFunction &v,
                              const std::vector<double> &r_grid);

/// Independently coded right-hand side at a single radius (spot check).
double diffineq_rhs(const CylinderFunction &v, double r);

struct GoalReport {
  double lhs = 0.0;        // \int_{|x| < 4n} v^2 e^{-f}
  double budget = 0.0;     // (2/Lambda) psi_norm_sq
  double decay_term = 0.0; // I(R) R^{2n} exp(-(1-eps-Lambda) R^2 / (2(1+eps+Lambda)^2))
  double rhs = 0.0;        // budget + C_hat * decay_term
  bool holds = false;
  double chain_radius = 0.0; // U/U_E closeness and the U_E threshold hold beyond
  bool chain_ok = false;
};

/// The final bound with a caller-supplied constant, plus the intermediate
/// chain.  Condition (1) is certified on a 64 x radial lattice against the
/// supplied pointwise psi^2 budget (absolute tolerance 1e-12 on the defect).
GoalReport verify_goal(const CylinderFunction &v, double psi_norm_sq,
                       double eps, double Lambda, double R, double C_hat,
                       const std::function<double(double, double)> &psi_sq =
                           nullptr);

/// lhs and decay term only, for fitting C_hat over the exact family.
GoalReport goal_quantities(const CylinderFunction &v, double eps, double Lambda,
                           double R);

/// L v at a point, for tests and condition-(1) certification.
double cylinder_Lv(const CylinderFunction &v, double theta, double x);

std::string cylinder_curve_csv(const CylinderFunction &v,
                               const std::vector<double> &r_grid);

} // namespace oufreq

#endif
