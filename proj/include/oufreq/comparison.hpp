#ifndef OUFREQ_COMPARISON_HPP
#define OUFREQ_COMPARISON_HPP

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace oufreq {

/// Data defining the first-order comparison operator
///   P_{f,lambda} g = (log g)' + (n-2)/r - f' + g/r + r lambda / g
/// on positive functions of r.  f'(r) >= r/2 is the standing hypothesis and
/// is rejected lazily at every evaluation.
struct FreqOpParams {
  int n = 1;
  std::function<double(double)> fprime;
  double lambda = 0.0;

  static FreqOpParams gaussian(int n, double lambda) {
    return {n, [](double r) { return r / 2.0; }, lambda};
  }
};

double eval_P(double g, double gprime, double r, const FreqOpParams &params);

struct ChoosegResult {
  double r1 = 0.0;                // smallest radius making the algebra work
  double positivity_radius = 0.0; // where g = r^2/2 - n - eps - 2 lambda > 0
  double max_P_excess = 0.0;      // max over check grid of P g + eps/(2r)
};

/// Smallest r1 (bisection, 1e-9) with
///   2(lambda+1) / (1 - 2(n+eps+2 lambda)/r^2) <= 2 + 2 lambda + eps/2
/// for all r >= r1; also checks P g <= -eps/(2r) on [r1, 4 r1] for the
/// barrier g = r^2/2 - n - eps - 2 lambda.
ChoosegResult chooseg_r1(int n, double eps, double lambda);

struct Trajectory {
  std::vector<double> r;
  std::vector<double> h;
  std::vector<double> hprime;

  std::size_t size() const { return r.size(); }
  std::string to_csv(const FreqOpParams &params) const;

  static Trajectory from_function(const std::function<double(double)> &fn,
                                  const std::function<double(double)> &dfn,
                                  const std::vector<double> &grid);
};

/// Solve the equality case P_{f,lambda} h = 0, i.e.
///   h' = h (f' - (n-2)/r - h/r) - r lambda,
/// by classical RK4 with step <= 1e-3 min(1, 1/r).  Aborts cleanly when h
/// reaches 0 (crossing radius reported in the exception).
Trajectory integrate_extremal(const FreqOpParams &params, double r0, double h0,
                              double r_max);

struct TrajectoryCrossing : std::runtime_error {
  explicit TrajectoryCrossing(double r)
      : std::runtime_error("extremal trajectory reached 0 at r = " +
                           std::to_string(r)),
        radius(r) {}
  double radius;
};

struct MaxPrincipleReport {
  bool ordered_after = false;  // h > g at every grid point past the first lead
  double first_lead = 0.0;     // first radius with h > g
  double predicted_bound = 0.0; // r1 (g(r1)/h(r1))^{1/eps}, lambda <= 0 only
  bool within_predicted = false;
};

/// Lemma-style maximum principle: both trajectories are re-certified with
/// eval_P on the shared grid (P h >= -tol, P g <= -eps/r + tol) before any
/// ordering claim is made.  eps here is the decay rate in P g <= -eps/r;
/// for the quadratic barrier from chooseg_r1 pass half its eps.
MaxPrincipleReport verify_max_principle(const Trajectory &h,
                                        const Trajectory &g,
                                        const FreqOpParams &params, double eps,
                                        double tol = 1e-9);

struct PositiveLambdaReport {
  bool conclusive = false;
  double r2 = 0.0;      // smallest grid radius with the r2 condition
  double escape_R = 0.0; // beyond this, h >= r^2/2 - n - 2 lambda - eps
  double min_margin = 0.0;
};

/// Barrier tracking for lambda > 0: finds r2 with
///   (2-n)/r2 + r2/2 - r2 lambda/(delta + 2 lambda) > sqrt(lambda),
/// requires h > 2 lambda + delta at some s >= r2, then certifies
/// h >= r^2/2 - n - 2 lambda - eps beyond a measured R.
PositiveLambdaReport verify_positive_lambda(const Trajectory &h,
                                            const FreqOpParams &params,
                                            double delta, double eps);

} // namespace oufreq

#endif
