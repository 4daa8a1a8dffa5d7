#ifndef OUFREQ_FIELD_HPP
#define OUFREQ_FIELD_HPP

#include "oufreq/ladder.hpp"
#include "oufreq/logreal.hpp"

#include <functional>
#include <span>
#include <vector>

namespace oufreq {

struct FieldPoint {
  LogReal value;
  std::vector<LogReal> grad;
};

/// Uniform input abstraction for quadrature: value and gradient in the log
/// domain, plus the (constant) potential when the function solves a drift
/// Schrodinger equation L u + V u = 0.
struct EvaluableField {
  int n = 1;
  std::function<FieldPoint(std::span<const double>)> eval;
  double potential = 0.0;
  bool has_potential = false;

  LogReal value(std::span<const double> x) const { return eval(x).value; }
  std::vector<LogReal> gradient(std::span<const double> x) const {
    return eval(x).grad;
  }
};

/// Tensor product of ladder factors on R^n; factor i solves the 1-d
/// eigenvalue equation at level levels[i], so the product has eigenvalue
/// lambda = sum(levels)/2.
struct ProductEigenfunction {
  int n = 1;
  std::vector<int> levels;
  std::vector<LadderFunction> factors;

  /// v_k-style product: levels (k, 0, ..., 0)
  static ProductEigenfunction v_k(int k, int n);
  /// product of the supplied solutions (levels read off the factors)
  static ProductEigenfunction from_factors(std::vector<LadderFunction> fs);

  double lambda() const;
  EvaluableField as_field() const;
};

/// Field for a polynomial eigenfunction h_k(x_1) on R^n (lambda = k/2).
EvaluableField hermite_field(int k, int n);

/// Field for an arbitrary smooth function given in doubles (test helper for
/// non-eigenfunction inputs; gradient by the supplied closed form).
EvaluableField make_field(int n,
                          std::function<FieldPoint(std::span<const double>)> eval,
                          double potential, bool has_potential);

} // namespace oufreq

#endif
