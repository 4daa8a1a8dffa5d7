#include "oufreq/field.hpp"

#include <numeric>
#include <stdexcept>

namespace oufreq {

ProductEigenfunction ProductEigenfunction::v_k(int k, int n) {
  ProductEigenfunction v;
  v.n = n;
  v.levels.assign(n, 0);
  v.levels[0] = k;
  v.factors.reserve(n);
  for (int lvl : v.levels) v.factors.push_back(ladder_build(lvl));
  return v;
}

ProductEigenfunction ProductEigenfunction::from_factors(
    std::vector<LadderFunction> fs) {
  if (fs.empty()) throw std::invalid_argument("ProductEigenfunction: no factors");
  ProductEigenfunction v;
  v.n = static_cast<int>(fs.size());
  for (const auto &f : fs) v.levels.push_back(f.k);
  v.factors = std::move(fs);
  return v;
}

double ProductEigenfunction::lambda() const {
  return std::accumulate(levels.begin(), levels.end(), 0) / 2.0;
}

EvaluableField ProductEigenfunction::as_field() const {
  // Precompute factor derivatives once; u_k' = u_{k-1} stays exact.
  std::vector<SymbolicFunction> fs, dfs;
  fs.reserve(factors.size());
  dfs.reserve(factors.size());
  for (const auto &f : factors) {
    fs.push_back(f.f);
    dfs.push_back(differentiate(f.f));
  }
  const int dim = n;
  EvaluableField field;
  field.n = dim;
  field.potential = lambda();
  field.has_potential = true;
  field.eval = [fs, dfs, dim](std::span<const double> x) {
    FieldPoint pt;
    LogReal vals[3], dvals[3];
    pt.value = LogReal::one();
    for (int i = 0; i < dim; ++i) {
      vals[i] = symbolic_eval(fs[i], x[i]);
      dvals[i] = symbolic_eval(dfs[i], x[i]);
      pt.value = lr_mul(pt.value, vals[i]);
    }
    pt.grad.resize(dim);
    for (int i = 0; i < dim; ++i) {
      LogReal g = dvals[i];
      for (int j = 0; j < dim; ++j)
        if (j != i) g = lr_mul(g, vals[j]);
      pt.grad[i] = g;
    }
    return pt;
  };
  return field;
}

EvaluableField hermite_field(int k, int n) {
  const HermitePoly h = hermite_polynomial(k);
  const RationalPoly dpoly = h.poly.derivative();
  EvaluableField field;
  field.n = n;
  field.potential = k / 2.0;
  field.has_potential = true;
  field.eval = [h, dpoly, n](std::span<const double> x) {
    FieldPoint pt;
    pt.value = LogReal::from_double(h.poly.eval_double(x[0]));
    pt.grad.assign(n, LogReal::zero());
    pt.grad[0] = LogReal::from_double(dpoly.eval_double(x[0]));
    return pt;
  };
  return field;
}

EvaluableField make_field(int n,
                          std::function<FieldPoint(std::span<const double>)> eval,
                          double potential, bool has_potential) {
  EvaluableField field;
  field.n = n;
  field.eval = std::move(eval);
  field.potential = potential;
  field.has_potential = has_potential;
  return field;
}

} // namespace oufreq
