#include "oufreq/u0.hpp"

#include "oufreq/quadrature.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace oufreq {

double u0_scaled_quadrature(double x) {
  if (x == 0.0) return 0.0;
  // w(x) = \int_lo^x e^{(s^2 - x^2)/4} ds with the negligible head dropped:
  // for s < x - 140/x the integrand is below e^{-35}.
  const double lo = std::max(0.0, x - 140.0 / x);
  const double len = x - lo;
  const int panels = std::max(4, static_cast<int>(std::ceil(len * 4.0)));
  const double h = len / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    QuadratureRule r = gauss_rule(20, lo + p * h, lo + (p + 1) * h);
    for (std::size_t i = 0; i < r.size(); ++i) {
      const double s = r.nodes[i];
      total += r.weights[i] * std::exp((s - x) * (s + x) / 4.0);
    }
  }
  return total;
}

double u0_scaled_series(double x) {
  const double inv2 = 1.0 / (x * x);
  double term = 2.0 / x;
  double sum = term;
  for (int m = 0; m < 200; ++m) {
    const double next = term * 2.0 * (2 * m + 1) * inv2;
    if (next >= term) break; // asymptotic series: stop before terms grow
    term = next;
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum;
}

namespace {

constexpr double kSeriesSwitch = 30.0;
constexpr double kPieceWidth = 0.5;
constexpr int kDegree = 24;
constexpr int kPieces = static_cast<int>(kSeriesSwitch / kPieceWidth);

struct ChebTable {
  // coeffs[piece][j]: Chebyshev coefficients of w on
  // [piece*width, (piece+1)*width].
  std::vector<std::array<double, kDegree + 1>> coeffs;

  ChebTable() {
    coeffs.resize(kPieces);
    const double pi = std::acos(-1.0);
    std::array<double, kDegree + 1> fvals{};
    for (int p = 0; p < kPieces; ++p) {
      const double a = p * kPieceWidth, b = a + kPieceWidth;
      const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
      for (int i = 0; i <= kDegree; ++i) {
        const double t = std::cos(pi * (i + 0.5) / (kDegree + 1));
        fvals[i] = u0_scaled_quadrature(mid + half * t);
      }
      for (int j = 0; j <= kDegree; ++j) {
        double c = 0.0;
        for (int i = 0; i <= kDegree; ++i)
          c += fvals[i] * std::cos(pi * j * (i + 0.5) / (kDegree + 1));
        coeffs[p][j] = c * 2.0 / (kDegree + 1);
      }
    }
  }

  double eval(double x) const {
    int p = static_cast<int>(x / kPieceWidth);
    if (p >= kPieces) p = kPieces - 1;
    const double a = p * kPieceWidth;
    const double t = 2.0 * (x - a) / kPieceWidth - 1.0;
    // Clenshaw
    double b1 = 0.0, b2 = 0.0;
    for (int j = kDegree; j >= 1; --j) {
      const double b0 = 2.0 * t * b1 - b2 + coeffs[p][j];
      b2 = b1;
      b1 = b0;
    }
    return t * b1 - b2 + 0.5 * coeffs[p][0];
  }
};

const ChebTable &cheb_table() {
  static const ChebTable table;
  return table;
}

} // namespace

double u0_scaled(double x) {
  const double ax = std::fabs(x);
  double w;
  if (ax >= kSeriesSwitch)
    w = u0_scaled_series(ax);
  else if (ax == 0.0)
    return 0.0;
  else
    w = cheb_table().eval(ax);
  return x < 0.0 ? -w : w;
}

LogReal u0_log(double x) {
  if (x == 0.0) return LogReal::zero();
  const double w = u0_scaled(std::fabs(x));
  return LogReal::from_log(x > 0.0 ? 1 : -1, x * x / 4.0 + std::log(w));
}

} // namespace oufreq
