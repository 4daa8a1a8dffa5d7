#include "oufreq/field.hpp"
#include "oufreq/frequency.hpp"
#include "oufreq/u0.hpp"

#include <doctest.h>

#include <cmath>

using namespace oufreq;

namespace {

constexpr double kPi = 3.14159265358979323846;

bool rel_close(const LogReal &a, const LogReal &b, double tol) {
  if (a.sign == 0 && b.sign == 0) return true;
  if (a.sign == 0 || b.sign == 0) return false;
  const LogReal d = lr_sub(a, b);
  if (d.sign == 0) return true;
  return std::exp(d.logmag - std::max(a.logmag, b.logmag)) <= tol;
}

EvaluableField constant_field(int n, double c) {
  return make_field(
      n,
      [c, n](std::span<const double>) {
        return FieldPoint{LogReal::from_double(c),
                          std::vector<LogReal>(n, LogReal::zero())};
      },
      0.0, true);
}

EvaluableField x1_field(int n) {
  return make_field(
      n,
      [n](std::span<const double> x) {
        std::vector<LogReal> g(n, LogReal::zero());
        g[0] = LogReal::from_double(1.0);
        return FieldPoint{LogReal::from_double(x[0]), g};
      },
      0.0, false);
}

EvaluableField radius_sq_field(int n) {
  return make_field(
      n,
      [n](std::span<const double> x) {
        double s2 = 0.0;
        std::vector<LogReal> g(n);
        for (int i = 0; i < n; ++i) {
          s2 += x[i] * x[i];
          g[i] = LogReal::from_double(2.0 * x[i]);
        }
        return FieldPoint{LogReal::from_double(s2), g};
      },
      0.0, false);
}

// u(x) = u0(x_1) on R^n: still annihilated by the drift operator
EvaluableField u0_slab_field(int n) {
  return make_field(
      n,
      [n](std::span<const double> x) {
        std::vector<LogReal> g(n, LogReal::zero());
        g[0] = LogReal::from_log(1, x[0] * x[0] / 4.0); // u0' = e^{x^2/4}
        return FieldPoint{u0_log(x[0]), g};
      },
      0.0, true);
}

} // namespace

TEST_CASE("sphere integrals of reference integrands") {
  auto one = [](std::span<const double>) { return LogReal::from_double(1.0); };
  CHECK(sphere_integral(one, 3.0, 2).to_double() ==
        doctest::Approx(2.0 * kPi * 3.0).epsilon(1e-12));
  CHECK(sphere_integral(one, 2.5, 1).to_double() == doctest::Approx(2.0));
  CHECK(sphere_integral(one, 1.5, 3).to_double() ==
        doctest::Approx(4.0 * kPi * 2.25).epsilon(1e-12));

  auto x1sq = [](std::span<const double> x) {
    return LogReal::from_double(x[0] * x[0]);
  };
  CHECK(sphere_integral(x1sq, 1.0, 3).to_double() ==
        doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-12));

  auto u0sq = [](std::span<const double> x) {
    return lr_mul(u0_log(x[0]), u0_log(x[0]));
  };
  CHECK(sphere_integral(u0sq, 2.0, 1).to_double() ==
        doctest::Approx(17.1148010384426).epsilon(1e-10));
}

TEST_CASE("I(r) on closed-form inputs") {
  CHECK(compute_I(constant_field(1, 1.0), 3.0).to_double() ==
        doctest::Approx(2.0));
  CHECK(compute_I(constant_field(2, 1.0), 5.0).to_double() ==
        doctest::Approx(2.0 * kPi).epsilon(1e-12));
  CHECK(compute_I(constant_field(3, 1.0), 2.0).to_double() ==
        doctest::Approx(4.0 * kPi).epsilon(1e-12));

  // u = x_1 on R^2: I = r^{-1} * pi r^3 = pi r^2
  CHECK(compute_I(x1_field(2), 4.0).to_double() ==
        doctest::Approx(kPi * 16.0).epsilon(1e-12));

  // v_0 on the line: I(r) = 2 u0(r)^2
  const EvaluableField v0 = ProductEigenfunction::v_k(0, 1).as_field();
  const double u0r = u0_log(6.0).to_double();
  CHECK(compute_I(v0, 6.0).to_double() ==
        doctest::Approx(2.0 * u0r * u0r).epsilon(1e-12));
}

TEST_CASE("D(r) and homogeneous inputs") {
  // radially constant input: no radial derivative, D = 0
  CHECK(compute_D(constant_field(2, 3.0), 2.0, DMode::Boundary).sign == 0);

  // |x|^2 has frequency exactly 2
  for (int n : {1, 2, 3}) {
    const EvaluableField f = radius_sq_field(n);
    const double U = lr_div(compute_D(f, 3.0, DMode::Boundary),
                            compute_I(f, 3.0))
                         .to_double();
    CHECK(U == doctest::Approx(2.0).epsilon(1e-12));
  }
  // x_1 has frequency exactly 1
  const EvaluableField f1 = x1_field(3);
  CHECK(lr_div(compute_D(f1, 2.0, DMode::Boundary), compute_I(f1, 2.0))
            .to_double() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("boundary and bulk Dirichlet forms agree on eigenfunctions") {
  struct Case {
    int k, n;
    double r, tol;
  };
  for (const Case c : {Case{2, 2, 6.0, 1e-6}, Case{1, 3, 4.0, 1e-6},
                       Case{0, 1, 8.0, 1e-8}}) {
    const EvaluableField v = ProductEigenfunction::v_k(c.k, c.n).as_field();
    const LogReal Db = compute_D(v, c.r, DMode::Boundary);
    const LogReal Dv = compute_D(v, c.r, DMode::Bulk);
    CHECK(rel_close(Db, Dv, c.tol));
  }
}

TEST_CASE("frequency curve invariants") {
  // u = x_1 on R^2: U identically 1, W = 2 - r^2/4
  {
    const FrequencyCurve c = compute_curve(x1_field(2), make_grid(0.5, 6.0, 0.5));
    for (std::size_t i = 0; i < c.size(); ++i) {
      CHECK(c.U[i] == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(c.W[i] ==
            doctest::Approx(2.0 - c.r[i] * c.r[i] / 4.0).epsilon(1e-12));
    }
  }
  // v_0 on the line: U(10) = 10 / w(10)
  {
    const EvaluableField v0 = ProductEigenfunction::v_k(0, 1).as_field();
    const double U10 =
        lr_div(compute_D(v0, 10.0, DMode::Boundary), compute_I(v0, 10.0))
            .to_double();
    CHECK(U10 == doctest::Approx(48.955258352167739).epsilon(1e-11));
  }
  // bounded eigenfunction h_2: U(40) within 5e-3 of its limit 2
  {
    const FrequencyCurve c =
        compute_curve(hermite_field(2, 1), make_grid(39.5, 40.0, 0.5));
    CHECK(c.U.back() == doctest::Approx(2.0).epsilon(2.5e-3));
  }
}

TEST_CASE("(log I)' = 2U/r along the curve") {
  const EvaluableField v0 = ProductEigenfunction::v_k(0, 1).as_field();
  const FrequencyCurve c = compute_curve(v0, make_grid(2.0, 6.0, 0.05));
  for (std::size_t i = 1; i + 1 < c.size(); ++i) {
    const double fd = (c.I[i + 1].logmag - c.I[i - 1].logmag) /
                      (c.r[i + 1] - c.r[i - 1]);
    CHECK(fd == doctest::Approx(2.0 * c.U[i] / c.r[i]).epsilon(1e-3));
  }
}

TEST_CASE("Rellich identity") {
  // u constant: every term vanishes
  {
    const RellichResult res = rellich_check(constant_field(2, 1.0), 0.0, 2.0);
    CHECK(res.lhs.sign == 0);
    CHECK(res.rhs.sign == 0);
  }
  // h_1 = x on the line, V = 1/2
  {
    const RellichResult res = rellich_check(hermite_field(1, 1), 0.5, 2.0);
    CHECK(rel_close(res.lhs, res.rhs, 1e-8));
    CHECK(rel_close(res.combine_lhs, res.combine_rhs, 1e-8));
  }
  // u0(x_1) u0(x_2) on R^2, V = 0
  {
    const EvaluableField v =
        ProductEigenfunction::from_factors({ladder_build(0), ladder_build(0)})
            .as_field();
    const RellichResult res = rellich_check(v, 0.0, 4.0);
    CHECK(rel_close(res.lhs, res.rhs, 1e-6));
    CHECK(rel_close(res.combine_lhs, res.combine_rhs, 1e-6));
  }
}

TEST_CASE("Cauchy-Schwarz between D and the radial energy") {
  const EvaluableField v = ProductEigenfunction::v_k(1, 2).as_field();
  for (double r : {4.0, 8.0}) {
    const LogReal I = compute_I(v, r);
    const LogReal D = compute_D(v, r, DMode::Boundary);
    auto ur_sq = [&](std::span<const double> x) {
      const FieldPoint pt = v.eval(x);
      double rr = 0.0;
      for (double xi : x) rr += xi * xi;
      rr = std::sqrt(rr);
      LogReal ur = LogReal::zero();
      for (std::size_t i = 0; i < x.size(); ++i)
        ur = lr_add(ur, lr_scale(pt.grad[i], x[i] / rr));
      return lr_mul(ur, ur);
    };
    const LogReal H =
        lr_scale(sphere_integral(ur_sq, r, v.n), std::pow(r, 3.0 - v.n));
    const LogReal D2 = lr_mul(D, D);
    const LogReal IH = lr_mul(I, H);
    CHECK(D2.logmag <= IH.logmag + 1e-12);
  }
}

TEST_CASE("growth dichotomy") {
  // unbounded branch: v_0 crosses the threshold and then dominates the bound
  const GrowthReport g0 =
      verify_growth(ProductEigenfunction::v_k(0, 1), 0.1, 0.5, 12.0);
  CHECK(g0.branch == GrowthBranch::Unbounded);
  CHECK(g0.min_margin >= 0.0);
  CHECK(g0.crossing_radius > 0.0);

  const GrowthReport g2 =
      verify_growth(ProductEigenfunction::v_k(2, 2), 0.1, 0.5, 12.0);
  CHECK(g2.branch == GrowthBranch::Unbounded);
  CHECK(g2.min_margin >= 0.0);

  // bounded branch: h_2 with lambda = 1 settles at U = 2 < delta + 2 lambda
  const GrowthReport gb = verify_growth_field(
      hermite_field(2, 1), 1.0, 0.1, 0.5, make_grid(4.0, 40.0, 0.5));
  CHECK(gb.branch == GrowthBranch::Bounded);
  CHECK(gb.max_U < 2.5);
}

TEST_CASE("sharpness of the growth rate") {
  const SharpnessReport s1 = verify_sharpness(0, 1, 0.05, {8.0, 10.0, 12.0});
  CHECK(s1.all_hold);
  for (double m : s1.margins) {
    CHECK(m >= 0.0);
    CHECK(m <= 0.2); // the witness sits close to the cap
  }
  const SharpnessReport s2 = verify_sharpness(2, 2, 0.05, {8.0, 10.0, 12.0});
  CHECK(s2.all_hold);
  for (double m : s2.margins) CHECK(m <= 1.0);
}

TEST_CASE("radial frequency asymptotics") {
  // U(r) = r^2/2 - n - k - 2(n+k)(k+2)/r^2 + O(r^-4)
  struct Case {
    int k, n;
  };
  for (const Case c : {Case{0, 1}, Case{0, 2}, Case{1, 2}, Case{2, 3}}) {
    auto asym = [&](double r) {
      return r * r / 2.0 - c.n - c.k -
             2.0 * (c.n + c.k) * (c.k + 2.0) / (r * r);
    };
    const double e20 = std::fabs(radial_growing_U(c.k, c.n, 20.0) - asym(20.0));
    const double e30 = std::fabs(radial_growing_U(c.k, c.n, 30.0) - asym(30.0));
    CHECK(e20 <= 0.02);
    CHECK(e30 <= 0.005);
  }
  // n = 1, k = 0 closed form: U = r / w(r)
  CHECK(radial_growing_U(0, 1, 10.0) ==
        doctest::Approx(48.955258352167739).epsilon(1e-8));
  CHECK_THROWS_AS((void)radial_growing_U(0, 2, 4.0), std::invalid_argument);
}

TEST_CASE("derivative lower bound for U") {
  const EvaluableField v0 = ProductEigenfunction::v_k(0, 1).as_field();
  const UprimeReport rep = verify_uprime(v0, 0.0, make_grid(2.0, 16.0, 0.05));
  CHECK(rep.conclusive);
  CHECK(!rep.exempt);
  CHECK(rep.min_half_slack >= 0.0);
  CHECK(rep.min_full_slack >= -1e-9);

  // h_1: U = 1 <= 2|lambda| for lambda = 1/2, so the bound does not apply
  const UprimeReport ex =
      verify_uprime(hermite_field(1, 1), 0.5, make_grid(2.0, 10.0, 0.1));
  CHECK(ex.exempt);
  CHECK(ex.conclusive);
}

TEST_CASE("monotonicity of log U for drift-harmonic inputs") {
  {
    const MonotonicityReport rep =
        monotonicity_check(u0_slab_field(2), make_grid(0.5, 6.0, 0.25));
    CHECK(rep.holds);
    CHECK(rep.min_logU_slope >= -1e-6);
  }
  {
    // 3 + u0 is still drift-harmonic on the line
    const EvaluableField f = make_field(
        1,
        [](std::span<const double> x) {
          std::vector<LogReal> g{LogReal::from_log(1, x[0] * x[0] / 4.0)};
          return FieldPoint{lr_add(LogReal::from_double(3.0), u0_log(x[0])),
                            g};
        },
        0.0, true);
    const MonotonicityReport rep =
        monotonicity_check(f, make_grid(0.5, 8.0, 0.25));
    CHECK(rep.holds);
  }
  // declared potential required, radially constant inputs rejected
  CHECK_THROWS_AS(monotonicity_check(x1_field(2), make_grid(1.0, 2.0, 0.5)),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      monotonicity_check(constant_field(1, 2.0), make_grid(1.0, 2.0, 0.5)),
      std::invalid_argument);
}

TEST_CASE("nodal spheres are reported, not divided by") {
  const EvaluableField zero = make_field(
      1,
      [](std::span<const double>) {
        return FieldPoint{LogReal::zero(), {LogReal::zero()}};
      },
      0.0, true);
  CHECK_THROWS_AS(compute_curve(zero, make_grid(1.0, 2.0, 0.5)),
                  NodalSphereError);
  try {
    compute_curve(zero, make_grid(1.0, 2.0, 0.5));
  } catch (const NodalSphereError &e) {
    CHECK(e.radius == doctest::Approx(1.0));
  }
}

TEST_CASE("sphere quadrature is converged at the default node counts") {
  const EvaluableField v = ProductEigenfunction::v_k(2, 3).as_field();
  const double r = 8.0;
  SphereNodeCounts m = default_sphere_nodes(r);
  const LogReal base = compute_I(v, r, m);
  m.azimuth *= 2;
  m.polar *= 2;
  const LogReal fine = compute_I(v, r, m);
  CHECK(rel_close(base, fine, 1e-8));
}

TEST_CASE("field gradients match finite differences") {
  const EvaluableField v = ProductEigenfunction::v_k(3, 2).as_field();
  const double pts[][2] = {{0.7, -1.3}, {2.1, 0.4}, {-1.8, -2.6}};
  for (const auto &p : pts) {
    const FieldPoint at = v.eval(p);
    for (int i = 0; i < 2; ++i) {
      double lo[2] = {p[0], p[1]}, hi[2] = {p[0], p[1]};
      const double h = 1e-6;
      lo[i] -= h;
      hi[i] += h;
      const double fd =
          (v.value(hi).to_double() - v.value(lo).to_double()) / (2.0 * h);
      CHECK(at.grad[i].to_double() == doctest::Approx(fd).epsilon(1e-6));
    }
  }
}
