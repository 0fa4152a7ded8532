#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "nslab/inequality.hpp"
#include "nslab/strip_bvp.hpp"

using namespace nslab;

namespace {

// manufactured solution w = cos(r) cos(s) and its strip-operator image
double mms(double r, double s) { return std::cos(r) * std::cos(s); }
double mms_forcing(double r, double s) {
  // L(w) = -2 cos r cos s - G(s) sin(s) cos(r); G sin extends to s = 0
  return -2.0 * std::cos(r) * std::cos(s) -
         coefficient_G_times_sin(s) * std::cos(r);
}

double mms_error(const StripGrid& g) {
  SolveOptions opts;
  opts.forcing = mms_forcing;
  opts.left_boundary = [&](double s) { return mms(-g.R, s); };
  opts.right_boundary = [&](double s) { return mms(g.R, s); };
  const auto v0 = BoundaryProfile::custom([](double) { return 0.0; }, "mms-top");
  const StripField field = solve_bvp(g, v0, opts);
  double err = 0.0;
  for (int i = 0; i < g.n_r; ++i) {
    for (int j = 0; j < g.n_s; ++j) {
      err = std::max(err, std::abs(field.value(i, j) - mms(g.r(i), g.s(j))));
    }
  }
  return err;
}

}  // namespace

TEST_SUITE("strip_bvp") {

TEST_CASE("grid validation") {
  CHECK_THROWS_AS((StripGrid{12.0, 4, 33}).validate(), config_error);
  CHECK_THROWS_AS((StripGrid{-1.0, 65, 33}).validate(), config_error);
  CHECK_NOTHROW((StripGrid{12.0, 65, 33}).validate());
  const StripGrid g{6.0, 13, 9};
  CHECK(g.h_r() == doctest::Approx(1.0));
  CHECK(g.s(g.n_s - 1) == doctest::Approx(kHalfPi));
  CHECK(g.s(0) == 0.0);
}

TEST_CASE("constant data is reproduced exactly") {
  const StripGrid g{6.0, 65, 33};
  const StripField field = solve_bvp(g, BoundaryProfile::constant(1.0));
  for (double val : field.v) {
    CHECK(std::abs(val - 1.0) <= 1e-10);
  }
  CHECK(field.stats.rel_residual <= 1e-10);
}

TEST_CASE("manufactured solution converges at second order") {
  const double R = 3.0;
  double errs[3];
  int nr = 97, ns = 17;
  for (int lvl = 0; lvl < 3; ++lvl) {
    errs[lvl] = mms_error(StripGrid{R, nr, ns});
    nr = 2 * nr - 1;
    ns = 2 * ns - 1;
  }
  const double ratio1 = errs[0] / errs[1];
  const double ratio2 = errs[1] / errs[2];
  CHECK(ratio1 >= 3.2);
  CHECK(ratio1 <= 4.8);
  CHECK(ratio2 >= 3.2);
  CHECK(ratio2 <= 4.8);
}

TEST_CASE("solved Gaussian stays below the supersolution envelope") {
  const StripGrid g{8.0, 257, 65};
  SolveOptions opts;
  opts.comparison_check = true;
  const StripField field = solve_bvp(g, BoundaryProfile::gaussian(0.25), opts);

  const SupersolutionPolynomial p;
  for (int i = 1; i < g.n_r - 1; ++i) {
    for (int j = 0; j < g.n_s - 1; ++j) {
      const double bound = std::exp(-std::abs(g.r(i))) * p(g.s(j));
      const double val = field.value(i, j);
      CHECK(val > 0.0);
      CHECK(val <= 1.05 * bound);
    }
  }
}

TEST_CASE("comparison mode rejects oversized boundary data") {
  const StripGrid g{8.0, 129, 33};
  SolveOptions opts;
  opts.comparison_check = true;
  // 0.4 e^{1/4} ~ 0.514 exceeds p(pi/2) ~ 0.3345
  CHECK_THROWS_AS(solve_bvp(g, BoundaryProfile::gaussian(0.4), opts),
                  config_error);
  CHECK_NOTHROW(solve_bvp(g, BoundaryProfile::gaussian(0.25), opts));
}

TEST_CASE("discrete maximum principle") {
  const StripGrid g{6.0, 129, 33};
  const StripField field = solve_bvp(g, BoundaryProfile::gaussian(0.25, 1.0, 0.7));
  double lo = 1e300, hi = -1e300;
  for (double val : field.v) {
    lo = std::min(lo, val);
    hi = std::max(hi, val);
  }
  double v0_max = 0.0;
  for (double val : field.v0) v0_max = std::max(v0_max, val);
  CHECK(lo >= 0.0);
  CHECK(hi <= v0_max * (1.0 + 1e-12));
}

TEST_CASE("truncation decay: doubling R barely moves the core") {
  const int ns = 33;
  const StripField f10 =
      solve_bvp(StripGrid{10.0, 201, ns}, BoundaryProfile::gaussian(0.25));
  const StripField f20 =
      solve_bvp(StripGrid{20.0, 401, ns}, BoundaryProfile::gaussian(0.25));
  double vmax = 0.0;
  for (double val : f10.v) vmax = std::max(vmax, std::abs(val));
  double dmax = 0.0;
  for (int i = 0; i < 201; ++i) {
    const double r = f10.grid.r(i);
    if (std::abs(r) > 5.0) continue;
    // the R=20 grid holds the same r at index i + 100
    for (int j = 0; j < ns; ++j) {
      dmax = std::max(dmax, std::abs(f10.value(i, j) - f20.value(i + 100, j)));
    }
  }
  CHECK(dmax <= 1e-3 * vmax);
}

TEST_CASE("operator on quadratic data matches hand evaluation") {
  const StripGrid g{4.0, 65, 33};
  const StripField field = sample_field(g, [](double, double s) { return s * s; });
  const auto res = apply_operator(field);
  for (int k = 0; k < 20; ++k) {
    const int i = 3 + 2 * k;
    const int j = 1 + k;
    const double s = g.s(j);
    const double expected = 2.0 + 2.0 * s * coefficient_G(s);
    CHECK(res[g.idx(i, j)] == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("operator residuals: constants and solved fields") {
  const StripGrid g{5.0, 97, 25};
  const StripField constant = sample_field(g, [](double, double) { return 3.5; });
  for (double val : apply_operator(constant)) CHECK(val == 0.0);

  const StripField solved = solve_bvp(g, BoundaryProfile::gaussian(0.25));
  double worst = 0.0;
  for (double val : apply_operator(solved)) worst = std::max(worst, std::abs(val));
  CHECK(worst <= 1e-9);
  CHECK(solved.stats.max_field_residual == doctest::Approx(worst));
}

TEST_CASE("solver failure surfaces as an error") {
  const StripGrid g{5.0, 65, 17};
  SolveOptions opts;
  opts.residual_tol = 1e-30;  // unattainable in double precision
  CHECK_THROWS_AS(solve_bvp(g, BoundaryProfile::gaussian(0.25), opts),
                  solver_error);
}

TEST_CASE("reflection: evenness, node count, residual symmetry") {
  const StripGrid g{5.0, 97, 25};
  const StripField solved = solve_bvp(g, BoundaryProfile::gaussian(0.25));
  const ExtendedStripField ext = reflect_extend(solved);

  CHECK(ext.n_s_ext() == 2 * g.n_s - 1);
  for (int i = 0; i < g.n_r; ++i) {
    for (int j = 0; j < g.n_s; ++j) {
      CHECK(ext.value(i, (g.n_s - 1) + j) == ext.value(i, (g.n_s - 1) - j));
    }
  }

  const auto res = apply_operator(ext);
  double upper = 0.0, lower = 0.0;
  for (int i = 1; i < g.n_r - 1; ++i) {
    for (int j = 1; j < ext.n_s_ext() - 1; ++j) {
      const double val = std::abs(res[ext.idx(i, j)]);
      if (j > g.n_s - 1) upper = std::max(upper, val);
      if (j < g.n_s - 1) lower = std::max(lower, val);
    }
  }
  CHECK(lower <= upper + 1e-12);
}

TEST_CASE("reflection refuses fields violating the Neumann condition") {
  const StripGrid g{5.0, 65, 17};
  const StripField bad = sample_field(g, [](double, double s) { return s; });
  CHECK(bad.neumann_residual() > 1e-6);
  CHECK_THROWS_AS(reflect_extend(bad), std::domain_error);

  const StripField solved = solve_bvp(g, BoundaryProfile::gaussian(0.25));
  CHECK(solved.neumann_residual() == 0.0);
  CHECK_NOTHROW(reflect_extend(solved));
}

TEST_CASE("derivative table: constants and analytic fields") {
  const StripGrid g{4.0, 257, 65};
  const StripField ones = sample_field(g, [](double, double) { return 1.0; });
  const DerivativeTable table_ones(ones);
  const StripDerivs d0 = table_ones.eval(0.37, 0.81);
  CHECK(std::abs(d0.v - 1.0) <= 1e-13);
  for (double val : {d0.v_r, d0.v_s, d0.v_rr, d0.v_rs, d0.v_ss}) {
    CHECK(std::abs(val) <= 1e-12);
  }

  // cos(r) cos(s) has closed-form derivatives; sampled accuracy is O(h^4)
  const StripField trig = sample_field(g, mms);
  const DerivativeTable table(trig);
  for (int k = 0; k < 50; ++k) {
    const double r = -3.0 + 6.0 * k / 49.0;
    const double s = 0.03 + (kHalfPi - 0.06) * ((k * 7) % 50) / 50.0;
    const StripDerivs d = table.eval(r, s);
    const double cr = std::cos(r), sr = std::sin(r);
    const double cs = std::cos(s), ss = std::sin(s);
    CHECK(std::abs(d.v - cr * cs) <= 2e-6);
    CHECK(std::abs(d.v_r + sr * cs) <= 5e-5);
    CHECK(std::abs(d.v_s + cr * ss) <= 5e-5);
    CHECK(std::abs(d.v_rr + cr * cs) <= 5e-4);
    CHECK(std::abs(d.v_rs - sr * ss) <= 5e-4);
    CHECK(std::abs(d.v_ss + cr * cs) <= 5e-4);
  }
}

TEST_CASE("derivative table window") {
  const StripGrid g{4.0, 65, 17};
  const StripField solved = solve_bvp(g, BoundaryProfile::gaussian(0.25));
  const DerivativeTable table(solved);
  CHECK_THROWS_AS(table.eval(3.999, 0.5), std::out_of_range);
  CHECK_NOTHROW(table.eval(table.r_max(), 0.5));
  CHECK_NOTHROW(table.eval(0.0, kHalfPi));  // top edge uses shifted windows

  const StripDerivs d = strip_derivatives(solved, StripPoint{0.5, 0.7});
  CHECK(std::isfinite(d.v_ss));
}

TEST_CASE("solved field obeys an exponential decay envelope") {
  const StripGrid g{8.0, 257, 65};
  const StripField solved = solve_bvp(g, BoundaryProfile::gaussian(0.25));
  const DerivativeTable table(solved);
  const double c = table.fit_decay_constant();
  CHECK(std::isfinite(c));
  CHECK(c > 0.0);
  // the envelope must actually dominate: spot-check a few nodes
  for (int i = 2; i < g.n_r - 2; i += 16) {
    const StripDerivs d = table.eval(g.r(i), 0.4);
    const double total = std::abs(d.v) + std::abs(d.v_r) + std::abs(d.v_s) +
                         std::abs(d.v_rr) + std::abs(d.v_rs) + std::abs(d.v_ss);
    CHECK(total <= c * std::exp(-std::abs(g.r(i))) * (1.0 + 1e-9));
  }
}

}  // TEST_SUITE
