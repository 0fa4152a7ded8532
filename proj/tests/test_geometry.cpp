#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "nslab/geometry.hpp"

using namespace nslab;

namespace {

// uniform sample of the open half-disk, bounded away from the corners
DiskPoint random_interior(std::mt19937_64& rng, double corner_margin = 1e-3) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (;;) {
    const double rho = std::sqrt(unit(rng)) * 0.999;
    const double alpha = (unit(rng) - 0.5) * kPi * 0.999;
    const DiskPoint z{rho * std::cos(alpha) + 1e-6, rho * std::sin(alpha)};
    if (!in_half_disk_interior(z)) continue;
    if (distance_to_corners(z) < corner_margin) continue;
    return z;
  }
}

// 4th-order central difference of a complex map along the x direction
Complex fd4_dx(Complex (*fn)(Complex), Complex z, double h) {
  return (-fn(z + 2.0 * h) + 8.0 * fn(z + h) - 8.0 * fn(z - h) + fn(z - 2.0 * h)) /
         (12.0 * h);
}

// the sqrt-expansion of f printed alongside the L^2 estimate
double warp_f_expanded(DiskPoint z) {
  const double p = one_minus_zsq(z);
  const double t = 2.0 * z.x / p;
  const double w = t + std::sqrt(1.0 + t * t);
  return -0.5 / std::sqrt(w) + 0.5 * std::sqrt(w);
}

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("phi at distinguished points") {
  CHECK(std::abs(phi({0.0, 0.0})) == doctest::Approx(0.0).epsilon(1e-15));
  // w = i pi/2 lands on the boundary circle
  const Complex z = phi(Complex{0.0, kHalfPi});
  CHECK(std::abs(z) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(z.real() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("phi and psi are mutually inverse") {
  std::mt19937_64 rng(42);
  for (int k = 0; k < 100; ++k) {
    const DiskPoint zp = random_interior(rng);
    const Complex z = to_complex(zp);
    const Complex round_trip = phi(psi(z));
    CHECK(std::abs(round_trip - z) <= 1e-12);
  }
}

TEST_CASE("phi is stable on far strip rays") {
  // both corners are approached without overflow
  const Complex far_left = phi(Complex{-800.0, 0.3});
  const Complex far_right = phi(Complex{800.0, 0.3});
  CHECK(std::abs(far_left - Complex{0.0, 1.0}) < 1e-12);
  CHECK(std::abs(far_right - Complex{0.0, -1.0}) < 1e-12);
}

TEST_CASE("psi maps the axis to the real line and the real radius to s-axis") {
  for (double y : {-0.9, -0.4, 0.0, 0.3, 0.8}) {
    CHECK(std::abs(psi(Complex{0.0, y}).imag()) <= 1e-15);
  }
  for (double x : {0.1, 0.5, 0.9}) {
    CHECK(std::abs(psi(Complex{x, 0.0}).real()) <= 1e-15);
  }
  // z = 0.5: (i - 1/2)/(i + 1/2) = 0.6 + 0.8i, so psi = i atan2(0.8, 0.6)
  const Complex w = psi(Complex{0.5, 0.0});
  CHECK(w.real() == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(w.imag() == doctest::Approx(std::atan2(0.8, 0.6)).epsilon(1e-14));
}

TEST_CASE("psi throws at the corners") {
  CHECK_THROWS_AS(psi(Complex{0.0, 1.0}), std::domain_error);
  CHECK_THROWS_AS(psi_prime(Complex{0.0, -1.0}), std::domain_error);
}

TEST_CASE("psi_prime closed form vs finite differences") {
  CHECK(std::abs(psi_prime(Complex{0.0, 0.0})) == doctest::Approx(2.0));
  std::mt19937_64 rng(7);
  for (int k = 0; k < 100; ++k) {
    const DiskPoint zp = random_interior(rng, 5e-2);
    const Complex z = to_complex(zp);
    const double h = 1e-3 * std::min(1.0, distance_to_corners(zp));
    const Complex fd = fd4_dx(&psi, z, h);
    const Complex cf = psi_prime(z);
    CHECK(std::abs(fd - cf) / std::abs(cf) <= 1e-8);
  }
}

TEST_CASE("second derivative bound |psi''| <= |psi'|^2 on the disk") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 10000; ++k) {
    const Complex z = to_complex(random_interior(rng));
    const double d1 = std::abs(psi_prime(z));
    const double d2 = std::abs(psi_second(z));
    CHECK(d2 <= d1 * d1 * (1.0 + 1e-13));
  }
}

TEST_CASE("warp function vanishes exactly on the axis") {
  for (double y : {-0.7, 0.0, 0.5, 0.95}) {
    CHECK(warp_f({0.0, y}) == 0.0);
  }
  CHECK_THROWS_AS(warp_f({1.2, 0.0}), std::domain_error);
  CHECK_THROWS_AS(warp_f({-0.1, 0.0}), std::domain_error);
}

TEST_CASE("warp function agrees with its strip form") {
  const Complex w{1.0, 0.7};
  const Complex z = phi(w);
  CHECK(std::abs(warp_f({z.real(), z.imag()}) - warp_f_strip(0.7)) <= 1e-10);

  // f~ depends only on s
  for (double s : {0.3, 0.9, 1.4}) {
    double lo = 1e300, hi = -1e300;
    for (double r : {-5.0, 0.0, 5.0}) {
      const Complex q = phi(Complex{r, s});
      const double val = warp_f({q.real(), q.imag()});
      lo = std::min(lo, val);
      hi = std::max(hi, val);
    }
    CHECK(hi - lo <= 1e-10);
  }
}

TEST_CASE("warp function equals the sqrt expansion") {
  // half-angle identity sinh(arcsinh(t)/2) at t = 0.1, 1, 10
  for (double t : {0.1, 1.0, 10.0}) {
    const double direct = std::sinh(0.5 * std::asinh(t));
    const double w = t + std::sqrt(1.0 + t * t);
    const double expanded = -0.5 / std::sqrt(w) + 0.5 * std::sqrt(w);
    CHECK(direct == doctest::Approx(expanded).epsilon(1e-12));
  }
  std::mt19937_64 rng(3);
  for (int k = 0; k < 1000; ++k) {
    const DiskPoint z = random_interior(rng);
    CHECK(warp_f(z) == doctest::Approx(warp_f_expanded(z)).epsilon(1e-12));
  }
}

TEST_CASE("warp strip form: endpoints and small-s asymptotics") {
  CHECK(warp_f_strip(0.0) == 0.0);
  CHECK(warp_f_strip(1e-4) / (0.5e-4) == doctest::Approx(1.0).epsilon(1e-4));
  CHECK_THROWS_AS(warp_f_strip(kHalfPi), std::range_error);
  CHECK_THROWS_AS(warp_f_strip(-0.1), std::domain_error);
  // strictly increasing
  double prev = 0.0;
  for (int k = 1; k < 200; ++k) {
    const double val = warp_f_strip(k * (kHalfPi - 1e-6) / 200.0);
    CHECK(val > prev);
    prev = val;
  }
}

TEST_CASE("G closed form, limits, and lower bound") {
  CHECK(coefficient_G(kPi / 4.0) ==
        doctest::Approx((2.0 + std::sqrt(2.0)) / 2.0).epsilon(1e-13));
  CHECK(std::abs(1e-5 * coefficient_G(1e-5) - 1.0) <= 1e-4);
  CHECK_THROWS_AS(coefficient_G(0.0), std::range_error);
  CHECK_THROWS_AS(coefficient_G(kHalfPi), std::range_error);

  // radical form printed with the supersolution lemma
  for (int k = 1; k < 200; ++k) {
    const double s = k * kHalfPi / 200.0;
    const double sp = std::sqrt(1.0 + std::sin(s));
    const double sm = std::sqrt(1.0 - std::sin(s));
    const double radical = 0.5 * ((sp + sm) / (sp - sm) + std::tan(s));
    CHECK(coefficient_G(s) == doctest::Approx(radical).epsilon(1e-12));
  }

  // G >= (1 + 1/(2 cos s))/2 on (sqrt2/2, pi/2)
  for (int k = 0; k < 1000; ++k) {
    const double s = std::sqrt(2.0) / 2.0 +
                     (kHalfPi - 1e-9 - std::sqrt(2.0) / 2.0) * (k + 0.5) / 1000.0;
    CHECK(coefficient_G(s) >= 0.5 * (1.0 + 0.5 / std::cos(s)));
  }
}

TEST_CASE("G matches the numerical derivative of log warp") {
  // 6th-order central difference, h = 1e-4
  const double h = 1e-4;
  static const double w6[7] = {-1.0 / 60, 3.0 / 20, -3.0 / 4, 0.0,
                               3.0 / 4,   -3.0 / 20, 1.0 / 60};
  for (int k = 0; k <= 300; ++k) {
    const double s = 0.05 + (kHalfPi - 0.1) * k / 300.0;
    double fd = 0.0;
    for (int m = -3; m <= 3; ++m) {
      fd += w6[m + 3] * std::log(warp_f_strip(s + m * h));
    }
    fd /= h;
    CHECK(std::abs(coefficient_G(s) - fd) <= 1e-7);
  }
}

TEST_CASE("G times sin extends continuously to the axis") {
  CHECK(coefficient_G_times_sin(0.0) == doctest::Approx(1.0));
  for (double s : {0.2, 0.8, 1.3}) {
    CHECK(coefficient_G_times_sin(s) ==
          doctest::Approx(coefficient_G(s) * std::sin(s)).epsilon(1e-13));
  }
}

TEST_CASE("geometry jet at a real point") {
  const GeometryJet jet = geometry_jet({0.3, 0.0});
  const double p = 1.0 - 0.09;
  CHECK(jet.gamma_x[0] == doctest::Approx(0.6 / p).epsilon(1e-14));
  // y-proportional coefficients vanish on the real axis
  CHECK(jet.gamma_x[1] == 0.0);
  CHECK(jet.gamma_x[2] == 0.0);
  CHECK(jet.gamma_y[0] == 0.0);
  CHECK(jet.gamma_y[3] == 0.0);
  CHECK(jet.lambda == doctest::Approx(1.0 / (p * p)).epsilon(1e-14));
}

TEST_CASE("jet refuses the axis, corners, and exterior") {
  CHECK_THROWS_AS(geometry_jet({0.0, 0.2}), std::domain_error);
  CHECK_THROWS_AS(geometry_jet({1e-4, 1.0 - 1e-4}), std::domain_error);
  CHECK_THROWS_AS(geometry_jet({0.8, 0.8}), std::domain_error);
}

TEST_CASE("coframe norms") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 200; ++k) {
    const DiskPoint z = random_interior(rng);
    const GeometryJet jet = geometry_jet(z);
    const double p = one_minus_zsq(z);
    // |dx|_g = |dy|_g = sqrt(g^xx) = 1 - |z|^2, |dtheta|_g = 1/f
    CHECK(std::sqrt(1.0 / jet.lambda) == doctest::Approx(p).epsilon(1e-14));
    CHECK(jet.f == doctest::Approx(warp_f(z)).epsilon(1e-14));
    CHECK(jet.f > 0.0);
  }
}

TEST_CASE("Christoffel closed forms vs finite-difference metric oracle") {
  // Gamma^k_ij = g^kl (d_j g_il + d_i g_jl - d_l g_ij)/2 with the metric
  // diag(lambda, lambda, f^2) differentiated numerically, step 1e-5.
  auto metric = [](DiskPoint z, int a) -> double {
    const double p = one_minus_zsq(z);
    if (a < 2) return 1.0 / (p * p);
    const double f = warp_f(z);
    return f * f;
  };
  const double h = 1e-5;
  auto dmetric = [&](DiskPoint z, int a, int dir) -> double {
    DiskPoint zp = z, zm = z;
    (dir == 0 ? zp.x : zp.y) += h;
    (dir == 0 ? zm.x : zm.y) -= h;
    return (metric(zp, a) - metric(zm, a)) / (2.0 * h);
  };

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const DiskPoint z = random_interior(rng, 5e-2);
    if (z.x < 5e-2 || one_minus_zsq(z) < 5e-2) continue;
    const GeometryJet jet = geometry_jet(z);
    const double p = one_minus_zsq(z);

    // diag metric: Gamma^x_ij = (d_j g_ix + d_i g_jx - d_x g_ij) g^xx / 2
    const double gxx_inv = p * p;
    const double dl_x = dmetric(z, 0, 0);  // d_x lambda
    const double dl_y = dmetric(z, 0, 1);
    const double dth_x = dmetric(z, 2, 0);  // d_x f^2
    const double dth_y = dmetric(z, 2, 1);

    const double fd_xxx = 0.5 * gxx_inv * dl_x;
    const double fd_xxy = 0.5 * gxx_inv * dl_y;
    const double fd_xyy = -0.5 * gxx_inv * dl_x;
    const double fd_xtt = -0.5 * gxx_inv * dth_x;
    const double fd_yxx = -0.5 * gxx_inv * dl_y;
    const double fd_yxy = 0.5 * gxx_inv * dl_x;
    const double fd_yyy = 0.5 * gxx_inv * dl_y;
    const double fd_ytt = -0.5 * gxx_inv * dth_y;

    auto close = [](double a, double b) {
      const double scale = std::max({std::abs(a), std::abs(b), 1e-8});
      return std::abs(a - b) / scale <= 1e-6;
    };
    CHECK(close(jet.gamma_x[0], fd_xxx));
    CHECK(close(jet.gamma_x[1], fd_xxy));
    CHECK(close(jet.gamma_x[2], fd_xxy));
    CHECK(close(jet.gamma_x[3], fd_xyy));
    CHECK(close(jet.gamma_x[4], fd_xtt));
    CHECK(close(jet.gamma_y[0], fd_yxx));
    CHECK(close(jet.gamma_y[1], fd_yxy));
    CHECK(close(jet.gamma_y[2], fd_yxy));
    CHECK(close(jet.gamma_y[3], fd_yyy));
    CHECK(close(jet.gamma_y[4], fd_ytt));
  }
}

}  // TEST_SUITE
