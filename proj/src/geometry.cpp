#include "nslab/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace nslab {

namespace {
const Complex kI{0.0, 1.0};
}

bool in_half_disk_interior(DiskPoint z) {
  return z.x > 0.0 && z.x * z.x + z.y * z.y < 1.0;
}

bool on_axis_L(DiskPoint z, double tol) {
  return std::abs(z.x) <= tol && std::abs(z.y) < 1.0;
}

double distance_to_corners(DiskPoint z) {
  const double d_plus = std::hypot(z.x, z.y - 1.0);
  const double d_minus = std::hypot(z.x, z.y + 1.0);
  return std::min(d_plus, d_minus);
}

Complex phi(Complex w) {
  // Two algebraically identical forms; each is overflow-free on its half of
  // the strip.  (e^{-w}-1)/(e^{-w}+1) = (1-e^{w})/(1+e^{w}).
  if (w.real() >= 0.0) {
    const Complex e = std::exp(-w);
    return kI * (e - 1.0) / (e + 1.0);
  }
  const Complex e = std::exp(w);
  return kI * (1.0 - e) / (1.0 + e);
}

Complex psi(Complex z) {
  const Complex num = kI - z;
  const Complex den = kI + z;
  if (num == Complex{0.0, 0.0} || den == Complex{0.0, 0.0}) {
    throw std::domain_error("psi: logarithmic singularity at z = +-i");
  }
  return std::log(num / den);
}

Complex psi_prime(Complex z) {
  const Complex q = 1.0 + z * z;
  if (q == Complex{0.0, 0.0}) {
    throw std::domain_error("psi_prime: singular at z = +-i");
  }
  return 2.0 * kI / q;
}

Complex psi_second(Complex z) {
  const Complex q = 1.0 + z * z;
  if (q == Complex{0.0, 0.0}) {
    throw std::domain_error("psi_second: singular at z = +-i");
  }
  return -4.0 * kI * z / (q * q);
}

double warp_f(DiskPoint z) {
  const double p = one_minus_zsq(z);
  if (p <= 0.0) {
    throw std::domain_error("warp_f: point outside the unit disk");
  }
  if (z.x < 0.0) {
    throw std::domain_error("warp_f: x < 0 is outside H u L");
  }
  const double t = 2.0 * z.x / p;
  return std::sinh(0.5 * std::asinh(t));
}

double warp_f_strip(double s) {
  if (s < 0.0) {
    throw std::domain_error("warp_f_strip: s < 0");
  }
  if (s >= kHalfPi) {
    throw std::range_error("warp_f_strip: diverges at s = pi/2");
  }
  return std::sin(0.5 * s) / std::sqrt(std::cos(s));
}

double coefficient_G(double s) {
  if (s <= 0.0 || s >= kHalfPi) {
    throw std::range_error("coefficient_G: G diverges at s = 0 and s = pi/2");
  }
  const double c = std::cos(s);
  return (1.0 + c) / (2.0 * std::sin(s) * c);
}

double coefficient_G_times_sin(double s) {
  if (s < 0.0 || s >= kHalfPi) {
    throw std::range_error("coefficient_G_times_sin: needs 0 <= s < pi/2");
  }
  return 0.5 * (1.0 + 1.0 / std::cos(s));
}

GeometryJet geometry_jet(DiskPoint z) {
  if (!in_half_disk_interior(z)) {
    throw std::domain_error("geometry_jet: point not in the open half-disk");
  }
  if (distance_to_corners(z) < kCornerTol) {
    throw std::domain_error("geometry_jet: too close to the corners z = +-i");
  }

  GeometryJet jet;
  jet.z = z;

  const double p = one_minus_zsq(z);
  jet.lambda = 1.0 / (p * p);

  // f = sinh(rho), rho = arcsinh(t)/2, t = 2x/(1-|z|^2).
  const double t = 2.0 * z.x / p;
  const double t_x = 2.0 / p + 4.0 * z.x * z.x / (p * p);
  const double t_y = 4.0 * z.x * z.y / (p * p);
  const double rho = 0.5 * std::asinh(t);
  const double dr = 0.5 / std::sqrt(1.0 + t * t);  // d(rho)/dt
  jet.f = std::sinh(rho);
  const double ch = std::cosh(rho);
  jet.f_x = ch * dr * t_x;
  jet.f_y = ch * dr * t_y;

  const Complex zc = to_complex(z);
  jet.psi_w = psi(zc);
  jet.psi_d1 = psi_prime(zc);

  jet.F_x = p * p * jet.f_x / jet.f;
  jet.F_y = p * p * jet.f_y / jet.f;

  // Christoffel arrays of g = (dx^2+dy^2)/p^2 + f^2 dtheta^2, coefficient
  // order {xx, xy, yx, yy, theta-theta}.
  const double a = 2.0 * z.x / p;
  const double b = 2.0 * z.y / p;
  jet.gamma_x = {a, b, b, -a, -p * p * jet.f * jet.f_x};
  jet.gamma_y = {-b, a, a, b, -p * p * jet.f * jet.f_y};

  return jet;
}

}  // namespace nslab
