#include "nslab/harmonic_field.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <stdexcept>

namespace nslab {

CovariantHessian covariant_derivative(const OneFormJet& jet, const GeometryJet& geo) {
  CovariantHessian h;
  h.xx = jet.u_xx - (jet.u_x * geo.gamma_x[0] + jet.u_y * geo.gamma_y[0]);
  h.xy = jet.u_xy - (jet.u_x * geo.gamma_x[1] + jet.u_y * geo.gamma_y[1]);
  h.yy = jet.u_yy - (jet.u_x * geo.gamma_x[3] + jet.u_y * geo.gamma_y[3]);
  h.tt = -(jet.u_x * geo.gamma_x[4] + jet.u_y * geo.gamma_y[4]);
  return h;
}

double nabla_du_norm_sq(const CovariantHessian& h, const GeometryJet& geo) {
  const double p = one_minus_zsq(geo.z);
  const double p4 = p * p * p * p;
  const double f2 = geo.f * geo.f;
  return p4 * (h.xx * h.xx + 2.0 * h.xy * h.xy + h.yy * h.yy) +
         h.tt * h.tt / (f2 * f2);
}

HarmonicFieldHandle::HarmonicFieldHandle(StripField field, double window_margin)
    : field_(std::move(field)), table_(field_) {
  const double margin =
      window_margin >= 0.0 ? window_margin : 5.0 * field_.grid.h_r();
  window_r_ = field_.grid.R - margin;
  if (window_r_ <= 0.0) {
    throw config_error("HarmonicFieldHandle: window margin swallows the grid");
  }
}

bool HarmonicFieldHandle::in_window(DiskPoint z) const {
  const Complex w = psi(to_complex(z));
  return std::abs(w.real()) <= window_r_;
}

OneFormJet HarmonicFieldHandle::jet(DiskPoint z, bool allow_extrapolation) const {
  if (!in_half_disk_interior(z)) {
    throw std::domain_error("jet: point not in the open half-disk");
  }
  if (distance_to_corners(z) < kCornerTol) {
    throw std::domain_error("jet: too close to the corners z = +-i");
  }

  OneFormJet jet;
  jet.z = z;

  const Complex zc = to_complex(z);
  const Complex w = psi(zc);
  const double r = w.real();
  const double s = std::clamp(w.imag(), 0.0, kHalfPi);

  if (std::abs(r) > window_r_) {
    if (!allow_extrapolation) {
      throw std::out_of_range("jet: psi(z) beyond the strip truncation window");
    }
    jet.extrapolated = true;  // decay model v = 0
    return jet;
  }

  const StripDerivs d = table_.eval(r, s);
  const Complex d1 = psi_prime(zc);
  const Complex d2 = psi_second(zc);
  const double A = d1.real(), B = d1.imag();
  const double C = d2.real(), D = d2.imag();

  jet.u = d.v;
  jet.u_x = A * d.v_r + B * d.v_s;
  jet.u_y = -B * d.v_r + A * d.v_s;
  jet.u_xx = A * A * d.v_rr + 2.0 * A * B * d.v_rs + B * B * d.v_ss +
             C * d.v_r + D * d.v_s;
  jet.u_xy = -A * B * d.v_rr + (A * A - B * B) * d.v_rs + A * B * d.v_ss -
             D * d.v_r + C * d.v_s;
  jet.u_yy = B * B * d.v_rr - 2.0 * A * B * d.v_rs + A * A * d.v_ss -
             C * d.v_r - D * d.v_s;

  const double p = one_minus_zsq(z);
  jet.laplacian = p * p * (jet.u_xx + jet.u_yy);
  jet.norm_du = p * std::hypot(jet.u_x, jet.u_y);

  const GeometryJet geo = geometry_jet(z);
  jet.norm_nabla_du_sq = nabla_du_norm_sq(covariant_derivative(jet, geo), geo);
  return jet;
}

double HarmonicFieldHandle::harmonic_residual(DiskPoint z) const {
  const OneFormJet j = jet(z);
  const GeometryJet geo = geometry_jet(z);
  return j.laplacian + j.u_x * geo.F_x + j.u_y * geo.F_y;
}

std::array<double, 2> HarmonicFieldHandle::hodge_residual(DiskPoint z,
                                                          double step) const {
  // keep the FD cross clear of the axis L
  const double h = std::min(step, 0.45 * z.x);
  const double rx = (harmonic_residual({z.x + h, z.y}) -
                     harmonic_residual({z.x - h, z.y})) /
                    (2.0 * h);
  const double ry = (harmonic_residual({z.x, z.y + h}) -
                     harmonic_residual({z.x, z.y - h})) /
                    (2.0 * h);
  return {rx, ry};
}

PointwiseBoundsReport verify_pointwise_bounds(const HarmonicFieldHandle& handle,
                                              long n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  double sup1 = 0.0, sup2 = 0.0;
  DiskPoint at1, at2;
  long used = 0;
  for (long k = 0; k < n; ++k) {
    const double rho = std::sqrt(unit(rng));
    const double alpha = (unit(rng) - 0.5) * kPi;
    const DiskPoint z{rho * std::cos(alpha), rho * std::sin(alpha)};
    if (!in_half_disk_interior(z)) continue;
    if (distance_to_corners(z) < kCornerTol) continue;
    if (!handle.in_window(z)) continue;
    const OneFormJet j = handle.jet(z);
    ++used;
    const double first = std::abs(j.u_x) + std::abs(j.u_y);
    if (first > sup1) {
      sup1 = first;
      at1 = z;
    }
    const double second = (std::abs(j.u_xx) + std::abs(j.u_xy) + std::abs(j.u_yy)) /
                          std::abs(psi_prime(to_complex(z)));
    if (second > sup2) {
      sup2 = second;
      at2 = z;
    }
  }

  PointwiseBoundsReport rep;
  rep.first_order.lemma = "u-first-order-bound";
  rep.first_order.samples = used;
  rep.first_order.worst_value = sup1;
  rep.first_order.worst_location = at1.x;
  rep.first_order.pass = std::isfinite(sup1);
  rep.first_order.detail = "sup |u_x|+|u_y| (fitted constant)";
  rep.second_order.lemma = "u-second-order-bound";
  rep.second_order.samples = used;
  rep.second_order.worst_value = sup2;
  rep.second_order.worst_location = at2.x;
  rep.second_order.pass = std::isfinite(sup2);
  rep.second_order.detail = "sup (|u_xx|+|u_xy|+|u_yy|)/|psi'| (fitted constant)";
  return rep;
}

void write_jet_csv(std::ostream& os, const HarmonicFieldHandle& handle,
                   std::span<const DiskPoint> points) {
  os << "x,y,u,u_x,u_y,u_xx,u_xy,u_yy,laplacian,norm_du,norm_nabla_du_sq,"
        "extrapolated\n";
  char buf[320];
  for (const DiskPoint& z : points) {
    const OneFormJet j = handle.jet(z, /*allow_extrapolation=*/true);
    std::snprintf(buf, sizeof(buf),
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                  "%.17g,%d\n",
                  z.x, z.y, j.u, j.u_x, j.u_y, j.u_xx, j.u_xy, j.u_yy,
                  j.laplacian, j.norm_du, j.norm_nabla_du_sq,
                  j.extrapolated ? 1 : 0);
    os << buf;
  }
}

}  // namespace nslab
