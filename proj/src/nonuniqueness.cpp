#include "nslab/nonuniqueness.hpp"

#include <algorithm>
#include <cmath>

#include "nslab/errors.hpp"

namespace nslab {

EnergyLedger energy_ledger(const SobolevReport& report) {
  if (!report.l2_du.converged || !report.h1_du.converged) {
    throw config_error("energy_ledger: L2/H1 ladders not converged");
  }
  EnergyLedger ledger;
  ledger.E0 = report.l2_du.value;
  ledger.D = report.h1_du.value;
  if (!(ledger.E0 > 0.0)) throw config_error("energy_ledger: zero-energy field");
  if (!(ledger.D > 0.0)) throw config_error("energy_ledger: zero dissipation");
  ledger.k_star = 2.0 * ledger.D / ledger.E0;
  return ledger;
}

double energy_inequality_margin(const EnergyLedger& ledger, double f0, double k,
                                double t) {
  if (k < 0.0) throw config_error("energy_inequality_margin: k must be >= 0");
  if (t < 0.0) throw config_error("energy_inequality_margin: t must be >= 0");
  if (k == 0.0) return -4.0 * ledger.D * t * f0 * f0;
  const double decay = 1.0 - std::exp(-2.0 * k * t);
  return f0 * f0 * decay * (ledger.E0 - 2.0 * ledger.D / k);
}

double family_separation(const EnergyLedger& ledger, double f0, double k1,
                         double k2, double t) {
  return std::abs(f0) * std::abs(std::exp(-k1 * t) - std::exp(-k2 * t)) *
         std::sqrt(ledger.E0);
}

double ModulatedSolution::pressure(double t, DiskPoint z) const {
  const OneFormJet j = handle->jet(z);
  const double f = mod.at(t);
  return -mod.rate(t) * j.u - 0.5 * f * f * j.norm_du * j.norm_du;
}

std::array<double, 2> ModulatedSolution::velocity_form(double t,
                                                       DiskPoint z) const {
  const OneFormJet j = handle->jet(z);
  const double f = mod.at(t);
  return {f * j.u_x, f * j.u_y};
}

namespace {

// d||du||^2 = d(P^2 (u_x^2 + u_y^2)), analytic from the jet
std::array<double, 2> d_norm_du_sq(const OneFormJet& j) {
  const double p = one_minus_zsq(j.z);
  const double grad_sq = j.u_x * j.u_x + j.u_y * j.u_y;
  const double dx = -4.0 * j.z.x * p * grad_sq +
                    p * p * 2.0 * (j.u_x * j.u_xx + j.u_y * j.u_xy);
  const double dy = -4.0 * j.z.y * p * grad_sq +
                    p * p * 2.0 * (j.u_x * j.u_xy + j.u_y * j.u_yy);
  return {dx, dy};
}

}  // namespace

std::array<double, 2> ns_residual(const ModulatedSolution& sol, double t,
                                  DiskPoint z, double fd_step) {
  const OneFormJet j = sol.handle->jet(z);
  const double f = sol.mod.at(t);
  const double fp = sol.mod.rate(t);

  const auto dK = d_norm_du_sq(j);
  // time derivative and convective term
  std::array<double, 2> res{fp * j.u_x, fp * j.u_y};
  res[0] += 0.5 * f * f * dK[0];
  res[1] += 0.5 * f * f * dK[1];
  // pressure gradient, analytic differentiation of the two terms of p
  res[0] += -fp * j.u_x - 0.5 * f * f * dK[0];
  res[1] += -fp * j.u_y - 0.5 * f * f * dK[1];
  // viscous term: -nu Hodge(U) = +nu f d(harmonic residual)
  const auto dres = sol.handle->hodge_residual(z, fd_step);
  res[0] += sol.mod.nu * f * dres[0];
  res[1] += sol.mod.nu * f * dres[1];
  return res;
}

ConvectiveCheck convective_identity_check(const HarmonicFieldHandle& handle,
                                          DiskPoint z, double fd_step) {
  const OneFormJet j = handle.jet(z);
  const GeometryJet geo = geometry_jet(z);
  const double p = one_minus_zsq(z);
  const double p2 = p * p;

  // vector components of w = (du)^sharp and their coordinate derivatives
  const double wx = p2 * j.u_x, wy = p2 * j.u_y;
  const double dxp2 = -4.0 * z.x * p, dyp2 = -4.0 * z.y * p;
  const double dwx_dx = dxp2 * j.u_x + p2 * j.u_xx;
  const double dwx_dy = dyp2 * j.u_x + p2 * j.u_xy;
  const double dwy_dx = dxp2 * j.u_y + p2 * j.u_xy;
  const double dwy_dy = dyp2 * j.u_y + p2 * j.u_yy;

  ConvectiveCheck out;
  out.direct[0] = wx * dwx_dx + wy * dwx_dy + geo.gamma_x[0] * wx * wx +
                  2.0 * geo.gamma_x[1] * wx * wy + geo.gamma_x[3] * wy * wy;
  out.direct[1] = wx * dwy_dx + wy * dwy_dy + geo.gamma_y[0] * wx * wx +
                  2.0 * geo.gamma_y[1] * wx * wy + geo.gamma_y[3] * wy * wy;

  // gradient route: (grad ||du||^2/2)^i = g^ii d_i(||du||^2)/2 by central FD
  const double h = std::min(fd_step, 0.45 * z.x);
  auto K = [&](DiskPoint q) {
    const OneFormJet jj = handle.jet(q);
    return jj.norm_du * jj.norm_du;
  };
  const double dKx = (K({z.x + h, z.y}) - K({z.x - h, z.y})) / (2.0 * h);
  const double dKy = (K({z.x, z.y + h}) - K({z.x, z.y - h})) / (2.0 * h);
  out.gradient_fd = {0.5 * p2 * dKx, 0.5 * p2 * dKy};

  const double mag = std::max(
      {std::hypot(out.direct[0], out.direct[1]),
       std::hypot(out.gradient_fd[0], out.gradient_fd[1]), 1e-300});
  out.rel_err = std::hypot(out.direct[0] - out.gradient_fd[0],
                           out.direct[1] - out.gradient_fd[1]) /
                mag;
  return out;
}

std::array<double, 2> euler_residual(const HarmonicFieldHandle& handle,
                                     DiskPoint z, double fd_step) {
  const ConvectiveCheck chk = convective_identity_check(handle, z, fd_step);
  return {chk.direct[0] - chk.gradient_fd[0], chk.direct[1] - chk.gradient_fd[1]};
}

}  // namespace nslab
