#pragma once

/// @file nonuniqueness.hpp
/// @brief The modulated family U(t) = f(t) (du)^sharp of Leray-Hopf
/// solutions sharing the initial datum f0 (du)^sharp.
///
/// With f(t) = f0 e^{-kt}, the energy identity is closed form: the energy
/// inequality margin is f0^2 (1 - e^{-2kt})(E0 - 2D/k), nonnegative exactly
/// when k >= k* = 2D/E0.  The viscous term vanishes for harmonic du, so the
/// whole family solves the system for every viscosity; the assembled PDE
/// residual reduces to nu f(t) times the transported discretization error.

#include <array>
#include <cmath>
#include <vector>

#include "nslab/harmonic_field.hpp"
#include "nslab/sobolev.hpp"

namespace nslab {

struct ExponentialModulation {
  double f0 = 1.0;
  double k = 0.0;   ///< decay rate, >= 0
  double nu = 1.0;  ///< viscosity; the residual scales with it, nothing else does

  double at(double t) const { return f0 * std::exp(-k * t); }
  double rate(double t) const { return -k * f0 * std::exp(-k * t); }
};

struct EnergyLedger {
  double E0 = 0.0;      ///< ||du||^2_{L2}
  double D = 0.0;       ///< ||nabla du||^2_{L2}, the dissipation constant
  double k_star = 0.0;  ///< admissibility threshold 2D/E0
};

/// E0 and D from converged ladders; rejects non-converged reports and
/// zero-energy fields.
EnergyLedger energy_ledger(const SobolevReport& report);

/// ||u0||^2 - ||u(t)||^2 - 4 int_0^t ||Def u||^2, closed form.
/// k = 0 is handled by the limit -4 D t f0^2.
double energy_inequality_margin(const EnergyLedger& ledger, double f0, double k,
                                double t);

/// L2 distance |f0| |e^{-k1 t} - e^{-k2 t}| sqrt(E0) of two family members.
double family_separation(const EnergyLedger& ledger, double f0, double k1,
                         double k2, double t);

struct ModulatedSolution {
  ExponentialModulation mod;
  const HarmonicFieldHandle* handle = nullptr;

  /// p(t,z) = -f'(t) u(z) - f(t)^2 ||du(z)||_g^2 / 2  (gauge constant 0)
  double pressure(double t, DiskPoint z) const;
  /// 1-form components f(t) (u_x, u_y)
  std::array<double, 2> velocity_form(double t, DiskPoint z) const;
};

/// 1-form components of  dU/dt + grad_U U - nu L(U) + dp  at a probe; the
/// non-viscous terms cancel analytically, leaving nu f(t) d(harmonic
/// residual), evaluated by central differences.
std::array<double, 2> ns_residual(const ModulatedSolution& sol, double t,
                                  DiskPoint z, double fd_step = 1e-4);

/// Convective acceleration computed two independent ways (metric vectors):
/// the covariant route w^j nabla_j w^i, and the finite-difference gradient
/// of ||du||^2/2.  rel_err is their relative disagreement.
struct ConvectiveCheck {
  std::array<double, 2> direct;
  std::array<double, 2> gradient_fd;
  double rel_err = 0.0;
};
ConvectiveCheck convective_identity_check(const HarmonicFieldHandle& handle,
                                          DiskPoint z, double fd_step = 1e-4);

/// Steady Euler residual for f = 1, p = -||du||^2/2: the convective
/// acceleration minus the FD pressure gradient (vector components).
std::array<double, 2> euler_residual(const HarmonicFieldHandle& handle,
                                     DiskPoint z, double fd_step = 1e-4);

}  // namespace nslab
