#pragma once

/// @file harmonic_field.hpp
/// @brief Pullback of the strip solution to the half-disk.
///
/// The harmonic potential is u = v o psi; first and second derivatives are
/// assembled by the chain rule with the Cauchy-Riemann relations and the
/// closed forms psi' = 2i/(1+z^2), psi'' = -4iz/(1+z^2)^2, never by finite
/// differences on the disk.  The covariant Hessian nabla du on M^3 adds the
/// Christoffel correction from the geometry jet; the harmonic relation reads
///
///     Delta u + du(F) = 0,    F = grad log f,
///
/// with Delta the Laplace-Beltrami operator of the hyperbolic factor (this
/// is the scalar Laplacian of M^3 and transports to the strip operator
/// v_rr + v_ss + G v_s under psi).

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>

#include "nslab/geometry.hpp"
#include "nslab/margin_report.hpp"
#include "nslab/strip_bvp.hpp"

namespace nslab {

struct OneFormJet {
  DiskPoint z;
  double u = 0.0;
  double u_x = 0.0, u_y = 0.0;
  double u_xx = 0.0, u_xy = 0.0, u_yy = 0.0;
  double laplacian = 0.0;         ///< (1-|z|^2)^2 (u_xx + u_yy)
  double norm_du = 0.0;           ///< (1-|z|^2) sqrt(u_x^2 + u_y^2)
  double norm_nabla_du_sq = 0.0;  ///< ||nabla du||_g^2
  bool extrapolated = false;      ///< decay model v = 0 beyond the strip window
};

/// Components of nabla du in the coframe {dx, dy, dtheta}; the mixed theta
/// entries vanish for circle-invariant potentials.
struct CovariantHessian {
  double xx = 0.0, xy = 0.0, yy = 0.0, tt = 0.0;
};

/// nabla du = Hessian - (u_x Gamma^x + u_y Gamma^y) from the stored
/// Christoffel arrays (the covariant derivative of dx is -Gamma^x).
CovariantHessian covariant_derivative(const OneFormJet& jet, const GeometryJet& geo);

double nabla_du_norm_sq(const CovariantHessian& h, const GeometryJet& geo);

class HarmonicFieldHandle {
 public:
  /// window_margin < 0 picks the default, five r-spacings inside the
  /// derivative sampling band.
  explicit HarmonicFieldHandle(StripField field, double window_margin = -1.0);

  /// Full jet at an interior point.  Throws std::domain_error within
  /// kCornerTol of +-i or on L; beyond the strip window throws
  /// std::out_of_range unless allow_extrapolation, in which case the decay
  /// model v = 0 is used and the jet is flagged.
  OneFormJet jet(DiskPoint z, bool allow_extrapolation = false) const;

  /// Delta u + du(F); transported strip residual, vanishes to
  /// discretization order for solved fields.
  double harmonic_residual(DiskPoint z) const;

  /// d of the scalar harmonic residual by central differences: the 1-form
  /// residual of the Hodge-Laplacian relation (one derivative weaker).
  std::array<double, 2> hodge_residual(DiskPoint z, double step = 1e-4) const;

  bool in_window(DiskPoint z) const;
  double window_r() const { return window_r_; }
  const StripField& field() const { return field_; }
  const DerivativeTable& table() const { return table_; }

 private:
  StripField field_;
  DerivativeTable table_;
  double window_r_;
};

struct PointwiseBoundsReport {
  MarginReport first_order;   ///< sup |u_x| + |u_y|
  MarginReport second_order;  ///< sup (|u_xx| + |u_xy| + |u_yy|) / |psi'|
};

PointwiseBoundsReport verify_pointwise_bounds(const HarmonicFieldHandle& handle,
                                              long n, std::uint64_t seed);

/// CSV dump: x,y,u,u_x,u_y,u_xx,u_xy,u_yy,laplacian,norm_du,norm_nabla_du_sq,extrapolated
void write_jet_csv(std::ostream& os, const HarmonicFieldHandle& handle,
                   std::span<const DiskPoint> points);

}  // namespace nslab
