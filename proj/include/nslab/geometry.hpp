#pragma once

/// @file geometry.hpp
/// @brief Closed-form geometric kernels for the warped product M = H x_f S^1.
///
/// H is the open right half of the unit disk carrying the hyperbolic metric
/// of curvature -4 (conformal factor 1/(1-|z|^2)^2), and the circle fiber is
/// scaled by the warping function f = sinh of half the arcsinh-distance to
/// the axis segment L = {x = 0}.  Everything here is pointwise and pure:
/// conformal maps between H and the strip Omega = {0 < s < pi/2}, the
/// warping function in both coordinate systems, its logarithmic derivative
/// G(s), and the full metric/Christoffel jet used by the covariant-derivative
/// assembly downstream.

#include <array>
#include <complex>
#include <numbers>

namespace nslab {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi_v<double>;
inline constexpr double kHalfPi = kPi / 2.0;

/// Points closer than this to the singular corners z = +-i are rejected by
/// jet construction (the conformal strip coordinate diverges there).
inline constexpr double kCornerTol = 1e-3;

/// Cartesian point z = x + iy of the half-disk model.  Interior means
/// x > 0 and |z| < 1; the axis L is {x = 0, |y| < 1}.
struct DiskPoint {
  double x = 0.0;
  double y = 0.0;
};

/// Strip coordinates w = r + is, 0 <= s <= pi/2.
struct StripPoint {
  double r = 0.0;
  double s = 0.0;
};

inline Complex to_complex(DiskPoint z) { return {z.x, z.y}; }
inline Complex to_complex(StripPoint w) { return {w.r, w.s}; }

inline double abs_sq(Complex z) { return std::norm(z); }

/// 1 - |z|^2, the reciprocal square root of the conformal factor.
inline double one_minus_zsq(DiskPoint z) { return 1.0 - z.x * z.x - z.y * z.y; }

bool in_half_disk_interior(DiskPoint z);
bool on_axis_L(DiskPoint z, double tol = 0.0);
double distance_to_corners(DiskPoint z);

/// Conformal map strip -> half-disk, phi(w) = i(e^{-w} - 1)/(e^{-w} + 1).
/// Entire on the closed strip; evaluated in a form that stays stable for
/// large |Re w| (the corners are approached, never overflowed).
Complex phi(Complex w);

/// Inverse map half-disk -> strip, psi(z) = log((i - z)/(i + z)).
/// Throws std::domain_error at the logarithmic singularities z = +-i.
Complex psi(Complex z);

/// psi'(z) = 2i/(1 + z^2).  Throws std::domain_error at z = +-i.
Complex psi_prime(Complex z);

/// psi''(z) = -4iz/(1 + z^2)^2.
Complex psi_second(Complex z);

/// Warping function on the half-disk: f = sinh(arcsinh(2x/(1-|z|^2))/2).
/// Accepts the closed set H u L (f = 0 on L); throws outside.
double warp_f(DiskPoint z);

/// Warping function in strip coordinates; depends on s only.
/// Stable form sin(s/2)/sqrt(cos s) of (sqrt(1+sin s)-sqrt(1-sin s))/(2 sqrt(cos s)).
/// Throws std::domain_error for s < 0 and std::range_error at s >= pi/2.
double warp_f_strip(double s);

/// G(s) = f~_s / f~ = (1 + cos s)/(2 sin s cos s), the drift coefficient of
/// the strip operator.  Diverges at both endpoints: std::range_error there.
double coefficient_G(double s);

/// Continuous extension of G(s)*sin(s) = (1 + sec s)/2 down to s = 0 (value 1).
/// Handy wherever the axis limit of the drift term is needed.
double coefficient_G_times_sin(double s);

/// All pointwise geometric data at an interior half-disk point.
///
/// gamma_x / gamma_y hold the five coefficients of the second-derivative
/// correction tensors for the coordinate differentials dx and dy, in the
/// order {dx@dx, dx@dy, dy@dx, dy@dy, dtheta@dtheta}.  They are stored as
/// the Christoffel arrays Gamma^x_{ij}, Gamma^y_{ij} of the metric
/// (1-|z|^2)^{-2}(dx^2+dy^2) + f^2 dtheta^2; the covariant derivative of a
/// coordinate differential is the *negative* of the stored array,
/// nabla dx = -Gamma^x_{ij} dx^i@dx^j.
struct GeometryJet {
  DiskPoint z;
  double lambda = 0.0;      ///< conformal coefficient g_xx = g_yy = 1/(1-|z|^2)^2
  double f = 0.0;           ///< warping value
  double f_x = 0.0;         ///< warping gradient (coordinate partials)
  double f_y = 0.0;
  Complex psi_w;            ///< strip image psi(z)
  Complex psi_d1;           ///< psi'(z)
  double F_x = 0.0;         ///< vector components of F = grad log f:
  double F_y = 0.0;         ///<   F^x = (1-|z|^2)^2 f_x/f, same for y
  std::array<double, 5> gamma_x{};  ///< Gamma^x_{ij}, order as documented above
  std::array<double, 5> gamma_y{};  ///< Gamma^y_{ij}
};

/// Evaluates the full geometric jet.  Throws std::domain_error on L (f = 0
/// makes F and |dtheta|_g undefined), outside the half-disk, and within
/// kCornerTol of the corners +-i.
GeometryJet geometry_jet(DiskPoint z);

}  // namespace nslab
