#pragma once

/// @file sobolev.hpp
/// @brief Quadrature of the Sobolev integrals over the half-disk with the
/// warped volume density f dx dy / (1-|z|^2)^2.
///
/// Mesh: polar cells with geometric radial grading toward the boundary arc
/// (the density behaves like (1-|z|)^{-1/2} there); quadrature points are
/// placed by Gauss rules in the variable sqrt(1-rho), which absorbs the
/// square-root singularity of the warping function.  Ladders refine by
/// splitting cells and report a convergence verdict plus a tail budget for
/// the corner cutouts and the strip truncation window.

#include <array>
#include <vector>

#include "nslab/harmonic_field.hpp"

namespace nslab {

enum class DiskIntegrand {
  BaseVolume,     ///< f
  DuSq,           ///< ||du||^2 * density
  DuFourth,       ///< ||du||^4 * density
  NablaDuSq,      ///< ||nabla du||^2 * density
  NablaDuFourth,  ///< ||nabla du||^4 * density
};

struct QuadratureLadder {
  std::vector<long> cells;
  std::vector<double> values;
  double value = 0.0;       ///< Aitken-extrapolated when stable, else last level
  bool converged = false;   ///< last two relative changes and tail within tolerance
  double tail_budget = 0.0; ///< absolute estimate for excluded regions
};

struct QuadratureOptions {
  int levels = 4;
  int base_alpha = 24;        ///< angular cells at level 0
  double grading_ratio = 0.7; ///< geometric grading of 1-rho toward the arc
  int graded_cells = 30;
  double corner_cut = 1e-3;   ///< skip radius around z = +-i (budgeted)
  bool theta_factor = true;   ///< include the 2 pi fiber factor
  double conv_tol = 1e-2;
};

QuadratureLadder integrate_disk(const HarmonicFieldHandle& handle,
                                DiskIntegrand integrand,
                                const QuadratureOptions& opts = {});

struct SobolevReport {
  QuadratureLadder l2_du, l4_du, h1_du, w14_du, base_volume;
  bool theta_factor = true;
  /// fitted constants of the pointwise bound chain:
  /// ||du||^2 <= C (1-|z|^2)^2 and ||nabla du||^2 <= C (1-|z|^2)^2
  double sup_du_sq_ratio = 0.0;
  double sup_nabla_du_sq_ratio = 0.0;

  bool all_converged() const;
};

/// Runs all five ladders in one sweep (shared jet evaluations).
SobolevReport sobolev_report(const HarmonicFieldHandle& handle,
                             const QuadratureOptions& opts = {});

/// L2 pairing of two du fields on the finest mesh level,
/// theta * int (uA_x uB_x + uA_y uB_y) f dx dy.
double pair_l2(const HarmonicFieldHandle& a, const HarmonicFieldHandle& b,
               const QuadratureOptions& opts = {});

}  // namespace nslab
