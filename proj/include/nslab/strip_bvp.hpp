#pragma once

/// @file strip_bvp.hpp
/// @brief Finite-difference solver for the degenerate strip problem
///
///   L(v) = v_rr + v_ss + G(s) v_s = forcing      on (-R,R) x (0, pi/2),
///   v_s(r, 0) = 0,                               (axis, even reflection)
///   v(r, pi/2) = v0(r),                          (Dirichlet trace)
///
/// truncated at r = +-R with Dirichlet side closure.  The drift coefficient
/// G blows up like 1/s at the axis; the s = 0 rows therefore use the
/// regularized limit equation v_rr + 2 v_ss = forcing with an even ghost
/// node, which is the standard polar-axis treatment.
///
/// Derivative sampling off the grid is provided by DerivativeTable:
/// fourth-order nodal stencils (even reflection across s = 0, shifted
/// stencils at the s = pi/2 edge) plus bicubic interpolation.

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "nslab/errors.hpp"
#include "nslab/geometry.hpp"

namespace nslab {

struct StripGrid {
  double R = 12.0;
  int n_r = 769;
  int n_s = 129;

  double h_r() const { return 2.0 * R / (n_r - 1); }
  double h_s() const { return kHalfPi / (n_s - 1); }
  double r(int i) const { return -R + i * h_r(); }
  double s(int j) const { return j * h_s(); }
  int idx(int i, int j) const { return i * n_s + j; }
  int size() const { return n_r * n_s; }

  /// Throws config_error unless R > 0 and n_r, n_s >= 8.
  void validate() const;
};

/// Boundary trace v0 at s = pi/2.  Smooth closed forms or custom callables.
class BoundaryProfile {
 public:
  static BoundaryProfile gaussian(double amplitude, double center = 0.0,
                                  double width = 1.0);
  static BoundaryProfile exp_decay(double amplitude, double rate = 1.0);
  static BoundaryProfile constant(double value);
  static BoundaryProfile custom(std::function<double(double)> fn,
                                std::string name = "custom");

  double operator()(double r) const { return fn_(r); }
  const std::string& name() const { return name_; }

  /// sup over grid nodes of |v0(r)| e^{|r|}; the supersolution comparison
  /// applies when this does not exceed p(pi/2).
  double envelope_sup(const StripGrid& grid) const;

 private:
  BoundaryProfile(std::function<double(double)> fn, std::string name)
      : fn_(std::move(fn)), name_(std::move(name)) {}
  std::function<double(double)> fn_;
  std::string name_;
};

struct SolveOptions {
  /// Right-hand side of L(v) = forcing.  At s = 0 the callback must supply
  /// the continuous limit value (G(s) v_s extends by G*sin -> 1 scaling).
  std::function<double(double, double)> forcing;
  /// Side Dirichlet values v(-R, s) and v(+R, s); default is the constant
  /// v0(-R) resp. v0(+R), exact for data that is flat at the truncation.
  std::function<double(double)> left_boundary;
  std::function<double(double)> right_boundary;
  /// Reject boundary profiles that violate |v0| e^{|r|} <= p(pi/2), the
  /// admissibility condition for the supersolution comparison.
  bool comparison_check = false;
  double residual_tol = 1e-10;
};

struct SolveStats {
  double rel_residual = 0.0;       ///< ||Ax-b||/||b|| of the row-equilibrated system
  double max_field_residual = 0.0; ///< max |L_h(v) - forcing| over equation rows
  int unknowns = 0;
};

struct StripField {
  StripGrid grid;
  std::vector<double> v;        ///< node values, s fastest (idx = i*n_s + j)
  std::vector<double> v0;       ///< boundary trace at s = pi/2, per r node
  std::vector<double> forcing;  ///< node values; empty when zero
  bool from_solver = false;
  SolveStats stats;

  double value(int i, int j) const { return v[grid.idx(i, j)]; }

  /// Discrete Neumann residual at s = 0.  Solver fields satisfy the even
  /// ghost condition exactly (returns 0); sampled fields are measured with
  /// the fourth-order one-sided derivative.
  double neumann_residual() const;
};

/// Assembles and solves the mixed problem; throws solver_error if the
/// equilibrated relative residual exceeds opts.residual_tol, config_error
/// if comparison_check is on and v0 violates the envelope bound.
StripField solve_bvp(const StripGrid& grid, const BoundaryProfile& v0,
                     const SolveOptions& opts = {});

/// Builds a StripField by sampling fn(r, s) at the nodes (test scaffolding;
/// the result is not marked as solver output).
StripField sample_field(const StripGrid& grid,
                        std::function<double(double, double)> fn);

/// Discrete residual L_h(v) - forcing per node; Dirichlet rows are 0.
std::vector<double> apply_operator(const StripField& field);

/// Even extension to s in [-pi/2, pi/2].
struct ExtendedStripField {
  StripGrid base;
  std::vector<double> v;  ///< (2 n_s - 1) values per column, s from -pi/2

  int n_s_ext() const { return 2 * base.n_s - 1; }
  double s(int j) const { return -kHalfPi + j * base.h_s(); }
  int idx(int i, int j) const { return i * n_s_ext() + j; }
  double value(int i, int j) const { return v[idx(i, j)]; }
};

/// Refuses fields whose Neumann residual exceeds 1e-6.
ExtendedStripField reflect_extend(const StripField& field);

/// Residual of the extended operator (G odd under s -> -s); Dirichlet rows 0.
std::vector<double> apply_operator(const ExtendedStripField& field);

struct StripDerivs {
  double v = 0, v_r = 0, v_s = 0, v_rr = 0, v_rs = 0, v_ss = 0;
};

/// Nodal fourth-order derivative grids with bicubic off-node sampling.
class DerivativeTable {
 public:
  explicit DerivativeTable(const StripField& field);

  /// Throws std::out_of_range when r is outside the sampling window
  /// (two stencil widths inside the truncation).
  StripDerivs eval(double r, double s) const;

  bool in_window(double r, double s) const;
  double r_min() const { return r_lo_; }
  double r_max() const { return r_hi_; }
  const StripGrid& grid() const { return grid_; }

  /// max over valid nodes of (|v|+|v_r|+|v_s|+|v_rr|+|v_rs|+|v_ss|) e^{|r|},
  /// the fitted constant of the exponential decay envelope.
  double fit_decay_constant() const;

 private:
  StripGrid grid_;
  double r_lo_ = 0, r_hi_ = 0;
  int i_lo_ = 0, i_hi_ = 0;
  // value grid plus five derivative grids, same layout as StripField::v
  std::vector<double> g_[6];
};

/// One-off convenience wrapper around DerivativeTable.
StripDerivs strip_derivatives(const StripField& field, StripPoint p);

/// CSV snapshot: header r,s,v,residual; one row per node, s fastest.
void write_field_csv(std::ostream& os, const StripField& field);

}  // namespace nslab
