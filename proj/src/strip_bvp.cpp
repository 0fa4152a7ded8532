#include "nslab/strip_bvp.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "nslab/fd_weights.hpp"
#include "nslab/inequality.hpp"

namespace nslab {

void StripGrid::validate() const {
  if (!(R > 0.0) || !std::isfinite(R)) {
    throw config_error("grid.R must be positive and finite");
  }
  if (n_r < 8) throw config_error("grid.n_r must be >= 8");
  if (n_s < 8) throw config_error("grid.n_s must be >= 8");
}

BoundaryProfile BoundaryProfile::gaussian(double amplitude, double center,
                                          double width) {
  if (!(width > 0.0)) throw config_error("profile.width must be positive");
  return BoundaryProfile(
      [amplitude, center, width](double r) {
        const double q = (r - center) / width;
        return amplitude * std::exp(-q * q);
      },
      "gaussian");
}

BoundaryProfile BoundaryProfile::exp_decay(double amplitude, double rate) {
  if (!(rate > 0.0)) throw config_error("profile.rate must be positive");
  return BoundaryProfile(
      [amplitude, rate](double r) { return amplitude * std::exp(-rate * std::abs(r)); },
      "exp-decay");
}

BoundaryProfile BoundaryProfile::constant(double value) {
  return BoundaryProfile([value](double) { return value; }, "constant");
}

BoundaryProfile BoundaryProfile::custom(std::function<double(double)> fn,
                                        std::string name) {
  return BoundaryProfile(std::move(fn), std::move(name));
}

double BoundaryProfile::envelope_sup(const StripGrid& grid) const {
  double sup = 0.0;
  for (int i = 0; i < grid.n_r; ++i) {
    const double r = grid.r(i);
    sup = std::max(sup, std::abs(fn_(r)) * std::exp(std::abs(r)));
  }
  return sup;
}

namespace {

// One equation row: column indices and coefficients before equilibration.
struct Row {
  int cols[5];
  double coef[5];
  int n = 0;
  double rhs = 0.0;
  void add(int c, double v) {
    cols[n] = c;
    coef[n] = v;
    ++n;
  }
};

Row assemble_row(const StripGrid& g, int i, int j,
                 const StripField& bc_source,
                 const std::function<double(double, double)>& forcing,
                 const std::function<double(double)>& left,
                 const std::function<double(double)>& right) {
  Row row;
  const double hr2 = g.h_r() * g.h_r();
  const double hs2 = g.h_s() * g.h_s();
  const double r = g.r(i);
  const double s = g.s(j);

  if (j == g.n_s - 1) {  // Dirichlet trace at s = pi/2
    row.add(g.idx(i, j), 1.0);
    row.rhs = bc_source.v0[i];
    return row;
  }
  if (i == 0 || i == g.n_r - 1) {  // truncation sides
    row.add(g.idx(i, j), 1.0);
    row.rhs = (i == 0) ? left(s) : right(s);
    return row;
  }
  if (j == 0) {  // axis: v_rr + 2 v_ss with even ghost
    row.add(g.idx(i - 1, j), 1.0 / hr2);
    row.add(g.idx(i + 1, j), 1.0 / hr2);
    row.add(g.idx(i, j), -2.0 / hr2 - 4.0 / hs2);
    row.add(g.idx(i, j + 1), 4.0 / hs2);
    row.rhs = forcing ? forcing(r, 0.0) : 0.0;
    return row;
  }
  const double G = coefficient_G(s);
  row.add(g.idx(i - 1, j), 1.0 / hr2);
  row.add(g.idx(i + 1, j), 1.0 / hr2);
  row.add(g.idx(i, j), -2.0 / hr2 - 2.0 / hs2);
  row.add(g.idx(i, j + 1), 1.0 / hs2 + G / (2.0 * g.h_s()));
  row.add(g.idx(i, j - 1), 1.0 / hs2 - G / (2.0 * g.h_s()));
  row.rhs = forcing ? forcing(r, s) : 0.0;
  return row;
}

}  // namespace

StripField solve_bvp(const StripGrid& grid, const BoundaryProfile& v0,
                     const SolveOptions& opts) {
  grid.validate();

  StripField field;
  field.grid = grid;
  field.v0.resize(grid.n_r);
  for (int i = 0; i < grid.n_r; ++i) field.v0[i] = v0(grid.r(i));

  if (opts.comparison_check) {
    const double sup = v0.envelope_sup(grid);
    const double ceiling = supersolution_ceiling();
    if (sup > ceiling * (1.0 + 1e-12)) {
      throw config_error("profile violates the comparison bound: sup |v0| e^{|r|} = " +
                         std::to_string(sup) + " > p(pi/2) = " + std::to_string(ceiling));
    }
  }

  const auto left = opts.left_boundary
                        ? opts.left_boundary
                        : std::function<double(double)>(
                              [&field](double) { return field.v0.front(); });
  const auto right = opts.right_boundary
                         ? opts.right_boundary
                         : std::function<double(double)>(
                               [&field](double) { return field.v0.back(); });

  const int n = grid.size();
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(n) * 5);
  Eigen::VectorXd b(n);

  for (int i = 0; i < grid.n_r; ++i) {
    for (int j = 0; j < grid.n_s; ++j) {
      Row row = assemble_row(grid, i, j, field, opts.forcing, left, right);
      double scale = 0.0;
      for (int k = 0; k < row.n; ++k) scale = std::max(scale, std::abs(row.coef[k]));
      scale = 1.0 / scale;
      const int ri = grid.idx(i, j);
      for (int k = 0; k < row.n; ++k) {
        trips.emplace_back(ri, row.cols[k], row.coef[k] * scale);
      }
      b[ri] = row.rhs * scale;
    }
  }

  Eigen::SparseMatrix<double> A(n, n);
  A.setFromTriplets(trips.begin(), trips.end());
  A.makeCompressed();

  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  lu.analyzePattern(A);
  lu.factorize(A);
  if (lu.info() != Eigen::Success) {
    throw solver_error("strip solve: LU factorization failed");
  }
  Eigen::VectorXd x = lu.solve(b);
  if (lu.info() != Eigen::Success) {
    throw solver_error("strip solve: back substitution failed");
  }

  const double bnorm = b.norm();
  const double rel = (A * x - b).norm() / (bnorm > 0.0 ? bnorm : 1.0);
  if (!(rel <= opts.residual_tol)) {
    throw solver_error("strip solve: relative residual " + std::to_string(rel) +
                       " exceeds tolerance");
  }

  field.v.assign(x.data(), x.data() + n);
  if (opts.forcing) {
    field.forcing.resize(n, 0.0);
    for (int i = 1; i < grid.n_r - 1; ++i) {
      for (int j = 0; j < grid.n_s - 1; ++j) {
        field.forcing[grid.idx(i, j)] = opts.forcing(grid.r(i), grid.s(j));
      }
    }
  }
  field.from_solver = true;
  field.stats.rel_residual = rel;
  field.stats.unknowns = n;

  const auto res = apply_operator(field);
  double mx = 0.0;
  for (double val : res) mx = std::max(mx, std::abs(val));
  field.stats.max_field_residual = mx;
  return field;
}

StripField sample_field(const StripGrid& grid,
                        std::function<double(double, double)> fn) {
  grid.validate();
  StripField field;
  field.grid = grid;
  field.v.resize(grid.size());
  field.v0.resize(grid.n_r);
  for (int i = 0; i < grid.n_r; ++i) {
    for (int j = 0; j < grid.n_s; ++j) {
      field.v[grid.idx(i, j)] = fn(grid.r(i), grid.s(j));
    }
    field.v0[i] = field.v[grid.idx(i, grid.n_s - 1)];
  }
  return field;
}

std::vector<double> apply_operator(const StripField& field) {
  const StripGrid& g = field.grid;
  const double hr2 = g.h_r() * g.h_r();
  const double hs2 = g.h_s() * g.h_s();
  std::vector<double> res(g.size(), 0.0);
  const auto& v = field.v;
  const bool has_forcing = !field.forcing.empty();

  for (int i = 1; i < g.n_r - 1; ++i) {
    // axis row
    {
      const int c = g.idx(i, 0);
      double val = (v[g.idx(i - 1, 0)] - 2.0 * v[c] + v[g.idx(i + 1, 0)]) / hr2 +
                   4.0 * (v[g.idx(i, 1)] - v[c]) / hs2;
      if (has_forcing) val -= field.forcing[c];
      res[c] = val;
    }
    for (int j = 1; j < g.n_s - 1; ++j) {
      const int c = g.idx(i, j);
      const double G = coefficient_G(g.s(j));
      double val = (v[g.idx(i - 1, j)] - 2.0 * v[c] + v[g.idx(i + 1, j)]) / hr2 +
                   (v[g.idx(i, j + 1)] - 2.0 * v[c] + v[g.idx(i, j - 1)]) / hs2 +
                   G * (v[g.idx(i, j + 1)] - v[g.idx(i, j - 1)]) / (2.0 * g.h_s());
      if (has_forcing) val -= field.forcing[c];
      res[c] = val;
    }
  }
  return res;
}

double StripField::neumann_residual() const {
  if (from_solver) return 0.0;  // even ghost is exact by construction
  // fourth-order one-sided d/ds at s = 0
  const double h = grid.h_s();
  double worst = 0.0;
  for (int i = 0; i < grid.n_r; ++i) {
    const double d =
        (-25.0 * value(i, 0) + 48.0 * value(i, 1) - 36.0 * value(i, 2) +
         16.0 * value(i, 3) - 3.0 * value(i, 4)) /
        (12.0 * h);
    worst = std::max(worst, std::abs(d));
  }
  return worst;
}

ExtendedStripField reflect_extend(const StripField& field) {
  if (field.neumann_residual() > 1e-6) {
    throw std::domain_error(
        "reflect_extend: Neumann residual at s = 0 exceeds 1e-6; the even "
        "extension would not satisfy the equation");
  }
  ExtendedStripField ext;
  ext.base = field.grid;
  const int ns = field.grid.n_s;
  ext.v.resize(static_cast<std::size_t>(field.grid.n_r) * (2 * ns - 1));
  for (int i = 0; i < field.grid.n_r; ++i) {
    for (int j = 0; j < ns; ++j) {
      const double val = field.value(i, j);
      ext.v[ext.idx(i, (ns - 1) + j)] = val;   // s >= 0
      ext.v[ext.idx(i, (ns - 1) - j)] = val;   // mirrored
    }
  }
  return ext;
}

std::vector<double> apply_operator(const ExtendedStripField& field) {
  const StripGrid& g = field.base;
  const int ns_ext = field.n_s_ext();
  const double hr2 = g.h_r() * g.h_r();
  const double hs2 = g.h_s() * g.h_s();
  std::vector<double> res(static_cast<std::size_t>(g.n_r) * ns_ext, 0.0);

  for (int i = 1; i < g.n_r - 1; ++i) {
    for (int j = 1; j < ns_ext - 1; ++j) {
      const double s = field.s(j);
      const int c = field.idx(i, j);
      const double vrr =
          (field.value(i - 1, j) - 2.0 * field.value(i, j) + field.value(i + 1, j)) / hr2;
      const double vss =
          (field.value(i, j + 1) - 2.0 * field.value(i, j) + field.value(i, j - 1)) / hs2;
      if (j == g.n_s - 1) {  // s = 0: regularized limit row
        res[c] = vrr + 2.0 * vss;
        continue;
      }
      const double G = (s > 0.0 ? 1.0 : -1.0) * coefficient_G(std::abs(s));
      const double vs = (field.value(i, j + 1) - field.value(i, j - 1)) / (2.0 * g.h_s());
      res[c] = vrr + vss + G * vs;
    }
  }
  return res;
}

namespace {

// Cubic Lagrange weights at normalized offset t relative to nodes {0,1,2,3}.
void lagrange4(double t, double w[4]) {
  const double t1 = t - 1.0, t2 = t - 2.0, t3 = t - 3.0;
  w[0] = -t1 * t2 * t3 / 6.0;
  w[1] = t * t2 * t3 / 2.0;
  w[2] = -t * t1 * t3 / 2.0;
  w[3] = t * t1 * t2 / 6.0;
}

}  // namespace

DerivativeTable::DerivativeTable(const StripField& field) : grid_(field.grid) {
  const StripGrid& g = grid_;
  const int nr = g.n_r, ns = g.n_s;
  for (auto& grid_vec : g_) grid_vec.assign(g.size(), 0.0);
  g_[0] = field.v;

  i_lo_ = 2;
  i_hi_ = nr - 3;
  r_lo_ = g.r(i_lo_);
  r_hi_ = g.r(i_hi_);

  const double hr = g.h_r(), hs = g.h_s();

  // r-direction stencils are valid two nodes inside the truncation.
  static const double d1[5] = {1.0 / 12, -8.0 / 12, 0.0, 8.0 / 12, -1.0 / 12};
  static const double d2[5] = {-1.0 / 12, 16.0 / 12, -30.0 / 12, 16.0 / 12, -1.0 / 12};

  auto s_stencil = [&](const std::vector<double>& src, int i, int j, int order) {
    // central with even reflection across s = 0; shifted stencil at the top
    if (j <= ns - 3) {
      double acc = 0.0;
      const double* w = (order == 1) ? d1 : d2;
      for (int o = -2; o <= 2; ++o) {
        const int jj = std::abs(j + o);  // reflection handles j < 2
        acc += w[o + 2] * src[g.idx(i, jj)];
      }
      return acc / (order == 1 ? hs : hs * hs);
    }
    // top edge: 5-point one-sided weights on [ns-5, ns-1]
    double xs[5];
    double vals[5];
    for (int m = 0; m < 5; ++m) {
      xs[m] = g.s(ns - 5 + m);
      vals[m] = src[g.idx(i, ns - 5 + m)];
    }
    const auto w = fd_weights(g.s(j), std::span<const double>(xs, 5), order);
    double acc = 0.0;
    for (int m = 0; m < 5; ++m) acc += w[m] * vals[m];
    return acc;
  };

  // v_s and v_ss, all nodes
  for (int i = 0; i < nr; ++i) {
    for (int j = 0; j < ns; ++j) {
      g_[2][g.idx(i, j)] = s_stencil(field.v, i, j, 1);
      g_[5][g.idx(i, j)] = s_stencil(field.v, i, j, 2);
    }
  }
  // v_r, v_rr on the interior band, and v_rs nested from the v_s grid
  for (int i = i_lo_; i <= i_hi_; ++i) {
    for (int j = 0; j < ns; ++j) {
      double a1 = 0.0, a2 = 0.0, am = 0.0;
      for (int o = -2; o <= 2; ++o) {
        const double vv = field.v[g.idx(i + o, j)];
        a1 += d1[o + 2] * vv;
        a2 += d2[o + 2] * vv;
        am += d1[o + 2] * g_[2][g.idx(i + o, j)];
      }
      g_[1][g.idx(i, j)] = a1 / hr;
      g_[3][g.idx(i, j)] = a2 / (hr * hr);
      g_[4][g.idx(i, j)] = am / hr;
    }
  }
}

bool DerivativeTable::in_window(double r, double s) const {
  return r >= r_lo_ && r <= r_hi_ && s >= 0.0 && s <= kHalfPi;
}

StripDerivs DerivativeTable::eval(double r, double s) const {
  if (!in_window(r, s)) {
    throw std::out_of_range("DerivativeTable::eval: point outside the sampling window");
  }
  const StripGrid& g = grid_;
  const double xi = (r + g.R) / g.h_r();
  const double yj = s / g.h_s();

  int i0 = static_cast<int>(std::floor(xi)) - 1;
  i0 = std::clamp(i0, i_lo_, i_hi_ - 3);
  int j0 = static_cast<int>(std::floor(yj)) - 1;
  j0 = std::clamp(j0, 0, g.n_s - 4);

  double wr[4], ws[4];
  lagrange4(xi - i0, wr);
  lagrange4(yj - j0, ws);

  StripDerivs out;
  double* fields[6] = {&out.v, &out.v_r, &out.v_s, &out.v_rr, &out.v_rs, &out.v_ss};
  for (int k = 0; k < 6; ++k) {
    double acc = 0.0;
    for (int a = 0; a < 4; ++a) {
      double rowacc = 0.0;
      for (int b = 0; b < 4; ++b) {
        rowacc += ws[b] * g_[k][g.idx(i0 + a, j0 + b)];
      }
      acc += wr[a] * rowacc;
    }
    *fields[k] = acc;
  }
  return out;
}

double DerivativeTable::fit_decay_constant() const {
  const StripGrid& g = grid_;
  double c = 0.0;
  for (int i = i_lo_; i <= i_hi_; ++i) {
    const double w = std::exp(std::abs(g.r(i)));
    for (int j = 0; j < g.n_s; ++j) {
      const int c0 = g.idx(i, j);
      const double total = std::abs(g_[0][c0]) + std::abs(g_[1][c0]) +
                           std::abs(g_[2][c0]) + std::abs(g_[3][c0]) +
                           std::abs(g_[4][c0]) + std::abs(g_[5][c0]);
      c = std::max(c, total * w);
    }
  }
  return c;
}

StripDerivs strip_derivatives(const StripField& field, StripPoint p) {
  return DerivativeTable(field).eval(p.r, p.s);
}

void write_field_csv(std::ostream& os, const StripField& field) {
  const auto res = apply_operator(field);
  os << "r,s,v,residual\n";
  char buf[128];
  const StripGrid& g = field.grid;
  for (int i = 0; i < g.n_r; ++i) {
    for (int j = 0; j < g.n_s; ++j) {
      const int c = g.idx(i, j);
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", g.r(i), g.s(j),
                    field.v[c], res[c]);
      os << buf;
    }
  }
}

}  // namespace nslab
