#include "nslab/sobolev.hpp"

#include <algorithm>
#include <cmath>

namespace nslab {

namespace {

constexpr int kNumIntegrands = 5;

// 2-point Gauss-Legendre on [0, 1]
constexpr double kGaussNode[2] = {0.21132486540518713, 0.7886751345948129};
constexpr double kGaussWeight[2] = {0.5, 0.5};

struct SweepResult {
  std::array<double, kNumIntegrands> values{};
  std::array<double, kNumIntegrands> tail{};
  double sup_du_sq_ratio = 0.0;
  double sup_nabla_sq_ratio = 0.0;
  long cells = 0;
};

// One full mesh sweep at refinement `level`.  All five integrands share the
// jet evaluation per quadrature point.  Excluded regions (corner cutouts,
// strip-window overflow) contribute zero; their area is multiplied by the
// largest integrand magnitude seen near the respective exclusion ring to
// form the tail budget.
SweepResult sweep(const HarmonicFieldHandle& handle, const QuadratureOptions& opts,
                  int level) {
  SweepResult out;
  const int n_alpha = opts.base_alpha << level;
  const int splits = 1 << level;
  const double d_alpha = kPi / n_alpha;

  // radial breakpoints in eps = 1 - rho, geometric toward the arc
  std::vector<double> eps_pts;
  eps_pts.reserve(opts.graded_cells + 2);
  double e = 1.0;
  for (int k = 0; k <= opts.graded_cells; ++k) {
    eps_pts.push_back(e);
    e *= opts.grading_ratio;
  }
  eps_pts.push_back(0.0);

  std::array<double, kNumIntegrands> corner_ring_max{};
  std::array<double, kNumIntegrands> window_ring_max{};
  double corner_area = 0.0, window_area = 0.0;

  std::array<double, kNumIntegrands> acc{};
  for (std::size_t cell = 0; cell + 1 < eps_pts.size(); ++cell) {
    // sigma = sqrt(1 - rho); cell in sigma with `splits` subdivisions
    const double sig_hi = std::sqrt(eps_pts[cell]);
    const double sig_lo = std::sqrt(eps_pts[cell + 1]);
    const double dsig = (sig_hi - sig_lo) / splits;
    for (int sub = 0; sub < splits; ++sub) {
      const double s0 = sig_lo + sub * dsig;
      for (int qa = 0; qa < 2; ++qa) {
        const double sigma = s0 + kGaussNode[qa] * dsig;
        const double rho = 1.0 - sigma * sigma;
        if (rho <= 0.0) continue;
        const double w_rad = 2.0 * sigma * dsig * kGaussWeight[qa] * rho;
        for (int ac = 0; ac < n_alpha; ++ac) {
          const double a0 = -kHalfPi + ac * d_alpha;
          for (int qb = 0; qb < 2; ++qb) {
            const double alpha = a0 + kGaussNode[qb] * d_alpha;
            const double weight = w_rad * d_alpha * kGaussWeight[qb];
            const DiskPoint z{rho * std::cos(alpha), rho * std::sin(alpha)};
            ++out.cells;

            const double corner_d = distance_to_corners(z);
            if (corner_d < opts.corner_cut) {
              corner_area += weight;
              continue;
            }
            OneFormJet jet;
            try {
              jet = handle.jet(z, /*allow_extrapolation=*/true);
            } catch (const std::domain_error&) {
              corner_area += weight;  // guard band of the corner rejection
              continue;
            }
            if (jet.extrapolated) {
              window_area += weight;
              continue;
            }
            const GeometryJet geo = geometry_jet(z);
            const double p = one_minus_zsq(z);
            const double density = geo.f / (p * p);
            const double du_sq = p * p * (jet.u_x * jet.u_x + jet.u_y * jet.u_y);

            std::array<double, kNumIntegrands> vals;
            vals[0] = geo.f;
            vals[1] = du_sq * density;
            vals[2] = du_sq * du_sq * density;
            vals[3] = jet.norm_nabla_du_sq * density;
            vals[4] = jet.norm_nabla_du_sq * jet.norm_nabla_du_sq * density;
            for (int m = 0; m < kNumIntegrands; ++m) acc[m] += weight * vals[m];

            out.sup_du_sq_ratio =
                std::max(out.sup_du_sq_ratio, du_sq / (p * p));
            out.sup_nabla_sq_ratio =
                std::max(out.sup_nabla_sq_ratio, jet.norm_nabla_du_sq / (p * p));

            if (corner_d < 10.0 * opts.corner_cut) {
              for (int m = 0; m < kNumIntegrands; ++m) {
                corner_ring_max[m] = std::max(corner_ring_max[m], std::abs(vals[m]));
              }
            }
            const double r_strip = std::abs(psi(to_complex(z)).real());
            if (r_strip > handle.window_r() - 1.0) {
              for (int m = 0; m < kNumIntegrands; ++m) {
                window_ring_max[m] = std::max(window_ring_max[m], std::abs(vals[m]));
              }
            }
          }
        }
      }
    }
  }

  const double theta = opts.theta_factor ? 2.0 * kPi : 1.0;
  for (int m = 0; m < kNumIntegrands; ++m) {
    out.values[m] = theta * acc[m];
    out.tail[m] = theta * (2.0 * corner_area * corner_ring_max[m] +
                           2.0 * window_area * window_ring_max[m]);
  }
  return out;
}

QuadratureLadder make_ladder(const std::vector<SweepResult>& sweeps, int which,
                             double conv_tol) {
  QuadratureLadder lad;
  for (const auto& s : sweeps) {
    lad.cells.push_back(s.cells);
    lad.values.push_back(s.values[which]);
    lad.tail_budget = std::max(lad.tail_budget, s.tail[which]);
  }
  const std::size_t n = lad.values.size();
  lad.value = lad.values.back();
  if (n >= 3) {
    const double v0 = lad.values[n - 3], v1 = lad.values[n - 2], v2 = lad.values[n - 1];
    const double d1 = v1 - v0, d2 = v2 - v1;
    const double denom = d2 - d1;
    if (std::abs(denom) > 1e-14 * std::max({std::abs(v0), std::abs(v1), std::abs(v2)})) {
      const double aitken = v2 - d2 * d2 / denom;
      // only trust extrapolation when the ladder behaves geometrically
      if (std::abs(aitken - v2) < std::abs(d2)) lad.value = aitken;
    }
    const double scale = std::max(std::abs(v2), 1e-300);
    const bool small_changes =
        std::abs(d2) / scale <= conv_tol && std::abs(d1) / scale <= conv_tol;
    lad.converged = small_changes && lad.tail_budget <= conv_tol * scale;
  }
  return lad;
}

}  // namespace

QuadratureLadder integrate_disk(const HarmonicFieldHandle& handle,
                                DiskIntegrand integrand,
                                const QuadratureOptions& opts) {
  std::vector<SweepResult> sweeps;
  for (int level = 0; level < std::max(3, opts.levels); ++level) {
    sweeps.push_back(sweep(handle, opts, level));
  }
  return make_ladder(sweeps, static_cast<int>(integrand), opts.conv_tol);
}

bool SobolevReport::all_converged() const {
  return l2_du.converged && l4_du.converged && h1_du.converged &&
         w14_du.converged && base_volume.converged;
}

SobolevReport sobolev_report(const HarmonicFieldHandle& handle,
                             const QuadratureOptions& opts) {
  std::vector<SweepResult> sweeps;
  for (int level = 0; level < std::max(3, opts.levels); ++level) {
    sweeps.push_back(sweep(handle, opts, level));
  }
  SobolevReport rep;
  rep.theta_factor = opts.theta_factor;
  rep.base_volume = make_ladder(sweeps, 0, opts.conv_tol);
  rep.l2_du = make_ladder(sweeps, 1, opts.conv_tol);
  rep.l4_du = make_ladder(sweeps, 2, opts.conv_tol);
  rep.h1_du = make_ladder(sweeps, 3, opts.conv_tol);
  rep.w14_du = make_ladder(sweeps, 4, opts.conv_tol);
  rep.sup_du_sq_ratio = sweeps.back().sup_du_sq_ratio;
  rep.sup_nabla_du_sq_ratio = sweeps.back().sup_nabla_sq_ratio;
  return rep;
}

double pair_l2(const HarmonicFieldHandle& a, const HarmonicFieldHandle& b,
               const QuadratureOptions& opts) {
  // finest-level sweep with the pairing integrand (uA_x uB_x + uA_y uB_y) f
  const int level = std::max(3, opts.levels) - 1;
  const int n_alpha = opts.base_alpha << level;
  const int splits = 1 << level;
  const double d_alpha = kPi / n_alpha;

  std::vector<double> eps_pts;
  double e = 1.0;
  for (int k = 0; k <= opts.graded_cells; ++k) {
    eps_pts.push_back(e);
    e *= opts.grading_ratio;
  }
  eps_pts.push_back(0.0);

  double acc = 0.0;
  for (std::size_t cell = 0; cell + 1 < eps_pts.size(); ++cell) {
    const double sig_hi = std::sqrt(eps_pts[cell]);
    const double sig_lo = std::sqrt(eps_pts[cell + 1]);
    const double dsig = (sig_hi - sig_lo) / splits;
    for (int sub = 0; sub < splits; ++sub) {
      const double s0 = sig_lo + sub * dsig;
      for (int qa = 0; qa < 2; ++qa) {
        const double sigma = s0 + kGaussNode[qa] * dsig;
        const double rho = 1.0 - sigma * sigma;
        if (rho <= 0.0) continue;
        const double w_rad = 2.0 * sigma * dsig * kGaussWeight[qa] * rho;
        for (int ac = 0; ac < n_alpha; ++ac) {
          const double a0 = -kHalfPi + ac * d_alpha;
          for (int qb = 0; qb < 2; ++qb) {
            const double alpha = a0 + kGaussNode[qb] * d_alpha;
            const double weight = w_rad * d_alpha * kGaussWeight[qb];
            const DiskPoint z{rho * std::cos(alpha), rho * std::sin(alpha)};
            if (distance_to_corners(z) < opts.corner_cut) continue;
            OneFormJet ja, jb;
            try {
              ja = a.jet(z, true);
              jb = b.jet(z, true);
            } catch (const std::domain_error&) {
              continue;
            }
            if (ja.extrapolated || jb.extrapolated) continue;
            const double f = warp_f(z);
            acc += weight * (ja.u_x * jb.u_x + ja.u_y * jb.u_y) * f;
          }
        }
      }
    }
  }
  return (opts.theta_factor ? 2.0 * kPi : 1.0) * acc;
}

}  // namespace nslab
