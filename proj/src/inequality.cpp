#include "nslab/inequality.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "nslab/errors.hpp"

namespace nslab {

double supersolution_ceiling() {
  return SupersolutionPolynomial{}(kHalfPi);
}

namespace {

// |p1| and |p1'| envelopes used by the gap certificates.
constexpr double kMaxAbsP1 = 68.1;  // |p1| peaks at s = sqrt(100/96), ~68.04

double max_abs_p1_prime(double a, double b) {
  const auto v = [](double s) { return std::abs(96.0 * s * s - 100.0); };
  return std::max(v(a), v(b));
}

// Upper bound for |d/ds lhs| on [a, b] c (0, pi/2):
//   lhs' = p2' + G' p1 + G p1',
//   p2' = 32 s^3 + 92 s (increasing),
//   G'  = -csc^2(s/2)/4 + sec^2(s)/2 (increasing), and G is quasi-convex,
// so endpoint evaluations majorize every factor.
double lhs_lipschitz(double a, double b) {
  const SupersolutionPolynomial p;
  const double p2p = (32.0 * b * b + 92.0) * b;
  const double csc_half = 1.0 / std::sin(0.5 * a);
  const double sec_b = 1.0 / std::cos(b);
  const double gp = 0.25 * csc_half * csc_half + 0.5 * sec_b * sec_b;
  const double gmax = std::max(coefficient_G(a), coefficient_G(b));
  return p2p + gp * kMaxAbsP1 + gmax * max_abs_p1_prime(a, b);
}

}  // namespace

MarginReport verify_supersolution(long n) {
  if (n < 1000) throw config_error("verify_supersolution: need n >= 1e3 samples");

  const SupersolutionPolynomial p;
  MarginReport rep;
  rep.lemma = "supersolution";
  rep.samples = n;

  // Chebyshev-distributed samples of (0, pi/2); track the worst value.
  double worst = -std::numeric_limits<double>::infinity();
  double worst_at = 0.0;
  for (long k = 1; k <= n; ++k) {
    const double s = 0.5 * kHalfPi * (1.0 - std::cos(kPi * double(k) / double(n + 1)));
    const double val = p.lhs(s);
    if (val > worst) {
      worst = val;
      worst_at = s;
    }
  }
  rep.worst_value = worst;
  rep.worst_location = worst_at;

  // Certificate, three zones.
  //
  // (0, 0.7]: G p1 < 0 and p2 is increasing, so lhs <= p2(0.7) < 0.
  const double left_zone_bound = p.p2(0.7);
  bool ok = left_zone_bound < 0.0;

  // [0.7, pi/2 - 1e-4]: dense uniform grid with per-gap Lipschitz bounds.
  const double s_hi = kHalfPi - 1e-4;
  const long m = 40000;
  const double dx = (s_hi - 0.7) / double(m);
  double prev_s = 0.7;
  double prev_v = p.lhs(0.7);
  double cert_worst = prev_v;
  for (long k = 1; k <= m && ok; ++k) {
    const double s = 0.7 + dx * double(k);
    const double v = p.lhs(s);
    const double lam = lhs_lipschitz(prev_s, s);
    const double gap_bound = std::max(prev_v, v) + 0.5 * lam * (s - prev_s);
    if (!(gap_bound < 0.0)) ok = false;
    cert_worst = std::max(cert_worst, gap_bound);
    prev_s = s;
    prev_v = v;
  }

  // [pi/2 - 1e-4, pi/2): p2 <= p2(pi/2), p1 <= p1(pi/2) < 0, G >= tan(s)/2.
  const double right_zone_bound =
      p.p2(kHalfPi) + 0.5 * std::tan(s_hi) * p.p1(kHalfPi);
  ok = ok && right_zone_bound < 0.0;

  rep.pass = ok && worst < 0.0;
  std::ostringstream detail;
  detail << "zones: (0,0.7] bound " << left_zone_bound << "; [0.7,pi/2-1e-4] certified max "
         << cert_worst << "; right zone bound " << right_zone_bound;
  rep.detail = detail.str();
  return rep;
}

MarginReport verify_positivity_p() {
  const SupersolutionPolynomial p;
  MarginReport rep;
  rep.lemma = "p-positivity";
  const long n = 1000;
  rep.samples = n;

  // p' = 4s(8s^2 - 25) < 0 on (0, pi/2); the minimum sits at s = pi/2.
  double min_p = p(0.0);
  double min_at = 0.0;
  double max_dp = -std::numeric_limits<double>::infinity();
  for (long k = 1; k <= n; ++k) {
    const double s = kHalfPi * double(k) / double(n + 1);
    min_p = std::min(min_p, p(s));
    max_dp = std::max(max_dp, p.d1(s));
  }
  const double p_end = p(kHalfPi);
  if (p_end < min_p) {
    min_p = p_end;
    min_at = kHalfPi;
  }
  rep.worst_value = min_p;
  rep.worst_location = min_at;
  rep.pass = min_p > 0.0 && max_dp < 0.0;
  std::ostringstream detail;
  detail << "p(pi/2) = " << p_end << ", max p' on samples = " << max_dp;
  rep.detail = detail.str();
  return rep;
}

MarginReport verify_lemma_psi(double delta, long n) {
  if (!(delta > 0.0 && delta <= 2.0)) {
    throw config_error("verify_lemma_psi: need 0 < delta <= 2");
  }
  if (n < 96) throw config_error("verify_lemma_psi: need n >= 96");

  // Arc levels |z| = 1 - eps approaching the corner z = i; the per-level
  // maximum over the angular fan realizes sup f2 on the arc, which grows
  // like (1/eps)^{2-2delta} for delta < 1 and levels off for delta >= 1.
  const int levels = 12;
  const int fan = std::max<long>(8, n / levels);
  const double eps_hi = 1e-2, eps_lo = 1e-5;

  std::vector<double> log_inv_eps, log_max;
  double worst_f2 = 0.0, worst_eps = 0.0;
  long used = 0;
  for (int k = 0; k < levels; ++k) {
    const double eps =
        eps_hi * std::pow(eps_lo / eps_hi, double(k) / double(levels - 1));
    const double rho = 1.0 - eps;
    double level_max = 0.0;
    const double eta_hi = 1.4, eta_lo = eps * 1e-3;
    for (int j = 0; j < fan; ++j) {
      const double eta =
          eta_hi * std::pow(eta_lo / eta_hi, double(j) / double(fan - 1));
      const Complex z{rho * std::sin(eta), rho * std::cos(eta)};
      const double psi1 = psi(z).real();
      const double f2 =
          std::exp(-delta * std::abs(psi1)) * std::abs(psi_prime(z));
      if (!std::isfinite(f2)) continue;
      level_max = std::max(level_max, f2);
      ++used;
    }
    if (level_max <= 0.0) continue;
    log_inv_eps.push_back(std::log(1.0 / eps));
    log_max.push_back(2.0 * std::log(level_max));  // exponent of f2^2
    if (level_max > worst_f2) {
      worst_f2 = level_max;
      worst_eps = eps;
    }
  }
  if (log_inv_eps.size() < 8) {
    throw solver_error("verify_lemma_psi: fewer than 8 usable levels for the fit");
  }

  // least-squares slope of log f2^2 against log 1/(1 - |z|)
  const std::size_t m = log_inv_eps.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    sx += log_inv_eps[i];
    sy += log_max[i];
    sxx += log_inv_eps[i] * log_inv_eps[i];
    sxy += log_inv_eps[i] * log_max[i];
  }
  const double slope = (double(m) * sxy - sx * sy) / (double(m) * sxx - sx * sx);

  MarginReport rep;
  rep.lemma = "psi-decay";
  rep.samples = used;
  rep.worst_value = worst_f2;
  rep.worst_location = worst_eps;
  rep.fitted_exponent = slope;

  const bool bounded = slope <= 0.05;
  if (delta >= 1.0) {
    rep.pass = bounded;
  } else {
    const double expected = 2.0 - 2.0 * delta;
    rep.pass = !bounded && std::abs(slope - expected) <= 0.1 * expected;
  }
  std::ostringstream detail;
  detail << "delta = " << delta << ", fitted exponent " << slope
         << (bounded ? " (bounded)" : " (unbounded)");
  rep.detail = detail.str();
  return rep;
}

MarginReport verify_f1_bound(long n, std::uint64_t seed) {
  if (n < 1) throw config_error("verify_f1_bound: need n >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  double worst = 0.0;
  double worst_x = 0.0;
  for (long k = 0; k < n; ++k) {
    const double rho = std::sqrt(unit(rng));
    const double alpha = (unit(rng) - 0.5) * kPi;  // (-pi/2, pi/2)
    const Complex z{rho * std::cos(alpha), rho * std::sin(alpha)};
    if (std::abs(z - Complex{0, 1}) < 1e-12 || std::abs(z + Complex{0, 1}) < 1e-12)
      continue;
    const double f1 = (1.0 - std::norm(z)) * std::abs(psi_prime(z));
    if (f1 > worst) {
      worst = f1;
      worst_x = z.real();
    }
  }
  MarginReport rep;
  rep.lemma = "f1-bound";
  rep.samples = n;
  rep.worst_value = worst;
  rep.worst_location = worst_x;
  rep.pass = worst <= 2.0 + 1e-6;
  rep.detail = "sup (1-|z|^2)|psi'| over uniform interior samples; bound 2";
  return rep;
}

}  // namespace nslab
