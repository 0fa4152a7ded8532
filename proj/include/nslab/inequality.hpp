#pragma once

/// @file inequality.hpp
/// @brief Numerical certification of the two analytic ingredients of the
/// decay theory: the quartic supersolution inequality for the strip
/// operator, and the boundedness dichotomy of the boundary factors
/// f1 = (1-|z|^2)|psi'| and f2 = e^{-delta |psi_1|} |psi'|.
///
/// The supersolution certificate is sampling plus a closed-form Lipschitz
/// gap bound on compact subintervals; the endpoint neighborhoods, where the
/// drift G diverges, are certified analytically.

#include <cstdint>
#include <vector>

#include "nslab/geometry.hpp"
#include "nslab/margin_report.hpp"

namespace nslab {

/// p(s) = 8s^4 - 50s^2 + 75 with decay rate delta = 1: the profile of the
/// supersolution e^{-|r|} p(s).  p1 = p', p2 = p'' + p; the certified
/// expression is lhs(s) = p2(s) + G(s) p1(s) <= 0.
struct SupersolutionPolynomial {
  double delta = 1.0;

  double operator()(double s) const { return (8.0 * s * s - 50.0) * s * s + 75.0; }
  double d1(double s) const { return (32.0 * s * s - 100.0) * s; }
  double d2(double s) const { return 96.0 * s * s - 100.0; }

  double p1(double s) const { return d1(s); }
  double p2(double s) const { return d2(s) + delta * delta * (*this)(s); }
  double lhs(double s) const { return p2(s) + coefficient_G(s) * p1(s); }
};

/// Value p(pi/2) ~ 0.33449, the admissibility ceiling for boundary traces
/// entering the comparison argument.
double supersolution_ceiling();

/// Certifies lhs(s) <= 0 on (0, pi/2) with n Chebyshev samples, per-gap
/// Lipschitz bounds on [0.7, pi/2 - 1e-4], and analytic endpoint zones.
MarginReport verify_supersolution(long n);

/// Positivity of p on [0, pi/2]: monotone decrease plus endpoint value.
MarginReport verify_positivity_p();

/// Fits the growth exponent of f2^2 against log 1/(1-|z|) over a ladder of
/// arc levels |z| = 1 - eps approaching the corner z = i; the per-level
/// maximum over a fan of arc points realizes sup_{|z|=1-eps} f2.
/// Expected exponent: 2 - 2 delta for delta < 1, ~0 for delta >= 1.
/// n is the total evaluation budget (>= 96).
MarginReport verify_lemma_psi(double delta, long n = 4096);

/// Max of f1 over n uniform random interior samples; bounded by 2.
MarginReport verify_f1_bound(long n, std::uint64_t seed);

}  // namespace nslab
