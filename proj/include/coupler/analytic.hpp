#pragma once

#include "coupler/dynamics.hpp"
#include "coupler/model.hpp"

namespace coupler {

// Trigonometric cache of the closed-form solution. Arguments may be complex:
// when |g_A1| > |g_S1| the quantity r^2 is negative and the l-functions turn
// hyperbolic.
struct AnalyticFrame {
  cd r2;             // |g_S1|^2 - |g_A1|^2
  cd l;              // sqrt(kappa^2 - 4 r^2), principal branch
  double kappa = 0;  // |kappa_S|
  cd shh, chh, sh, ch, sl, cl;
  cd sl_over_l;      // sin(l z / 2) / l, series near l z = 0

  static AnalyticFrame make(const CouplerParams& p, double z);
};

// True on the manifold where the coupler splits into two decoupled
// three-mode systems: equal coupling magnitudes in both guides and the
// phase relation between kappa_A g_A2 / g_A1 and kappa_S g_S2^* / g_S1^*.
// With kappa = 0, or with g_S = 0 in both guides, the phase relation is
// vacuous. g_A1 = 0 or |g_S1| = |g_A1| are never accepted (the closed form
// divides by g_A1 and by r^2).
bool conditions_satisfied(const ValidatedParams& params, double tol = 1e-12);

// Closed-form U, V. Throws UnsupportedConfiguration off the manifold.
BogoliubovTransform analytic_propagator(const ValidatedParams& params, double z);

}  // namespace coupler
