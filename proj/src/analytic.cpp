#include "coupler/analytic.hpp"

#include <algorithm>
#include <cmath>

#include "coupler/errors.hpp"

namespace coupler {

namespace {

constexpr cd I{0.0, 1.0};

cd unit_phase(cd k) {
  const double a = std::abs(k);
  return a > 0.0 ? k / a : cd{1.0, 0.0};
}

bool close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

bool close(cd a, cd b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

struct GuideRows {
  // Rows S, A, V of the first guide of `p`, columns in canonical order.
  Eigen::Matrix<cd, 3, kModeCount> U = Eigen::Matrix<cd, 3, kModeCount>::Zero();
  Eigen::Matrix<cd, 3, kModeCount> V = Eigen::Matrix<cd, 3, kModeCount>::Zero();
};

GuideRows first_guide_rows(const CouplerParams& p, double z) {
  const AnalyticFrame f = AnalyticFrame::make(p, z);
  const cd gS1 = p.gS1, gA1 = p.gA1, gS2 = p.gS2, gA2 = p.gA2;
  const double nS = std::norm(gS1), nA = std::norm(gA1);
  const cd phS = unit_phase(p.kappaS), phA = unit_phase(p.kappaA);
  const double k = f.kappa;
  const cd inv_r2 = 1.0 / f.r2;
  const cd gg = gA1 * gS1 * inv_r2;

  // Only sl / l enters; sl* / l* is its conjugate.
  const cd q = f.sl_over_l;
  const cd qs = std::conj(q);
  const cd cl_s = std::conj(f.cl);
  const cd sh = f.sh, ch = f.ch, shh = f.shh, chh = f.chh;

  const int S1 = 0, A1 = 1, V1 = 2, S2 = 3, A2 = 4, V2 = 5;
  GuideRows g;

  // A_S1(z)
  g.U(0, S1) = inv_r2 * (-nA * chh + nS * (-k * sh * qs + ch * cl_s));
  g.V(0, A1) = gg * (-chh - k * sh * qs + ch * cl_s);
  g.U(0, S2) = I * inv_r2 * std::conj(phS) * (-nA * shh + nS * (k * ch * qs + sh * cl_s));
  g.V(0, A2) = I * gg * phA * (shh - k * ch * qs - sh * cl_s);
  g.V(0, V1) = 2.0 * I * gS1 * ch * qs;
  g.V(0, V2) = -2.0 * std::conj(phS) * gS2 * sh * qs;

  // A_A1(z)
  g.V(1, S1) = gg * (chh + k * sh * q - ch * f.cl);
  g.U(1, V1) = 2.0 * I * gA1 * ch * q;
  g.U(1, A1) = inv_r2 * (nS * chh + nA * (k * sh * q - ch * f.cl));
  g.U(1, A2) = I * inv_r2 * std::conj(phA) * (nS * shh - nA * (k * ch * q + sh * f.cl));
  g.V(1, S2) = -I * gg * phS * (shh - k * ch * q - sh * f.cl);
  g.U(1, V2) = -2.0 * std::conj(phA) * gA2 * sh * q;

  // A_V1(z)
  g.V(2, S1) = 2.0 * I * gS1 * ch * q;
  g.U(2, A1) = 2.0 * I * std::conj(gA1) * ch * q;
  g.U(2, V1) = k * sh * q + ch * f.cl;
  g.V(2, S2) = 2.0 * gS1 * phS * sh * q;
  g.U(2, A2) = -2.0 * std::conj(gA1) * std::conj(phA) * sh * q;
  g.U(2, V2) = -I * std::conj(phA) * (gA2 / gA1) * (k * ch * q - sh * f.cl);

  return g;
}

}  // namespace

AnalyticFrame AnalyticFrame::make(const CouplerParams& p, double z) {
  AnalyticFrame f;
  f.r2 = std::norm(p.gS1) - std::norm(p.gA1);
  f.kappa = std::abs(p.kappaS);
  f.l = std::sqrt(cd(f.kappa * f.kappa) - 4.0 * f.r2);
  f.shh = std::sin(f.kappa * z);
  f.chh = std::cos(f.kappa * z);
  f.sh = std::sin(f.kappa * z / 2.0);
  f.ch = std::cos(f.kappa * z / 2.0);
  const cd x = f.l * z / 2.0;
  f.sl = std::sin(x);
  f.cl = std::cos(x);
  if (std::abs(f.l * z) < 1e-6) {
    // sin(l z/2)/l = z/2 (1 - x^2/6 + x^4/120)
    const cd x2 = x * x;
    f.sl_over_l = z / 2.0 * (1.0 - x2 / 6.0 + x2 * x2 / 120.0);
  } else {
    f.sl_over_l = f.sl / f.l;
  }
  return f;
}

bool conditions_satisfied(const ValidatedParams& params, double tol) {
  const CouplerParams& p = params.get();
  if (!close(std::abs(p.gS1), std::abs(p.gS2), tol)) return false;
  if (!close(std::abs(p.gA1), std::abs(p.gA2), tol)) return false;
  if (!close(std::abs(p.kappaS), std::abs(p.kappaA), tol)) return false;
  if (std::abs(p.gA1) == 0.0) return false;
  if (close(std::norm(p.gS1), std::norm(p.gA1), tol)) return false;
  if (std::abs(p.kappaS) == 0.0 || std::abs(p.gS1) == 0.0) return true;
  const cd lhs = std::conj(unit_phase(p.kappaA)) * (p.gA2 / p.gA1);
  const cd rhs = -unit_phase(p.kappaS) * std::conj(p.gS2 / p.gS1);
  return close(lhs, rhs, tol);
}

BogoliubovTransform analytic_propagator(const ValidatedParams& params, double z) {
  if (!conditions_satisfied(params)) {
    throw UnsupportedConfiguration(
        "analytic solution requires |gS1|=|gS2|, |gA1|=|gA2|, |kappaS|=|kappaA|, the coupling "
        "phase relation, gA1 != 0 and |gS1| != |gA1|");
  }
  const CouplerParams& p = params.get();
  BogoliubovTransform first;
  first.z = z;
  const GuideRows g1 = first_guide_rows(p, z);
  const GuideRows g2 = first_guide_rows(exchange_waveguides(p), z);
  first.U.topRows<3>() = g1.U;
  first.V.topRows<3>() = g1.V;

  // Rows of the exchanged system, relabelled back: its S1 row is our S2 row.
  BogoliubovTransform swapped;
  swapped.z = z;
  swapped.U.topRows<3>() = g2.U;
  swapped.V.topRows<3>() = g2.V;
  const BogoliubovTransform back = exchange_modes(swapped);
  first.U.bottomRows<3>() = back.U.bottomRows<3>();
  first.V.bottomRows<3>() = back.V.bottomRows<3>();
  return first;
}

}  // namespace coupler
