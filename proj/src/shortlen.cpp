#include "coupler/shortlen.hpp"

#include <array>
#include <cmath>

#include "coupler/errors.hpp"

namespace coupler {

namespace {

constexpr cd I{0.0, 1.0};

// Rows S1, A1, V1 of U and V; columns in canonical order.
struct FirstGuideRows {
  Eigen::Matrix<cd, 3, kModeCount> U = Eigen::Matrix<cd, 3, kModeCount>::Zero();
  Eigen::Matrix<cd, 3, kModeCount> V = Eigen::Matrix<cd, 3, kModeCount>::Zero();
};

FirstGuideRows first_guide_rows(const CouplerParams& p, double z) {
  const int S1 = 0, A1 = 1, V1 = 2, S2 = 3, A2 = 4, V2 = 5;
  const double z2 = z * z / 2.0;
  const cd gS = p.gS1, gA = p.gA1;
  FirstGuideRows r;

  r.U(0, S1) = 1.0 + (std::norm(gS) - std::norm(p.kappaS)) * z2;
  r.V(0, V1) = I * gS * z;
  r.U(0, S2) = I * std::conj(p.kappaS) * z;
  r.V(0, A1) = gS * gA * z2;
  r.V(0, V2) = -std::conj(p.kappaS) * p.gS2 * z2;

  r.U(1, A1) = 1.0 - (std::norm(gA) + std::norm(p.kappaA)) * z2;
  r.U(1, V1) = I * gA * z;
  r.U(1, A2) = I * std::conj(p.kappaA) * z;
  r.V(1, S1) = -gS * gA * z2;
  r.U(1, V2) = -std::conj(p.kappaA) * p.gA2 * z2;

  r.U(2, V1) = 1.0 - (std::norm(gA) - std::norm(gS)) * z2;
  r.U(2, A1) = I * std::conj(gA) * z;
  r.V(2, S1) = I * gS * z;
  r.U(2, A2) = -std::conj(gA) * std::conj(p.kappaA) * z2;
  r.V(2, S2) = gS * p.kappaS * z2;
  return r;
}

// Matrix-valued polynomial c0 + c1 z + c2 z^2, products truncated at z^2.
using Poly = std::array<ModeMatrix, 3>;

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out;
  for (int n = 0; n <= 2; ++n) {
    out[n] = ModeMatrix::Zero();
    for (int k = 0; k <= n; ++k) out[n] += a[k] * b[n - k];
  }
  return out;
}

Poly poly_add(const Poly& a, const Poly& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

Poly poly_conj(const Poly& a) {
  return {a[0].conjugate(), a[1].conjugate(), a[2].conjugate()};
}

Poly poly_transpose(const Poly& a) {
  return {a[0].transpose(), a[1].transpose(), a[2].transpose()};
}

Poly constant(const ModeMatrix& m) {
  return {m, ModeMatrix::Zero(), ModeMatrix::Zero()};
}

ModeMatrix evaluate(const Poly& p, double z) { return p[0] + z * p[1] + z * z * p[2]; }

}  // namespace

GaussianState ShortlenCoefficients::with_means(const ModeVector& xi) const {
  GaussianState s;
  s.xi = xi;
  s.B = B;
  s.C = C;
  s.D = D;
  s.Dbar = Dbar;
  return s;
}

BogoliubovTransform short_propagator(const ValidatedParams& params, double z) {
  const CouplerParams& p = params.get();
  const FirstGuideRows own = first_guide_rows(p, z);

  BogoliubovTransform swapped;
  const FirstGuideRows other = first_guide_rows(exchange_waveguides(p), z);
  swapped.U.topRows<3>() = other.U;
  swapped.V.topRows<3>() = other.V;
  const BogoliubovTransform back = exchange_modes(swapped);

  BogoliubovTransform t;
  t.z = z;
  t.U.topRows<3>() = own.U;
  t.V.topRows<3>() = own.V;
  t.U.bottomRows<3>() = back.U.bottomRows<3>();
  t.V.bottomRows<3>() = back.V.bottomRows<3>();
  return t;
}

ShortlenCoefficients shortlen_coefficients(const ValidatedParams& params, double nV1, double nV2,
                                           double z) {
  if (!(nV1 >= 0.0) || !(nV2 >= 0.0)) {
    throw ValidationError("short-length coefficients need nonnegative phonon numbers");
  }
  // Taylor coefficients of U(z), V(z): the short propagator is exactly
  // quadratic, so sampling it at z = 1 and z = -1 recovers them.
  const BogoliubovTransform tp = short_propagator(params, 1.0);
  const BogoliubovTransform tm = short_propagator(params, -1.0);
  const Poly U{ModeMatrix::Identity(), (tp.U - tm.U) / 2.0,
               (tp.U + tm.U) / 2.0 - ModeMatrix::Identity()};
  const Poly V{ModeMatrix::Zero(), (tp.V - tm.V) / 2.0, (tp.V + tm.V) / 2.0};

  ModeMatrix n0 = ModeMatrix::Zero();
  n0(index(Mode::V1), index(Mode::V1)) = nV1;
  n0(index(Mode::V2), index(Mode::V2)) = nV2;
  const Poly N = constant(n0);
  const Poly Nt1 = constant(n0.transpose() + ModeMatrix::Identity());

  // No anomalous input moments: only the N and N^T + 1 terms survive.
  const Poly normal = poly_add(poly_mul(poly_mul(poly_conj(U), N), poly_transpose(U)),
                               poly_mul(poly_mul(poly_conj(V), Nt1), poly_transpose(V)));
  const Poly anomalous = poly_add(poly_mul(poly_mul(U, Nt1), poly_transpose(V)),
                                  poly_mul(poly_mul(V, N), poly_transpose(U)));

  const GaussianState s =
      GaussianState::from_moments(ModeVector::Zero(), evaluate(normal, z), evaluate(anomalous, z));
  ShortlenCoefficients c;
  c.B = s.B;
  c.C = s.C;
  c.D = s.D;
  c.Dbar = s.Dbar;
  c.z = z;
  return c;
}

ModeVector shortlen_mean_amplitudes(const ValidatedParams& params, const ModeVector& xi0,
                                    double z) {
  const BogoliubovTransform t = short_propagator(params, z);
  return t.U * xi0 + t.V * xi0.conjugate();
}

}  // namespace coupler
