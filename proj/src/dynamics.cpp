#include "coupler/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace coupler {

namespace {

// Drift entries of one waveguide, rows/columns offset by `base`
// (block order S, S^+, A, A^+, V, V^+).
void fill_waveguide_block(DoubledMatrix& m, int base, cd gs, cd ga) {
  constexpr int S = 0, Sd = 1, A = 2, Ad = 3, V = 4, Vd = 5;
  m(base + S, base + Vd) = gs;
  m(base + Sd, base + V) = -std::conj(gs);
  m(base + A, base + V) = ga;
  m(base + Ad, base + Vd) = -std::conj(ga);
  m(base + V, base + Sd) = gs;
  m(base + V, base + A) = std::conj(ga);
  m(base + Vd, base + S) = -std::conj(gs);
  m(base + Vd, base + Ad) = -ga;
}

}  // namespace

EvolutionMatrix build_drift_matrix(const ValidatedParams& params) {
  const CouplerParams& p = params.get();
  EvolutionMatrix out;
  DoubledMatrix& m = out.M;
  fill_waveguide_block(m, 0, p.gS1, p.gA1);
  fill_waveguide_block(m, kDoubledSize / 2, p.gS2, p.gA2);

  // Inter-guide block M12 (upper right) and its elementwise conjugate (lower left).
  const int S1 = annihilator_index(Mode::S1), A1 = annihilator_index(Mode::A1);
  const int S2 = annihilator_index(Mode::S2), A2 = annihilator_index(Mode::A2);
  m(S1, S2) = std::conj(p.kappaS);
  m(S1 + 1, S2 + 1) = -p.kappaS;
  m(A1, A2) = std::conj(p.kappaA);
  m(A1 + 1, A2 + 1) = -p.kappaA;
  m(S2, S1) = p.kappaS;
  m(S2 + 1, S1 + 1) = -std::conj(p.kappaS);
  m(A2, A1) = p.kappaA;
  m(A2 + 1, A1 + 1) = -std::conj(p.kappaA);
  return out;
}

DoubledMatrix BogoliubovTransform::doubled() const {
  DoubledMatrix x;
  for (int j = 0; j < kModeCount; ++j) {
    for (int k = 0; k < kModeCount; ++k) {
      x(2 * j, 2 * k) = U(j, k);
      x(2 * j, 2 * k + 1) = V(j, k);
      x(2 * j + 1, 2 * k) = std::conj(V(j, k));
      x(2 * j + 1, 2 * k + 1) = std::conj(U(j, k));
    }
  }
  return x;
}

BogoliubovTransform BogoliubovTransform::from_doubled(const DoubledMatrix& x, double z) {
  BogoliubovTransform t;
  t.z = z;
  for (int j = 0; j < kModeCount; ++j) {
    for (int k = 0; k < kModeCount; ++k) {
      t.U(j, k) = x(2 * j, 2 * k);
      t.V(j, k) = x(2 * j, 2 * k + 1);
    }
  }
  return t;
}

Propagator::Propagator(const EvolutionMatrix& m, double max_condition)
    : exp_(linalg::ComplexMatrix(cd(0.0, 1.0) * m.M), max_condition) {}

BogoliubovTransform Propagator::operator()(double z) const {
  if (z == 0.0) return BogoliubovTransform::identity();
  const DoubledMatrix x = exp_(z);
  return BogoliubovTransform::from_doubled(x, z);
}

BogoliubovTransform propagator(const EvolutionMatrix& m, double z) { return Propagator(m)(z); }

BogoliubovTransform compose(const BogoliubovTransform& second, const BogoliubovTransform& first) {
  BogoliubovTransform t;
  t.U = second.U * first.U + second.V * first.V.conjugate();
  t.V = second.U * first.V + second.V * first.U.conjugate();
  t.z = first.z + second.z;
  return t;
}

BogoliubovTransform exchange_modes(const BogoliubovTransform& t) {
  BogoliubovTransform out;
  out.z = t.z;
  for (int j = 0; j < kModeCount; ++j) {
    const int pj = index(exchanged(static_cast<Mode>(j)));
    for (int k = 0; k < kModeCount; ++k) {
      const int pk = index(exchanged(static_cast<Mode>(k)));
      out.U(pj, pk) = t.U(j, k);
      out.V(pj, pk) = t.V(j, k);
    }
  }
  return out;
}

double max_abs_difference(const BogoliubovTransform& a, const BogoliubovTransform& b) {
  return std::max((a.U - b.U).cwiseAbs().maxCoeff(), (a.V - b.V).cwiseAbs().maxCoeff());
}

double symplectic_residual(const BogoliubovTransform& t) {
  const ModeMatrix commutator =
      t.U * t.U.adjoint() - t.V * t.V.adjoint() - ModeMatrix::Identity();
  const ModeMatrix pairing = t.U * t.V.transpose() - t.V * t.U.transpose();
  return std::max(commutator.cwiseAbs().maxCoeff(), pairing.cwiseAbs().maxCoeff());
}

GaussianState evolve_state(const BogoliubovTransform& t, const GaussianState& s0) {
  const ModeMatrix& U = t.U;
  const ModeMatrix& V = t.V;
  const ModeMatrix N = s0.normal_moments();      // <a_k^+ a_l>
  const ModeMatrix A = s0.anomalous_moments();   // <a_k a_l>
  const ModeMatrix Nt1 = N.transpose() + ModeMatrix::Identity();  // <a_k a_l^+>

  const ModeVector xi = U * s0.xi + V * s0.xi.conjugate();
  // <dA_j^+ dA_k> and <dA_j dA_k> after substituting dA(z) = U da + V da^+.
  const ModeMatrix normal = U.conjugate() * N * U.transpose() +
                            U.conjugate() * A.conjugate() * V.transpose() +
                            V.conjugate() * A * U.transpose() + V.conjugate() * Nt1 * V.transpose();
  const ModeMatrix anomalous = U * A * U.transpose() + U * Nt1 * V.transpose() +
                               V * N * U.transpose() + V * A.conjugate() * V.transpose();
  return GaussianState::from_moments(xi, normal, anomalous);
}

double conserved_photon_difference(const GaussianState& s) {
  double q = 0.0;
  for (Mode m : {Mode::V1, Mode::A1, Mode::V2, Mode::A2}) q += s.mean_photons(m);
  for (Mode m : {Mode::S1, Mode::S2}) q -= s.mean_photons(m);
  return q;
}

double conservation_residual(std::span<const GaussianState> trajectory) {
  if (trajectory.empty()) return 0.0;
  const double q0 = conserved_photon_difference(trajectory.front());
  double worst = 0.0;
  for (const GaussianState& s : trajectory) {
    worst = std::max(worst, std::abs(conserved_photon_difference(s) - q0));
  }
  return worst;
}

}  // namespace coupler
