#pragma once

#include <span>

#include <Eigen/Core>

#include "coupler/matrix_exp.hpp"
#include "coupler/model.hpp"

namespace coupler {

// Doubled operator basis (S1, S1^+, A1, A1^+, V1, V1^+, S2, ..., V2^+): the
// annihilator of canonical mode m sits at 2m, its creator at 2m + 1.
inline constexpr int kDoubledSize = 2 * kModeCount;
using DoubledMatrix = Eigen::Matrix<cd, kDoubledSize, kDoubledSize>;

constexpr int annihilator_index(Mode m) { return 2 * index(m); }
constexpr int creator_index(Mode m) { return 2 * index(m) + 1; }

// Drift matrix M of dA/dz = i M A in the doubled basis. Constant in z since
// all phase mismatches vanish.
struct EvolutionMatrix {
  DoubledMatrix M = DoubledMatrix::Zero();
};

// A_j(z) = sum_k U_jk A_k(0) + V_jk A_k^+(0).
struct BogoliubovTransform {
  ModeMatrix U = ModeMatrix::Identity();
  ModeMatrix V = ModeMatrix::Zero();
  double z = 0.0;

  static BogoliubovTransform identity() { return {}; }

  // Rows of the full doubled-basis map; creator rows are the conjugates.
  DoubledMatrix doubled() const;
  static BogoliubovTransform from_doubled(const DoubledMatrix& x, double z);
};

EvolutionMatrix build_drift_matrix(const ValidatedParams& params);

// exp(i M z) for many z from one decomposition of i M.
class Propagator {
 public:
  explicit Propagator(const EvolutionMatrix& m,
                      double max_condition = linalg::MatrixExponential::kDefaultMaxCondition);

  BogoliubovTransform operator()(double z) const;
  bool spectral() const { return exp_.spectral(); }

 private:
  linalg::MatrixExponential exp_;
};

BogoliubovTransform propagator(const EvolutionMatrix& m, double z);

// Transform of applying `first` and then `second`.
BogoliubovTransform compose(const BogoliubovTransform& second, const BogoliubovTransform& first);

// Relabel rows and columns by the waveguide exchange S1 <-> S2, A1 <-> A2,
// V1 <-> V2.
BogoliubovTransform exchange_modes(const BogoliubovTransform& t);

double max_abs_difference(const BogoliubovTransform& a, const BogoliubovTransform& b);

// max-norm of (U U^H - V V^H - I) and (U V^T - V U^T).
double symplectic_residual(const BogoliubovTransform& t);

// Mean fields and normally-ordered noise functions after the transform.
GaussianState evolve_state(const BogoliubovTransform& t, const GaussianState& s0);

// sum_j <n_Vj> + <n_Aj> - <n_Sj>, conserved by the coupler dynamics.
double conserved_photon_difference(const GaussianState& s);

// max_z |Q(z) - Q(0)| along a trajectory.
double conservation_residual(std::span<const GaussianState> trajectory);

}  // namespace coupler
