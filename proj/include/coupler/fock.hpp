#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "coupler/model.hpp"

namespace coupler::fock {

using StateVector = Eigen::VectorXcd;
using SparseOperator = Eigen::SparseMatrix<cd, Eigen::RowMajor, std::int64_t>;

inline constexpr int kMaxModes = 4;
inline constexpr int kMaxCutoff = 16;
inline constexpr std::int64_t kMaxDimension = 200000;

// Truncated subsystem: modes in canonical order, occupations 0..cutoff.
// Only {S1,V1}, {A1,V1}, {S1,A1,V1}, {S1,V1,S2,V2} and {A1,V1,A2,V2} are
// accepted, and no coupling may connect a selected mode to an excluded one.
struct FockConfig {
  std::vector<Mode> modes;
  int cutoff = 8;
  CouplerParams params{};
};

// Lexicographic occupation basis, first mode most significant.
class FockBasis {
 public:
  explicit FockBasis(const FockConfig& cfg);

  int mode_count() const { return static_cast<int>(modes_.size()); }
  int cutoff() const { return cutoff_; }
  std::int64_t dimension() const { return dim_; }
  // Position of m in the subsystem, -1 when absent.
  int slot(Mode m) const;
  Mode mode(int slot) const { return modes_[static_cast<std::size_t>(slot)]; }

  int occupation(std::int64_t state, int slot) const {
    return static_cast<int>((state / stride_[static_cast<std::size_t>(slot)]) % (cutoff_ + 1));
  }
  std::int64_t stride(int slot) const { return stride_[static_cast<std::size_t>(slot)]; }

 private:
  std::vector<Mode> modes_;
  std::vector<std::int64_t> stride_;
  int cutoff_;
  std::int64_t dim_;
};

// Throws UnsupportedConfiguration for subsystems outside the list above,
// ValidationError for cutoff or dimension overflow.
void validate_config(const FockConfig& cfg);

// G = gS aV^+ aS^+ + gA aV aA^+ + kS aS1 aS2^+ + kA aA1 aA2^+ + h.c. for the
// selected modes. States evolve as exp(+i G z).
SparseOperator build_hamiltonian(const FockConfig& cfg);

// y = H x, rows split across OpenMP threads.
void apply_hamiltonian(const SparseOperator& h, const StateVector& x, StateVector& y);
// Single-threaded reference for apply_hamiltonian.
void apply_hamiltonian_serial(const SparseOperator& h, const StateVector& x, StateVector& y);

// exp(i H z) psi by Lanczos with full reorthogonalization and adaptive
// substeps.
StateVector expm_action(const SparseOperator& h, const StateVector& psi, double z,
                        int krylov_dim = 30, double tol = 1e-13);

// Per-mode input: coherent amplitude, or thermal with mean number n_th
// (thermal modes must have xi = 0).
struct FockInput {
  cd xi{};
  double n_th = 0.0;
};

// Statistical mixture of pure states.
struct FockMixture {
  std::vector<double> weights;
  std::vector<StateVector> states;
};

inline constexpr double kThermalMassCut = 1e-8;
inline constexpr double kLeakageLimit = 1e-4;

// Thermal modes are expanded over Fock states until the discarded
// probability is below kThermalMassCut; weights are renormalized.
FockMixture initial_mixture(const FockConfig& cfg, const std::array<FockInput, kModeCount>& in);

// Evolve every member (members in parallel). Throws TruncationError when the
// weighted population on the cutoff boundary exceeds kLeakageLimit.
FockMixture evolve(const FockConfig& cfg, const SparseOperator& h, const FockMixture& m0, double z);
FockMixture evolve_serial(const FockConfig& cfg, const SparseOperator& h, const FockMixture& m0,
                          double z);

// Weighted probability of having some selected mode at the cutoff.
double boundary_population(const FockBasis& basis, const FockMixture& m);

double mean_photons(const FockBasis& basis, const FockMixture& m, Mode mode);

struct FockStatistics {
  std::vector<double> p_n;        // distribution of the summed photon number
  std::vector<double> moments;    // factorial moments <W^k>, k = 0..k_max
  double mean_w = 0.0;
  double lambda = 0.0;
  double var_p = 0.0;
  double var_q = 0.0;
};

// Statistics of the selection (modes must belong to the subsystem).
FockStatistics fock_statistics(const FockBasis& basis, const FockMixture& m,
                               const ModeSelection& sel, int k_max = 4);

// < :exp(-s W): > = sum_n p(n) (1 - s)^n
double normal_generating_function(const std::vector<double>& p_n, double s);

}  // namespace coupler::fock
