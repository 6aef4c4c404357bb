#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace coupler {

using cd = std::complex<double>;

// The six quantized modes after the classical-pump substitution, in canonical
// order. The numeric value is the row/column index used everywhere.
enum class Mode : int { S1 = 0, A1 = 1, V1 = 2, S2 = 3, A2 = 4, V2 = 5 };

inline constexpr int kModeCount = 6;
inline constexpr std::array<Mode, kModeCount> kAllModes{Mode::S1, Mode::A1, Mode::V1,
                                                        Mode::S2, Mode::A2, Mode::V2};

constexpr int index(Mode m) { return static_cast<int>(m); }
std::string_view mode_name(Mode m);
std::optional<Mode> parse_mode(std::string_view name);

// Image of a mode under the exchange of the two waveguides (S1 <-> S2, ...).
constexpr Mode exchanged(Mode m) {
  return static_cast<Mode>((index(m) + 3) % kModeCount);
}

using ModeVector = Eigen::Matrix<cd, kModeCount, 1>;
using RealModeVector = Eigen::Matrix<double, kModeCount, 1>;
using ModeMatrix = Eigen::Matrix<cd, kModeCount, kModeCount>;

struct PhaseMismatch {
  double dkS1 = 0.0;
  double dkA1 = 0.0;
  double dkS2 = 0.0;
  double dkA2 = 0.0;
  double dKS = 0.0;
  double dKA = 0.0;

  bool all_zero() const {
    return dkS1 == 0.0 && dkA1 == 0.0 && dkS2 == 0.0 && dkA2 == 0.0 && dKS == 0.0 && dKA == 0.0;
  }
};

// Effective coupling constants. The nonlinear constants g already contain the
// classical pump amplitude; units are inverse propagation length.
struct CouplerParams {
  cd gS1{};
  cd gA1{};
  cd gS2{};
  cd gA2{};
  cd kappaS{};
  cd kappaA{};
  PhaseMismatch mismatch{};

  cd gS(int guide) const { return guide == 1 ? gS1 : gS2; }
  cd gA(int guide) const { return guide == 1 ? gA1 : gA2; }
};

// Parameters after the waveguide exchange: suffixes 1 <-> 2, kappa -> kappa*.
CouplerParams exchange_waveguides(const CouplerParams& p);

// CouplerParams that passed validate_params(). Only constructible through it.
class ValidatedParams {
 public:
  const CouplerParams& get() const { return params_; }
  const CouplerParams* operator->() const { return &params_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  friend ValidatedParams validate_params(const CouplerParams& params);
  ValidatedParams(CouplerParams p, std::vector<std::string> w)
      : params_(p), warnings_(std::move(w)) {}

  CouplerParams params_;
  std::vector<std::string> warnings_;
};

// Rejects nonzero mismatches (UnsupportedConfiguration) and non-finite values
// (ValidationError). Flags |g_A| <= |g_S| in a waveguide with active couplings
// as a warning only.
ValidatedParams validate_params(const CouplerParams& params);

// Incident field of one mode: coherent amplitude plus squeezing and chaotic
// noise.
struct InputSpec {
  cd xi{};
  double r = 0.0;
  double theta = 0.0;
  double n_ch = 0.0;
};

using InputSet = std::array<InputSpec, kModeCount>;

// Gaussian state in the generalized superposition of coherent fields and
// quantum noise. All noise functions are normally ordered:
//   B_j = <dA_j^+ dA_j>, C_j = <dA_j^2>,
//   D_jk = <dA_j dA_k>, Dbar_jk = -<dA_j^+ dA_k>   (j != k, diagonals zero).
struct GaussianState {
  ModeVector xi = ModeVector::Zero();
  RealModeVector B = RealModeVector::Zero();
  ModeVector C = ModeVector::Zero();
  ModeMatrix D = ModeMatrix::Zero();
  ModeMatrix Dbar = ModeMatrix::Zero();

  // N_jk = <dA_j^+ dA_k>, Hermitian.
  ModeMatrix normal_moments() const;
  // M_jk = <dA_j dA_k>, symmetric.
  ModeMatrix anomalous_moments() const;

  static GaussianState from_moments(const ModeVector& xi, const ModeMatrix& normal,
                                    const ModeMatrix& anomalous);

  double mean_photons(Mode m) const { return B(index(m)) + std::norm(xi(index(m))); }
};

// Smallest eigenvalue of the 12x12 Gram matrix <dx_a dx_b^+> with
// x = (A_1..A_6, A_1^+..A_6^+). Nonnegative for every physical state.
double min_covariance_eigenvalue(const GaussianState& s);
bool is_physical(const GaussianState& s, double tol = 1e-9);

// Independent squeezed/chaotic/coherent inputs converted to normal ordering:
// B = cosh^2 r + n_ch - 1, C = exp(i theta) sinh(2r) / 2.
GaussianState build_input_state(const InputSet& inputs);

// One or two distinct modes; a pair is kept in canonical order.
class ModeSelection {
 public:
  explicit ModeSelection(Mode single);
  ModeSelection(Mode a, Mode b);

  bool compound() const { return count_ == 2; }
  int size() const { return count_; }
  Mode first() const { return modes_[0]; }
  Mode second() const { return modes_[1]; }
  Mode operator[](int i) const { return modes_[static_cast<std::size_t>(i)]; }

  // "S1" or "S1A1".
  std::string name() const;
  // Accepts "S1", "S1A1", "S1,A1" and "S1V1"-style concatenations.
  static ModeSelection parse(std::string_view text);

  ModeSelection exchanged() const;

  friend bool operator==(const ModeSelection& a, const ModeSelection& b) {
    return a.count_ == b.count_ && a.modes_[0] == b.modes_[0] &&
           (a.count_ == 1 || a.modes_[1] == b.modes_[1]);
  }

 private:
  std::array<Mode, 2> modes_{};
  int count_ = 1;
};

// State with modes relabelled by the waveguide exchange (no conjugation of
// the state itself; pairs with exchange_waveguides on the parameters).
GaussianState exchange_modes(const GaussianState& s);
InputSet exchange_modes(const InputSet& in);

}  // namespace coupler
