#include "coupler/model.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "coupler/errors.hpp"

namespace coupler {

namespace {

constexpr std::array<std::string_view, kModeCount> kModeNames{"S1", "A1", "V1",
                                                              "S2", "A2", "V2"};

bool finite(cd v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

}  // namespace

std::string_view mode_name(Mode m) { return kModeNames[static_cast<std::size_t>(index(m))]; }

std::optional<Mode> parse_mode(std::string_view name) {
  for (Mode m : kAllModes) {
    if (mode_name(m) == name) return m;
  }
  return std::nullopt;
}

CouplerParams exchange_waveguides(const CouplerParams& p) {
  CouplerParams q = p;
  q.gS1 = p.gS2;
  q.gS2 = p.gS1;
  q.gA1 = p.gA2;
  q.gA2 = p.gA1;
  q.kappaS = std::conj(p.kappaS);
  q.kappaA = std::conj(p.kappaA);
  q.mismatch.dkS1 = p.mismatch.dkS2;
  q.mismatch.dkS2 = p.mismatch.dkS1;
  q.mismatch.dkA1 = p.mismatch.dkA2;
  q.mismatch.dkA2 = p.mismatch.dkA1;
  q.mismatch.dKS = -p.mismatch.dKS;
  q.mismatch.dKA = -p.mismatch.dKA;
  return q;
}

ValidatedParams validate_params(const CouplerParams& p) {
  for (cd v : {p.gS1, p.gA1, p.gS2, p.gA2, p.kappaS, p.kappaA}) {
    if (!finite(v)) throw ValidationError("coupling constant is not finite");
  }
  const PhaseMismatch& m = p.mismatch;
  for (double v : {m.dkS1, m.dkA1, m.dkS2, m.dkA2, m.dKS, m.dKA}) {
    if (!std::isfinite(v)) throw ValidationError("phase mismatch is not finite");
  }
  if (!m.all_zero()) {
    throw UnsupportedConfiguration("nonzero phase mismatch: only perfectly matched couplers are modelled");
  }

  std::vector<std::string> warnings;
  for (int guide : {1, 2}) {
    const double gs = std::abs(p.gS(guide));
    const double ga = std::abs(p.gA(guide));
    if ((gs > 0.0 || ga > 0.0) && ga <= gs) {
      warnings.push_back("waveguide " + std::to_string(guide) +
                         ": |g_A| <= |g_S|, outside the regime favouring nonclassical light");
    }
  }
  return ValidatedParams(p, std::move(warnings));
}

ModeMatrix GaussianState::normal_moments() const {
  ModeMatrix n = -Dbar;
  for (int j = 0; j < kModeCount; ++j) n(j, j) = B(j);
  return n;
}

ModeMatrix GaussianState::anomalous_moments() const {
  ModeMatrix a = D;
  for (int j = 0; j < kModeCount; ++j) a(j, j) = C(j);
  return a;
}

GaussianState GaussianState::from_moments(const ModeVector& xi, const ModeMatrix& normal,
                                          const ModeMatrix& anomalous) {
  // Enforce the exact Hermitian / symmetric structure; the inputs carry it
  // only up to rounding.
  const ModeMatrix n = 0.5 * (normal + normal.adjoint());
  const ModeMatrix a = 0.5 * (anomalous + anomalous.transpose());

  GaussianState s;
  s.xi = xi;
  for (int j = 0; j < kModeCount; ++j) {
    s.B(j) = n(j, j).real();
    s.C(j) = a(j, j);
    for (int k = 0; k < kModeCount; ++k) {
      if (j == k) continue;
      s.D(j, k) = a(j, k);
      s.Dbar(j, k) = -n(j, k);
    }
  }
  return s;
}

double min_covariance_eigenvalue(const GaussianState& s) {
  const ModeMatrix n = s.normal_moments();
  const ModeMatrix a = s.anomalous_moments();
  Eigen::Matrix<cd, 2 * kModeCount, 2 * kModeCount> gram;
  gram.topLeftCorner<kModeCount, kModeCount>() = n.transpose() + ModeMatrix::Identity();
  gram.topRightCorner<kModeCount, kModeCount>() = a;
  gram.bottomLeftCorner<kModeCount, kModeCount>() = a.conjugate();
  gram.bottomRightCorner<kModeCount, kModeCount>() = n;
  Eigen::SelfAdjointEigenSolver<decltype(gram)> solver(gram, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

bool is_physical(const GaussianState& s, double tol) {
  if ((s.B.array() < -tol).any()) return false;
  return min_covariance_eigenvalue(s) >= -tol;
}

GaussianState build_input_state(const InputSet& inputs) {
  GaussianState s;
  for (int j = 0; j < kModeCount; ++j) {
    const InputSpec& in = inputs[static_cast<std::size_t>(j)];
    if (!(in.r >= 0.0) || !std::isfinite(in.r)) {
      throw ValidationError("squeeze parameter r must be finite and >= 0");
    }
    if (!(in.n_ch >= 0.0) || !std::isfinite(in.n_ch)) {
      throw ValidationError("chaotic noise n_ch must be finite and >= 0");
    }
    if (!finite(in.xi) || !std::isfinite(in.theta)) {
      throw ValidationError("coherent amplitude and squeeze phase must be finite");
    }
    s.xi(j) = in.xi;
    // sinh^2 r written directly avoids cancellation in cosh^2 r - 1.
    s.B(j) = std::sinh(in.r) * std::sinh(in.r) + in.n_ch;
    s.C(j) = 0.5 * std::polar(1.0, in.theta) * std::sinh(2.0 * in.r);
  }
  return s;
}

ModeSelection::ModeSelection(Mode single) : modes_{single, single}, count_(1) {}

ModeSelection::ModeSelection(Mode a, Mode b) : count_(2) {
  if (a == b) throw ValidationError("compound mode needs two distinct modes");
  if (index(a) > index(b)) std::swap(a, b);
  modes_ = {a, b};
}

std::string ModeSelection::name() const {
  std::string out(mode_name(modes_[0]));
  if (compound()) out += mode_name(modes_[1]);
  return out;
}

ModeSelection ModeSelection::parse(std::string_view text) {
  std::string compact;
  for (char c : text) {
    if (c != ',' && c != ' ' && c != '\t' && c != '(' && c != ')') compact.push_back(c);
  }
  auto mode_at = [&](std::size_t pos) -> Mode {
    auto m = parse_mode(std::string_view(compact).substr(pos, 2));
    if (!m) throw ValidationError("unknown mode in selection '" + std::string(text) + "'");
    return *m;
  };
  if (compact.size() == 2) return ModeSelection(mode_at(0));
  if (compact.size() == 4) return ModeSelection(mode_at(0), mode_at(2));
  throw ValidationError("mode selection must name one or two modes: '" + std::string(text) + "'");
}

ModeSelection ModeSelection::exchanged() const {
  if (!compound()) return ModeSelection(coupler::exchanged(modes_[0]));
  return ModeSelection(coupler::exchanged(modes_[0]), coupler::exchanged(modes_[1]));
}

GaussianState exchange_modes(const GaussianState& s) {
  GaussianState out;
  for (int j = 0; j < kModeCount; ++j) {
    const int pj = index(exchanged(static_cast<Mode>(j)));
    out.xi(pj) = s.xi(j);
    out.B(pj) = s.B(j);
    out.C(pj) = s.C(j);
    for (int k = 0; k < kModeCount; ++k) {
      const int pk = index(exchanged(static_cast<Mode>(k)));
      out.D(pj, pk) = s.D(j, k);
      out.Dbar(pj, pk) = s.Dbar(j, k);
    }
  }
  return out;
}

InputSet exchange_modes(const InputSet& in) {
  InputSet out;
  for (Mode m : kAllModes) {
    out[static_cast<std::size_t>(index(exchanged(m)))] = in[static_cast<std::size_t>(index(m))];
  }
  return out;
}

}  // namespace coupler
