#include "coupler/fock.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "coupler/errors.hpp"

namespace coupler::fock {

namespace {

using Triplet = Eigen::Triplet<cd, std::int64_t>;

const std::vector<std::vector<Mode>>& allowed_subsystems() {
  static const std::vector<std::vector<Mode>> sets{
      {Mode::S1, Mode::V1},
      {Mode::A1, Mode::V1},
      {Mode::S1, Mode::A1, Mode::V1},
      {Mode::S1, Mode::V1, Mode::S2, Mode::V2},
      {Mode::A1, Mode::V1, Mode::A2, Mode::V2},
  };
  return sets;
}

// One quadratic term c * op(a) op(b) with op = annihilate (false) or
// create (true).
struct Term {
  cd c;
  Mode a;
  bool a_create;
  Mode b;
  bool b_create;
};

std::vector<Term> interaction_terms(const CouplerParams& p) {
  std::vector<Term> t;
  const std::array<std::array<Mode, 3>, 2> guides{{{Mode::S1, Mode::A1, Mode::V1},
                                                   {Mode::S2, Mode::A2, Mode::V2}}};
  for (int g = 0; g < 2; ++g) {
    const Mode s = guides[g][0], a = guides[g][1], v = guides[g][2];
    const cd gs = p.gS(g + 1), ga = p.gA(g + 1);
    t.push_back({gs, v, true, s, true});
    t.push_back({std::conj(gs), v, false, s, false});
    t.push_back({ga, v, false, a, true});
    t.push_back({std::conj(ga), v, true, a, false});
  }
  t.push_back({p.kappaS, Mode::S1, false, Mode::S2, true});
  t.push_back({std::conj(p.kappaS), Mode::S1, true, Mode::S2, false});
  t.push_back({p.kappaA, Mode::A1, false, Mode::A2, true});
  t.push_back({std::conj(p.kappaA), Mode::A1, true, Mode::A2, false});
  return t;
}

// Apply a single ladder operator to basis state `state`; returns false when
// the result vanishes or leaves the truncated space.
bool ladder(const FockBasis& basis, int slot, bool create, std::int64_t& state, double& amp) {
  const int n = basis.occupation(state, slot);
  if (create) {
    if (n == basis.cutoff()) return false;
    amp *= std::sqrt(static_cast<double>(n + 1));
    state += basis.stride(slot);
  } else {
    if (n == 0) return false;
    amp *= std::sqrt(static_cast<double>(n));
    state -= basis.stride(slot);
  }
  return true;
}

// Lowering operator of the summed selection applied to psi.
StateVector lower_sum(const FockBasis& basis, const StateVector& psi, const std::vector<int>& slots) {
  StateVector out = StateVector::Zero(psi.size());
  for (std::int64_t i = 0; i < basis.dimension(); ++i) {
    if (psi(i) == cd(0.0)) continue;
    for (int s : slots) {
      std::int64_t j = i;
      double amp = 1.0;
      if (ladder(basis, s, false, j, amp)) out(j) += amp * psi(i);
    }
  }
  return out;
}

StateVector coherent_factor(cd xi, int cutoff) {
  StateVector v(cutoff + 1);
  cd term = std::exp(-0.5 * std::norm(xi));
  for (int n = 0; n <= cutoff; ++n) {
    if (n > 0) term *= xi / std::sqrt(static_cast<double>(n));
    v(n) = term;
  }
  return v / v.norm();
}

StateVector product_state(const FockBasis& basis, const std::vector<StateVector>& factors) {
  StateVector psi(basis.dimension());
  for (std::int64_t i = 0; i < basis.dimension(); ++i) {
    cd a = 1.0;
    for (int s = 0; s < basis.mode_count(); ++s) a *= factors[static_cast<std::size_t>(s)](basis.occupation(i, s));
    psi(i) = a;
  }
  return psi;
}

}  // namespace

FockBasis::FockBasis(const FockConfig& cfg) : modes_(cfg.modes), cutoff_(cfg.cutoff) {
  stride_.assign(modes_.size(), 1);
  dim_ = 1;
  for (int s = static_cast<int>(modes_.size()) - 1; s >= 0; --s) {
    stride_[static_cast<std::size_t>(s)] = dim_;
    dim_ *= cutoff_ + 1;
  }
}

int FockBasis::slot(Mode m) const {
  for (std::size_t s = 0; s < modes_.size(); ++s) {
    if (modes_[s] == m) return static_cast<int>(s);
  }
  return -1;
}

void validate_config(const FockConfig& cfg) {
  const auto& sets = allowed_subsystems();
  if (std::find(sets.begin(), sets.end(), cfg.modes) == sets.end()) {
    std::string names;
    for (Mode m : cfg.modes) names += std::string(mode_name(m)) + " ";
    throw UnsupportedConfiguration("Fock oracle does not support the subsystem { " + names + "}");
  }
  if (cfg.cutoff < 1 || cfg.cutoff > kMaxCutoff) {
    throw ValidationError("Fock cutoff must lie in [1, " + std::to_string(kMaxCutoff) + "]");
  }
  double dim = 1.0;
  for (std::size_t i = 0; i < cfg.modes.size(); ++i) dim *= cfg.cutoff + 1;
  if (dim > static_cast<double>(kMaxDimension)) {
    throw ValidationError("Fock dimension " + std::to_string(static_cast<long long>(dim)) +
                          " exceeds " + std::to_string(kMaxDimension));
  }
  const FockBasis basis(cfg);
  for (const Term& t : interaction_terms(cfg.params)) {
    if (t.c == cd(0.0)) continue;
    const bool in_a = basis.slot(t.a) >= 0, in_b = basis.slot(t.b) >= 0;
    if (in_a != in_b) {
      throw UnsupportedConfiguration("coupling between " + std::string(mode_name(t.a)) + " and " +
                                     std::string(mode_name(t.b)) +
                                     " leaves the selected subsystem");
    }
  }
}

SparseOperator build_hamiltonian(const FockConfig& cfg) {
  validate_config(cfg);
  const FockBasis basis(cfg);
  std::vector<Triplet> entries;
  const std::vector<Term> terms = interaction_terms(cfg.params);
  for (std::int64_t i = 0; i < basis.dimension(); ++i) {
    for (const Term& t : terms) {
      if (t.c == cd(0.0)) continue;
      const int sa = basis.slot(t.a), sb = basis.slot(t.b);
      if (sa < 0 || sb < 0) continue;
      std::int64_t j = i;
      double amp = 1.0;
      // op(a) op(b)|i>: b acts first (the modes differ, so order is immaterial).
      if (!ladder(basis, sb, t.b_create, j, amp)) continue;
      if (!ladder(basis, sa, t.a_create, j, amp)) continue;
      entries.emplace_back(j, i, t.c * amp);
    }
  }
  SparseOperator h(basis.dimension(), basis.dimension());
  h.setFromTriplets(entries.begin(), entries.end());
  h.makeCompressed();
  return h;
}

void apply_hamiltonian(const SparseOperator& h, const StateVector& x, StateVector& y) {
  y.resize(h.rows());
  const std::int64_t rows = h.rows();
  const std::int64_t* outer = h.outerIndexPtr();
  const std::int64_t* inner = h.innerIndexPtr();
  const cd* val = h.valuePtr();
#pragma omp parallel for schedule(static)
  for (std::int64_t r = 0; r < rows; ++r) {
    cd acc = 0.0;
    for (std::int64_t k = outer[r]; k < outer[r + 1]; ++k) acc += val[k] * x(inner[k]);
    y(r) = acc;
  }
}

void apply_hamiltonian_serial(const SparseOperator& h, const StateVector& x, StateVector& y) {
  y.resize(h.rows());
  const std::int64_t* outer = h.outerIndexPtr();
  const std::int64_t* inner = h.innerIndexPtr();
  const cd* val = h.valuePtr();
  for (std::int64_t r = 0; r < h.rows(); ++r) {
    cd acc = 0.0;
    for (std::int64_t k = outer[r]; k < outer[r + 1]; ++k) acc += val[k] * x(inner[k]);
    y(r) = acc;
  }
}

StateVector expm_action(const SparseOperator& h, const StateVector& psi, double z, int krylov_dim,
                        double tol) {
  const std::int64_t n = psi.size();
  StateVector current = psi;
  if (z == 0.0 || n == 0) return current;
  const int m_max = static_cast<int>(std::min<std::int64_t>(krylov_dim, n));

  // exp(i H z) for z < 0 is exp(i (-H) |z|): flip the phase sign instead.
  const double dir = z < 0.0 ? -1.0 : 1.0;
  z = std::abs(z);
  double done = 0.0;
  double step = z;
  int guard = 0;
  while (z - done > 0.0) {
    if (++guard > 100000) throw NumericalError("Krylov exponential: step control did not converge");
    const double beta0 = current.norm();
    if (beta0 == 0.0) return current;

    std::vector<StateVector> basis;
    basis.reserve(static_cast<std::size_t>(m_max) + 1);
    basis.push_back(current / beta0);
    Eigen::VectorXd alpha(m_max), beta(m_max);
    StateVector w;
    int m = 0;
    bool invariant = false;
    for (; m < m_max; ++m) {
      apply_hamiltonian_serial(h, basis.back(), w);
      alpha(m) = basis.back().dot(w).real();
      // Full reorthogonalization (twice is enough).
      for (int pass = 0; pass < 2; ++pass) {
        for (const StateVector& q : basis) w -= q * q.dot(w);
      }
      beta(m) = w.norm();
      if (beta(m) < 1e-12 * std::max(1.0, std::abs(alpha(m)))) {
        ++m;
        invariant = true;
        break;
      }
      basis.push_back(w / beta(m));
    }

    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
    for (int k = 0; k < m; ++k) {
      t(k, k) = alpha(k);
      if (k + 1 < m) t(k, k + 1) = t(k + 1, k) = beta(k);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(t);

    double dz = std::min(step, z - done);
    while (true) {
      Eigen::VectorXcd phase(m);
      for (int k = 0; k < m; ++k) phase(k) = std::exp(cd(0.0, dir * eig.eigenvalues()(k) * dz));
      const Eigen::VectorXcd y =
          eig.eigenvectors().cast<cd>() * (phase.asDiagonal() * eig.eigenvectors().row(0).transpose().cast<cd>());
      const double err = invariant ? 0.0 : beta(m - 1) * std::abs(y(m - 1));
      if (err <= tol * dz / z || dz < 1e-12 * z) {
        StateVector next = StateVector::Zero(n);
        for (int k = 0; k < m; ++k) next += basis[static_cast<std::size_t>(k)] * y(k);
        current = beta0 * next;
        done += dz;
        step = (err < 0.1 * tol * dz / z) ? dz * 1.5 : dz;
        break;
      }
      dz *= 0.5;
    }
  }
  return current;
}

FockMixture initial_mixture(const FockConfig& cfg, const std::array<FockInput, kModeCount>& in) {
  validate_config(cfg);
  const FockBasis basis(cfg);
  // Per-slot list of (weight, factor) alternatives.
  std::vector<std::vector<std::pair<double, StateVector>>> options(static_cast<std::size_t>(basis.mode_count()));
  for (int s = 0; s < basis.mode_count(); ++s) {
    const FockInput& f = in[static_cast<std::size_t>(index(basis.mode(s)))];
    auto& opt = options[static_cast<std::size_t>(s)];
    if (f.n_th < 0.0) throw ValidationError("thermal occupation must be nonnegative");
    if (f.n_th > 0.0) {
      if (f.xi != cd(0.0)) {
        throw UnsupportedConfiguration("Fock oracle: displaced thermal inputs are not supported");
      }
      const double q = f.n_th / (1.0 + f.n_th);
      double w = 1.0 / (1.0 + f.n_th);
      double mass = 0.0;
      for (int k = 0; k <= cfg.cutoff && 1.0 - mass > kThermalMassCut; ++k) {
        StateVector e = StateVector::Zero(cfg.cutoff + 1);
        e(k) = 1.0;
        opt.emplace_back(w, e);
        mass += w;
        w *= q;
      }
      for (auto& o : opt) o.first /= mass;
    } else {
      opt.emplace_back(1.0, coherent_factor(f.xi, cfg.cutoff));
    }
  }

  FockMixture mix;
  std::vector<std::size_t> pick(options.size(), 0);
  while (true) {
    double w = 1.0;
    std::vector<StateVector> factors;
    for (std::size_t s = 0; s < options.size(); ++s) {
      w *= options[s][pick[s]].first;
      factors.push_back(options[s][pick[s]].second);
    }
    mix.weights.push_back(w);
    mix.states.push_back(product_state(basis, factors));
    std::size_t s = 0;
    while (s < options.size() && ++pick[s] == options[s].size()) pick[s++] = 0;
    if (s == options.size()) break;
  }
  return mix;
}

double boundary_population(const FockBasis& basis, const FockMixture& m) {
  double total = 0.0;
  for (std::size_t k = 0; k < m.states.size(); ++k) {
    double p = 0.0;
    for (std::int64_t i = 0; i < basis.dimension(); ++i) {
      bool edge = false;
      for (int s = 0; s < basis.mode_count(); ++s) edge = edge || basis.occupation(i, s) == basis.cutoff();
      if (edge) p += std::norm(m.states[k](i));
    }
    total += m.weights[k] * p;
  }
  return total;
}

namespace {

void check_leakage(const FockBasis& basis, const FockMixture& m) {
  const double leak = boundary_population(basis, m);
  if (leak > kLeakageLimit) {
    throw TruncationError("Fock truncation: population " + std::to_string(leak) +
                          " at occupation " + std::to_string(basis.cutoff()) + " (raise the cutoff)");
  }
}

}  // namespace

FockMixture evolve(const FockConfig& cfg, const SparseOperator& h, const FockMixture& m0, double z) {
  FockMixture out = m0;
  const auto count = static_cast<std::int64_t>(m0.states.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t k = 0; k < count; ++k) {
    out.states[static_cast<std::size_t>(k)] = expm_action(h, m0.states[static_cast<std::size_t>(k)], z);
  }
  check_leakage(FockBasis(cfg), out);
  return out;
}

FockMixture evolve_serial(const FockConfig& cfg, const SparseOperator& h, const FockMixture& m0,
                          double z) {
  FockMixture out = m0;
  for (std::size_t k = 0; k < m0.states.size(); ++k) out.states[k] = expm_action(h, m0.states[k], z);
  check_leakage(FockBasis(cfg), out);
  return out;
}

double mean_photons(const FockBasis& basis, const FockMixture& m, Mode mode) {
  const int s = basis.slot(mode);
  if (s < 0) throw UnsupportedConfiguration("mode is not part of the Fock subsystem");
  double total = 0.0;
  for (std::size_t k = 0; k < m.states.size(); ++k) {
    double acc = 0.0;
    for (std::int64_t i = 0; i < basis.dimension(); ++i) acc += basis.occupation(i, s) * std::norm(m.states[k](i));
    total += m.weights[k] * acc;
  }
  return total;
}

FockStatistics fock_statistics(const FockBasis& basis, const FockMixture& m,
                               const ModeSelection& sel, int k_max) {
  std::vector<int> slots;
  for (int a = 0; a < sel.size(); ++a) {
    const int s = basis.slot(sel[a]);
    if (s < 0) throw UnsupportedConfiguration("selected mode is not part of the Fock subsystem");
    slots.push_back(s);
  }
  FockStatistics st;
  st.p_n.assign(static_cast<std::size_t>(sel.size() * basis.cutoff()) + 1, 0.0);
  cd mean_a = 0.0, mean_aa = 0.0;
  double mean_ada = 0.0;
  for (std::size_t k = 0; k < m.states.size(); ++k) {
    const StateVector& psi = m.states[k];
    const double w = m.weights[k];
    for (std::int64_t i = 0; i < basis.dimension(); ++i) {
      int n = 0;
      for (int s : slots) n += basis.occupation(i, s);
      st.p_n[static_cast<std::size_t>(n)] += w * std::norm(psi(i));
    }
    const StateVector a_psi = lower_sum(basis, psi, slots);
    const StateVector aa_psi = lower_sum(basis, a_psi, slots);
    mean_a += w * psi.dot(a_psi);
    mean_aa += w * psi.dot(aa_psi);
    mean_ada += w * a_psi.squaredNorm();
  }
  st.moments.assign(static_cast<std::size_t>(k_max) + 1, 0.0);
  for (std::size_t n = 0; n < st.p_n.size(); ++n) {
    double falling = 1.0;
    for (int k = 0; k <= k_max; ++k) {
      if (k > 0) falling *= static_cast<double>(n) - (k - 1);
      st.moments[static_cast<std::size_t>(k)] += st.p_n[n] * falling;
    }
  }
  st.mean_w = k_max >= 1 ? st.moments[1] : 0.0;

  const double vac = sel.compound() ? 2.0 : 1.0;
  const double nn = mean_ada - std::norm(mean_a);
  const cd mm = mean_aa - mean_a * mean_a;
  st.lambda = vac + 2.0 * nn - 2.0 * std::abs(mm);
  st.var_p = vac + 2.0 * nn + 2.0 * mm.real();
  st.var_q = vac + 2.0 * nn - 2.0 * mm.real();
  return st;
}

double normal_generating_function(const std::vector<double>& p_n, double s) {
  double g = 0.0, power = 1.0;
  for (double p : p_n) {
    g += p * power;
    power *= 1.0 - s;
  }
  return g;
}

}  // namespace coupler::fock
