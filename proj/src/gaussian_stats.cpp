#include "coupler/gaussian_stats.hpp"

#include <cmath>
#include <string>

#include "coupler/errors.hpp"

namespace coupler {

namespace {

struct SummedMode {
  double n;  // <da^+ da>
  cd m;      // <da^2>
  double vacuum;
};

SummedMode summed_mode(const GaussianState& s, const ModeSelection& sel) {
  const int j = index(sel.first());
  if (!sel.compound()) return {s.B(j), s.C(j), 1.0};
  const int k = index(sel.second());
  return {s.B(j) + s.B(k) - 2.0 * s.Dbar(j, k).real(), s.C(j) + s.C(k) + 2.0 * s.D(j, k), 2.0};
}

// Real quadrature form of the P-representation: x = (Re a_1.., Im a_1..),
// covariance K and mean xbar.
struct RealGaussian {
  Eigen::MatrixXd K;
  Eigen::VectorXd mean;
};

RealGaussian real_form(const GaussianState& s, const ModeSelection& sel) {
  const int m = sel.size();
  const ModeMatrix N = s.normal_moments();
  const ModeMatrix M = s.anomalous_moments();
  RealGaussian g{Eigen::MatrixXd::Zero(2 * m, 2 * m), Eigen::VectorXd::Zero(2 * m)};
  for (int a = 0; a < m; ++a) {
    const int j = index(sel[a]);
    g.mean(a) = s.xi(j).real();
    g.mean(m + a) = s.xi(j).imag();
    for (int b = 0; b < m; ++b) {
      const int k = index(sel[b]);
      const cd n = N(j, k), mm = M(j, k);
      g.K(a, b) = 0.5 * (n + mm).real();
      g.K(m + a, m + b) = 0.5 * (n - mm).real();
      g.K(a, m + b) = 0.5 * (mm.imag() + n.imag());
      g.K(m + b, a) = g.K(a, m + b);
    }
  }
  return g;
}

template <class T>
Jet<T> generating_function_impl(const RealGaussian& g, const Jet<T>& arg) {
  const int d = static_cast<int>(g.mean.size());
  const std::size_t order = arg.size();
  JetMatrix<T> a(d, order);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      Jet<T> e = arg * T(2.0 * g.K(i, j));
      if (i == j) e += T(1);
      a(i, j) = std::move(e);
    }
  }
  const JetLU<T> lu(std::move(a));
  std::vector<Jet<T>> rhs(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) rhs[static_cast<std::size_t>(i)] = Jet<T>(order, T(g.mean(i)));
  const std::vector<Jet<T>> y = lu.solve(rhs);
  Jet<T> quad(order);
  for (int i = 0; i < d; ++i) quad += y[static_cast<std::size_t>(i)] * T(g.mean(i));
  Jet<T> exponent = (arg * quad) * T(-1) - lu.log_abs_determinant() * T(0.5);
  return exp(exponent);
}

}  // namespace

double intensity_variance_single(const GaussianState& s, Mode j) {
  const int i = index(j);
  const double b = s.B(i);
  const cd c = s.C(i), x = s.xi(i);
  return b * b + std::norm(c) + 2.0 * b * std::norm(x) + 2.0 * (c * std::conj(x * x)).real();
}

double intensity_correlation(const GaussianState& s, Mode j, Mode k) {
  const int a = index(j), b = index(k);
  const cd d = s.D(a, b), db = s.Dbar(a, b);
  const cd xa = s.xi(a), xb = s.xi(b);
  return std::norm(d) + std::norm(db) + 2.0 * (d * std::conj(xa) * std::conj(xb)).real() -
         2.0 * (db * xa * std::conj(xb)).real();
}

double intensity_variance_compound(const GaussianState& s, Mode j, Mode k) {
  return intensity_variance_single(s, j) + intensity_variance_single(s, k) +
         2.0 * intensity_correlation(s, j, k);
}

double intensity_variance(const GaussianState& s, const ModeSelection& sel) {
  return sel.compound() ? intensity_variance_compound(s, sel.first(), sel.second())
                        : intensity_variance_single(s, sel.first());
}

double principal_squeeze(const GaussianState& s, const ModeSelection& sel) {
  const SummedMode a = summed_mode(s, sel);
  return a.vacuum + 2.0 * a.n - 2.0 * std::abs(a.m);
}

QuadratureVariances quadrature_variances(const GaussianState& s, const ModeSelection& sel) {
  const SummedMode a = summed_mode(s, sel);
  QuadratureVariances q;
  q.var_p = a.vacuum + 2.0 * a.n + 2.0 * a.m.real();
  q.var_q = a.vacuum + 2.0 * a.n - 2.0 * a.m.real();
  const double lo = a.vacuum + 2.0 * a.n - 2.0 * std::abs(a.m);
  const double hi = a.vacuum + 2.0 * a.n + 2.0 * std::abs(a.m);
  q.uncertainty = lo * hi;
  return q;
}

template <class T>
Jet<T> generating_function(const GaussianState& s, const ModeSelection& sel, const Jet<T>& arg) {
  return generating_function_impl(real_form(s, sel), arg);
}

template Jet<double> generating_function(const GaussianState&, const ModeSelection&,
                                         const Jet<double>&);
template Jet<long double> generating_function(const GaussianState&, const ModeSelection&,
                                              const Jet<long double>&);

double generating_function(const GaussianState& s, const ModeSelection& sel, double arg) {
  return generating_function(s, sel, Jet<double>(1, arg))[0];
}

MomentsAndDistribution moments_and_distribution(const GaussianState& s, const ModeSelection& sel,
                                                int k_max, int n_max) {
  if (k_max < 1 || k_max > 8) throw ValidationError("k_max must lie in [1, 8]");
  if (n_max > 512) throw ValidationError("n_max must not exceed 512");
  const RealGaussian g = real_form(s, sel);
  MomentsAndDistribution out;

  // <W^k> = (-1)^k k! [t^k] G(t)
  const Jet<long double> at0 =
      generating_function_impl(g, Jet<long double>::variable(static_cast<std::size_t>(k_max) + 1, 0.0L));
  long double fact = 1.0L;
  out.moments.resize(static_cast<std::size_t>(k_max) + 1);
  for (int k = 0; k <= k_max; ++k) {
    if (k > 0) fact *= k;
    const long double sign = (k % 2 == 0) ? 1.0L : -1.0L;
    out.moments[static_cast<std::size_t>(k)] = static_cast<double>(sign * fact * at0[static_cast<std::size_t>(k)]);
  }
  out.mean_w = k_max >= 1 ? out.moments[1] : 0.0;
  for (int k = 2; k <= k_max; ++k) {
    if (out.mean_w < kMeanIntensityFloor) {
      out.reduced.emplace_back(std::nullopt);
    } else {
      out.reduced.emplace_back(out.moments[static_cast<std::size_t>(k)] / std::pow(out.mean_w, k) -
                               1.0);
    }
  }

  // p(n) = (-1)^n [t^n] G(1 + t)
  if (n_max >= 0) {
    const Jet<long double> at1 =
        generating_function_impl(g, Jet<long double>::variable(static_cast<std::size_t>(n_max) + 1, 1.0L));
    out.p_n.resize(static_cast<std::size_t>(n_max) + 1);
    long double total = 0.0L;
    for (int n = 0; n <= n_max; ++n) {
      const long double v = (n % 2 == 0 ? 1.0L : -1.0L) * at1[static_cast<std::size_t>(n)];
      out.p_n[static_cast<std::size_t>(n)] = static_cast<double>(v);
      total += v;
    }
    out.tail = static_cast<double>(1.0L - total);
  }
  return out;
}

StatsReport stats_report(const GaussianState& s, const ModeSelection& sel, int k_max, int n_max) {
  const MomentsAndDistribution md = moments_and_distribution(s, sel, k_max, n_max);
  StatsReport r;
  r.mean_w = md.mean_w;
  r.reduced_moments = md.reduced;
  r.variance_w = intensity_variance(s, sel);
  r.lambda = principal_squeeze(s, sel);
  r.quadrature = quadrature_variances(s, sel);
  r.p_n = md.p_n;
  r.tail = md.tail;
  return r;
}

}  // namespace coupler
