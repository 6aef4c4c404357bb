#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "coupler/dynamics.hpp"
#include "coupler/model.hpp"

namespace coupler::testing {

// exp(iMz) by classical RK4 on X' = iM X, X(0) = I.
inline BogoliubovTransform rk4_propagator(const EvolutionMatrix& m, double z, double h = 1e-4) {
  const DoubledMatrix a = cd(0.0, 1.0) * m.M;
  DoubledMatrix x = DoubledMatrix::Identity();
  const auto steps = static_cast<long>(std::ceil(std::abs(z) / h - 1e-9));
  const double dz = steps > 0 ? z / static_cast<double>(steps) : 0.0;
  for (long i = 0; i < steps; ++i) {
    const DoubledMatrix k1 = a * x;
    const DoubledMatrix k2 = a * (x + 0.5 * dz * k1);
    const DoubledMatrix k3 = a * (x + 0.5 * dz * k2);
    const DoubledMatrix k4 = a * (x + dz * k3);
    x += (dz / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return BogoliubovTransform::from_doubled(x, z);
}

// Monomial coefficients c_0..c_degree of the least-squares polynomial fit of
// f on [0, b], sampled at `count` Chebyshev nodes. Exact (to rounding) when f
// is a polynomial of at most that degree.
inline std::vector<long double> poly_coefficients(const std::function<double(double)>& f, int degree,
                                                  double b, int count = 0) {
  using Mat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  using Vec = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
  if (count <= 0) count = 3 * (degree + 1);
  Mat cheb(count, degree + 1);
  Vec rhs(count);
  for (int i = 0; i < count; ++i) {
    const long double t = std::cos(std::numbers::pi_v<long double> * (i + 0.5L) / count);
    const double z = static_cast<double>(0.5L * b * (t + 1.0L));
    cheb(i, 0) = 1.0L;
    if (degree > 0) cheb(i, 1) = t;
    for (int k = 2; k <= degree; ++k) cheb(i, k) = 2.0L * t * cheb(i, k - 1) - cheb(i, k - 2);
    rhs(i) = f(z);
  }
  const Vec a = cheb.colPivHouseholderQr().solve(rhs);

  // Chebyshev -> monomials in t.
  std::vector<std::vector<long double>> tk(static_cast<std::size_t>(degree + 1),
                                           std::vector<long double>(static_cast<std::size_t>(degree + 1), 0.0L));
  tk[0][0] = 1.0L;
  if (degree > 0) tk[1][1] = 1.0L;
  for (int k = 2; k <= degree; ++k) {
    for (int j = 0; j <= degree; ++j) {
      long double v = -tk[static_cast<std::size_t>(k - 2)][static_cast<std::size_t>(j)];
      if (j > 0) v += 2.0L * tk[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(j - 1)];
      tk[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] = v;
    }
  }
  std::vector<long double> in_t(static_cast<std::size_t>(degree + 1), 0.0L);
  for (int k = 0; k <= degree; ++k) {
    for (int j = 0; j <= degree; ++j) in_t[static_cast<std::size_t>(j)] += a(k) * tk[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
  }
  // t = 2z/b - 1.
  std::vector<long double> out(static_cast<std::size_t>(degree + 1), 0.0L);
  const long double s = 2.0L / b;
  for (int j = 0; j <= degree; ++j) {
    long double binom = 1.0L;
    for (int i = 0; i <= j; ++i) {
      // term binom(j,i) (s z)^i (-1)^(j-i)
      const long double sign = ((j - i) % 2 == 0) ? 1.0L : -1.0L;
      out[static_cast<std::size_t>(i)] += in_t[static_cast<std::size_t>(j)] * binom * std::pow(s, static_cast<long double>(i)) * sign;
      binom = binom * static_cast<long double>(j - i) / static_cast<long double>(i + 1);
    }
  }
  return out;
}

inline cd random_complex(std::mt19937_64& rng, double max_abs) {
  std::uniform_real_distribution<double> mag(0.0, max_abs);
  std::uniform_real_distribution<double> phase(-std::numbers::pi, std::numbers::pi);
  return std::polar(mag(rng), phase(rng));
}

inline CouplerParams random_params(std::mt19937_64& rng, double max_abs) {
  CouplerParams p;
  p.gS1 = random_complex(rng, max_abs);
  p.gA1 = random_complex(rng, max_abs);
  p.gS2 = random_complex(rng, max_abs);
  p.gA2 = random_complex(rng, max_abs);
  p.kappaS = random_complex(rng, max_abs);
  p.kappaA = random_complex(rng, max_abs);
  return p;
}

// Draws with |g_A| >= |g_S| in both guides (no validation warning).
inline CouplerParams random_anti_stokes_dominated(std::mt19937_64& rng, double max_abs) {
  CouplerParams p = random_params(rng, max_abs);
  if (std::abs(p.gA1) < std::abs(p.gS1)) std::swap(p.gA1, p.gS1);
  if (std::abs(p.gA2) < std::abs(p.gS2)) std::swap(p.gA2, p.gS2);
  return p;
}

inline InputSet random_inputs(std::mt19937_64& rng, bool squeezed) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  InputSet in{};
  for (InputSpec& s : in) {
    s.xi = random_complex(rng, 1.5);
    s.n_ch = 0.5 * u(rng);
    if (squeezed) {
      s.r = 0.5 * u(rng);
      s.theta = 6.0 * u(rng);
    }
  }
  return in;
}

}  // namespace coupler::testing
