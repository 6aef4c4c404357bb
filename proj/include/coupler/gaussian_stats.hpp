#pragma once

#include <optional>
#include <vector>

#include "coupler/jet.hpp"
#include "coupler/model.hpp"

namespace coupler {

// Normally ordered variance of the integrated intensity W_j.
double intensity_variance_single(const GaussianState& s, Mode j);
// Variance of W_j + W_k: both single variances plus twice the correlation.
double intensity_variance_compound(const GaussianState& s, Mode j, Mode k);
// <dW_j dW_k> for j != k.
double intensity_correlation(const GaussianState& s, Mode j, Mode k);
double intensity_variance(const GaussianState& s, const ModeSelection& sel);

// Principal squeeze variance. Vacuum level 1 for a single mode, 2 for a pair.
double principal_squeeze(const GaussianState& s, const ModeSelection& sel);

// p = a + a^+, q = -i(a - a^+) with a the (summed) annihilation operator of
// the selection. uncertainty = lambda_min * lambda_max over quadrature angles
// (1 for a coherent single mode, 4 for the compound vacuum).
struct QuadratureVariances {
  double var_p = 0.0;
  double var_q = 0.0;
  double uncertainty = 0.0;
};
QuadratureVariances quadrature_variances(const GaussianState& s, const ModeSelection& sel);

// G(s) = < :exp(-s W): > with W the summed intensity of the selection,
// evaluated at a power-series argument s(t). Coefficient k of the result is
// the k-th Taylor coefficient in t.
template <class T>
Jet<T> generating_function(const GaussianState& s, const ModeSelection& sel, const Jet<T>& arg);

double generating_function(const GaussianState& s, const ModeSelection& sel, double arg);

inline constexpr double kMeanIntensityFloor = 1e-15;

struct MomentsAndDistribution {
  double mean_w = 0.0;
  std::vector<double> moments;                        // <W^k>, k = 0..k_max
  std::vector<std::optional<double>> reduced;         // k = 2..k_max; empty optional: <W> ~ 0
  std::vector<double> p_n;                            // n = 0..n_max
  double tail = 0.0;                                  // 1 - sum p_n
};

MomentsAndDistribution moments_and_distribution(const GaussianState& s, const ModeSelection& sel,
                                                int k_max, int n_max);

struct StatsReport {
  double mean_w = 0.0;
  std::vector<std::optional<double>> reduced_moments;  // k = 2..k_max
  double variance_w = 0.0;
  double lambda = 0.0;
  QuadratureVariances quadrature;
  std::vector<double> p_n;
  double tail = 0.0;
};

// Everything for one selection. n_max < 0 skips the distribution.
StatsReport stats_report(const GaussianState& s, const ModeSelection& sel, int k_max, int n_max);

}  // namespace coupler
