#pragma once

#include <Eigen/Core>

namespace coupler::linalg {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// exp(A) by scaling and squaring with the [13/13] Pade approximant
// (Higham 2005 constants). Throws NumericalError on non-finite input/output.
ComplexMatrix expm_pade13(const ComplexMatrix& a);

// exp(t A) from a single eigendecomposition A = W diag(lambda) W^-1, reused
// across many t. Only accurate when W is well conditioned.
class SpectralExponential {
 public:
  explicit SpectralExponential(const ComplexMatrix& a);

  // 2-norm condition number of the eigenvector matrix.
  double condition_number() const { return condition_; }
  ComplexMatrix operator()(double t) const;

 private:
  ComplexMatrix vectors_;
  ComplexMatrix inverse_;
  ComplexVector values_;
  double condition_ = 0.0;
};

// exp(t A) choosing the route once per matrix: the spectral form when the
// eigenvector condition number is below max_condition, Pade otherwise
// (defective or nearly defective A).
class MatrixExponential {
 public:
  static constexpr double kDefaultMaxCondition = 1e8;

  explicit MatrixExponential(ComplexMatrix a, double max_condition = kDefaultMaxCondition);

  ComplexMatrix operator()(double t) const;

  bool spectral() const { return spectral_ok_; }
  double condition_number() const { return spectral_.condition_number(); }

 private:
  ComplexMatrix a_;
  SpectralExponential spectral_;
  bool spectral_ok_ = false;
};

}  // namespace coupler::linalg
