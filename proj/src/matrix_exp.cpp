#include "coupler/matrix_exp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include "coupler/errors.hpp"

namespace coupler::linalg {

namespace {

bool all_finite(const ComplexMatrix& m) {
  return m.allFinite();
}

double one_norm(const ComplexMatrix& m) {
  return m.cwiseAbs().colwise().sum().maxCoeff();
}

}  // namespace

ComplexMatrix expm_pade13(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw NumericalError("expm: matrix is not square");
  if (!all_finite(a)) throw NumericalError("expm: matrix has non-finite entries");
  const Eigen::Index n = a.rows();
  if (n == 0) return a;

  static constexpr double b[] = {64764752532480000.0,
                                 32382376266240000.0,
                                 7771770303897600.0,
                                 1187353796428800.0,
                                 129060195264000.0,
                                 10559470521600.0,
                                 670442572800.0,
                                 33522128640.0,
                                 1323241920.0,
                                 40840800.0,
                                 960960.0,
                                 16380.0,
                                 182.0,
                                 1.0};
  static constexpr double theta13 = 5.371920351148152;

  const double norm = one_norm(a);
  int squarings = 0;
  if (norm > theta13) squarings = static_cast<int>(std::ceil(std::log2(norm / theta13)));
  const ComplexMatrix as = a / std::ldexp(1.0, squarings);

  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix a2 = as * as;
  const ComplexMatrix a4 = a2 * a2;
  const ComplexMatrix a6 = a4 * a2;

  const ComplexMatrix u_inner = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 +
                                b[5] * a4 + b[3] * a2 + b[1] * id;
  const ComplexMatrix u = as * u_inner;
  const ComplexMatrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 +
                          b[2] * a2 + b[0] * id;

  ComplexMatrix r = (v - u).partialPivLu().solve(v + u);
  for (int k = 0; k < squarings; ++k) r = r * r;
  if (!all_finite(r)) {
    throw NumericalError("expm: Pade scaling-and-squaring produced non-finite entries (1-norm " +
                         std::to_string(norm) + ", " + std::to_string(squarings) + " squarings)");
  }
  return r;
}

SpectralExponential::SpectralExponential(const ComplexMatrix& a) {
  if (!all_finite(a)) throw NumericalError("expm: matrix has non-finite entries");
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(a, true);
  if (solver.info() != Eigen::Success) {
    condition_ = std::numeric_limits<double>::infinity();
    return;
  }
  vectors_ = solver.eigenvectors();
  values_ = solver.eigenvalues();
  Eigen::JacobiSVD<ComplexMatrix> svd(vectors_);
  const auto& sv = svd.singularValues();
  const double smallest = sv(sv.size() - 1);
  condition_ = smallest > 0.0 ? sv(0) / smallest : std::numeric_limits<double>::infinity();
  if (std::isfinite(condition_)) inverse_ = vectors_.partialPivLu().inverse();
}

ComplexMatrix SpectralExponential::operator()(double t) const {
  ComplexVector phases(values_.size());
  for (Eigen::Index k = 0; k < values_.size(); ++k) phases(k) = std::exp(values_(k) * t);
  return vectors_ * phases.asDiagonal() * inverse_;
}

MatrixExponential::MatrixExponential(ComplexMatrix a, double max_condition)
    : a_(std::move(a)), spectral_(a_) {
  spectral_ok_ = spectral_.condition_number() < max_condition;
}

ComplexMatrix MatrixExponential::operator()(double t) const {
  if (!std::isfinite(t)) throw NumericalError("expm: non-finite argument t");
  if (spectral_ok_) {
    ComplexMatrix r = spectral_(t);
    if (all_finite(r)) return r;
  }
  return expm_pade13(a_ * t);
}

}  // namespace coupler::linalg
