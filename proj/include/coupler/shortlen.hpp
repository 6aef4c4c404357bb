#pragma once

#include "coupler/dynamics.hpp"
#include "coupler/model.hpp"

namespace coupler {

// Noise functions of the short-length solution, exact through z^2, for
// coherent radiation inputs and chaotic phonons with mean numbers nV1, nV2.
struct ShortlenCoefficients {
  RealModeVector B = RealModeVector::Zero();
  ModeVector C = ModeVector::Zero();
  ModeMatrix D = ModeMatrix::Zero();
  ModeMatrix Dbar = ModeMatrix::Zero();
  double z = 0.0;
  static constexpr int order = 2;

  // Gaussian state with these noise functions and the given mean fields.
  GaussianState with_means(const ModeVector& xi) const;
};

// Second-order operator solution: the rows for S1, A1, V1 written out, the
// second waveguide from the exchange symmetry. Equals I + iMz - (Mz)^2/2 in
// block form.
BogoliubovTransform short_propagator(const ValidatedParams& params, double z);

// Throws ValidationError for negative phonon numbers.
ShortlenCoefficients shortlen_coefficients(const ValidatedParams& params, double nV1, double nV2,
                                           double z);

ModeVector shortlen_mean_amplitudes(const ValidatedParams& params, const ModeVector& xi0,
                                    double z);

}  // namespace coupler
