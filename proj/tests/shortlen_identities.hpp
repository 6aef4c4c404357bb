#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "coupler/gaussian_stats.hpp"
#include "coupler/model.hpp"
#include "coupler/shortlen.hpp"
#include "support.hpp"

namespace coupler::testing {

// Second-order closed forms of the short-length statistics, compared with the
// generic statistics evaluated on the short-length state.
struct ShortlenIdentity {
  std::string name;
  std::function<double(double)> composed;
  std::function<double(double)> printed;
  // Set when the printed closed form is known to disagree with the
  // composition; holds the expression the composition actually yields.
  std::optional<std::function<double(double)>> corrected;
};

struct ShortlenFixture {
  std::string label;
  CouplerParams params;
  ModeVector xi = ModeVector::Zero();
  double nV1 = 0.0;
  double nV2 = 0.0;
};

// Coherent inputs everywhere, all couplings complex and nonzero.
inline ShortlenFixture coherent_fixture() {
  ShortlenFixture f;
  f.label = "coherent";
  f.params.gS1 = cd(0.8, 0.3);
  f.params.gA1 = cd(-1.1, 0.7);
  f.params.gS2 = cd(0.4, -0.6);
  f.params.gA2 = cd(1.2, 0.5);
  f.params.kappaS = cd(-0.9, 0.4);
  f.params.kappaA = cd(0.3, 1.0);
  f.xi << cd(0.7, -1.2), cd(1.1, 0.4), cd(-0.5, 0.9), cd(0.6, 0.8), cd(-1.0, 0.2), cd(0.3, -0.7);
  return f;
}

// Chaotic phonons, coherent radiation.
inline ShortlenFixture chaotic_fixture() {
  ShortlenFixture f = coherent_fixture();
  f.label = "chaotic";
  f.xi(index(Mode::V1)) = 0.0;
  f.xi(index(Mode::V2)) = 0.0;
  f.nV1 = 0.35;
  f.nV2 = 0.2;
  return f;
}

// Lowest-order coefficients that are compared, and the fit used to get them.
inline constexpr int kIdentityOrder = 2;
inline constexpr int kIdentityFitDegree = 8;
inline constexpr double kIdentityFitRange = 0.6;

// max_k |c_k(a) - c_k(b)| over k <= kIdentityOrder.
inline double identity_mismatch(const std::function<double(double)>& a,
                                const std::function<double(double)>& b) {
  const auto ca = poly_coefficients(a, kIdentityFitDegree, kIdentityFitRange);
  const auto cb = poly_coefficients(b, kIdentityFitDegree, kIdentityFitRange);
  double worst = 0.0;
  for (int k = 0; k <= kIdentityOrder; ++k) {
    worst = std::max(worst, static_cast<double>(std::abs(ca[static_cast<std::size_t>(k)] - cb[static_cast<std::size_t>(k)])));
  }
  return worst;
}

namespace detail {

inline double sq(cd v) { return std::norm(v); }
inline double re(cd v) { return v.real(); }
inline double abs(cd v) { return std::abs(v); }

inline void add_complex(std::vector<ShortlenIdentity>& out, const std::string& name,
                        std::function<cd(double)> composed, std::function<cd(double)> printed) {
  out.push_back({name + " (re)", [=](double z) { return composed(z).real(); },
                 [=](double z) { return printed(z).real(); }, std::nullopt});
  out.push_back({name + " (im)", [=](double z) { return composed(z).imag(); },
                 [=](double z) { return printed(z).imag(); }, std::nullopt});
}

}  // namespace detail

// Noise coefficients of the short-length state against their closed forms.
inline std::vector<ShortlenIdentity> coefficient_identities(const ShortlenFixture& f) {
  using namespace detail;
  const ValidatedParams v = validate_params(f.params);
  const CouplerParams p = f.params;
  const double n1 = f.nV1;
  const double n2 = f.nV2;
  auto coeff = [v, n1, n2](double z) { return shortlen_coefficients(v, n1, n2, z); };
  constexpr int S1 = index(Mode::S1), A1 = index(Mode::A1), V1 = index(Mode::V1);
  constexpr int V2 = index(Mode::V2);
  const cd i(0.0, 1.0);
  const std::string pre = f.label + " ";

  std::vector<ShortlenIdentity> out;
  auto real_line = [&](const std::string& name, std::function<double(double)> c,
                       std::function<double(double)> e) { out.push_back({pre + name, c, e, std::nullopt}); };

  real_line("B_S1", [=](double z) { return coeff(z).B(S1); },
            [=](double z) { return sq(p.gS1) * (n1 + 1.0) * z * z; });
  real_line("B_A1", [=](double z) { return coeff(z).B(A1); },
            [=](double z) { return sq(p.gA1) * n1 * z * z; });
  real_line("B_V1", [=](double z) { return coeff(z).B(V1); },
            [=](double z) { return n1 + sq(p.gS1) * (n1 + 1.0) * z * z - sq(p.gA1) * n1 * z * z; });
  add_complex(out, pre + "D_S1A1", [=](double z) { return coeff(z).D(S1, A1); },
              [=](double z) { return -p.gS1 * p.gA1 * (n1 + 0.5) * z * z; });
  add_complex(out, pre + "D_S1V1", [=](double z) { return coeff(z).D(S1, V1); },
              [=](double z) { return i * p.gS1 * (n1 + 1.0) * z; });
  add_complex(out, pre + "D_S1V2", [=](double z) { return coeff(z).D(S1, V2); },
              [=](double z) { return -p.gS2 * std::conj(p.kappaS) * (n2 + 1.0) * z * z / 2.0; });
  add_complex(out, pre + "Dbar_A1V1", [=](double z) { return coeff(z).Dbar(A1, V1); },
              [=](double z) { return i * std::conj(p.gA1) * n1 * z; });
  add_complex(out, pre + "Dbar_A1V2", [=](double z) { return coeff(z).Dbar(A1, V2); },
              [=](double z) { return std::conj(p.gA2) * p.kappaA * n2 * z * z / 2.0; });
  return out;
}

// Intensity variances and principal squeeze variances of the short-length
// state. Mean fields of the phonon modes must vanish when nV > 0.
inline std::vector<ShortlenIdentity> statistics_identities(const ShortlenFixture& f) {
  using namespace detail;
  const ValidatedParams v = validate_params(f.params);
  const CouplerParams p = f.params;
  const double n1 = f.nV1;
  const double n2 = f.nV2;
  const ModeVector x0 = f.xi;
  auto state = [v, n1, n2, x0](double z) {
    return shortlen_coefficients(v, n1, n2, z).with_means(shortlen_mean_amplitudes(v, x0, z));
  };
  auto var = [state](Mode a, Mode b) {
    return [=](double z) {
      return intensity_variance(state(z), a == b ? ModeSelection(a) : ModeSelection(a, b));
    };
  };
  auto squeeze = [state](Mode a, Mode b) {
    return [=](double z) { return principal_squeeze(state(z), ModeSelection(a, b)); };
  };
  const cd xS1 = x0(index(Mode::S1)), xA1 = x0(index(Mode::A1)), xV1 = x0(index(Mode::V1));
  const cd xS2 = x0(index(Mode::S2)), xV2 = x0(index(Mode::V2));
  const cd i(0.0, 1.0);
  const cd gS1 = p.gS1, gA1 = p.gA1, gS2 = p.gS2, gA2 = p.gA2, kS = p.kappaS, kA = p.kappaA;
  using enum Mode;

  std::vector<ShortlenIdentity> out;
  auto line = [&](const std::string& name, std::function<double(double)> c,
                  std::function<double(double)> e,
                  std::optional<std::function<double(double)>> fixed = std::nullopt) {
    out.push_back({f.label + " " + name, c, e, fixed});
  };

  if (n1 == 0.0 && n2 == 0.0) {
    line("varW S1", var(S1, S1), [=](double z) { return 2 * sq(gS1) * sq(xS1) * z * z; });
    line("varW A1", var(A1, A1), [=](double) { return 0.0; });
    line("varW V1", var(V1, V1), [=](double z) { return 2 * sq(gS1) * sq(xV1) * z * z; });
    line("varW S1A1", var(S1, A1), [=](double z) {
      return 2 * sq(gS1) * sq(xS1) * z * z - 2 * re(gA1 * gS1 * std::conj(xS1) * std::conj(xA1)) * z * z;
    });
    line("varW S1V1", var(S1, V1), [=](double z) {
      return 2 * (2 * re(i * gS1 * std::conj(xS1) * std::conj(xV1)) * z +
                  sq(gS1) * (1 + 3 * sq(xS1) + 3 * sq(xV1)) * z * z +
                  2 * re(gS1 * gA1 * std::conj(xA1) * std::conj(xS1)) * z * z +
                  2 * re(gS1 * kS * std::conj(xS2) * std::conj(xV1)) * z * z);
    });
    line("varW S1V2", var(S1, V2), [=](double z) {
      return 2 * sq(gS1) * sq(xS1) * z * z + 2 * sq(gS2) * sq(xV2) * z * z -
             2 * re(gS2 * std::conj(kS) * std::conj(xS1) * std::conj(xV2)) * z * z;
    });
    line("lambda S1A1", squeeze(S1, A1),
         [=](double z) { return 2 * (1 + abs(gS1) * (abs(gS1) - abs(gA1)) * z * z); });
    line("lambda S1V1", squeeze(S1, V1),
         [=](double z) { return 2 * (1 - 2 * abs(gS1) * z + sq(gS1) * z * z); },
         [=](double z) { return 2 * (1 - 2 * abs(gS1) * z + 2 * sq(gS1) * z * z); });
    line("lambda S1V2", squeeze(S1, V2), [=](double z) {
      return 2 * (1 + (sq(gS1) + sq(gS2)) * z * z - abs(gS2) * abs(kS) * z * z);
    });
    return out;
  }

  const double cross = re(gA1 * gS1 * std::conj(xS1) * std::conj(xA1));
  line("varW S1", var(S1, S1), [=](double z) { return 2 * sq(gS1) * (n1 + 1) * sq(xS1) * z * z; });
  line("varW A1", var(A1, A1), [=](double z) { return 2 * sq(gA1) * n1 * sq(xA1) * z * z; });
  line("varW V1", var(V1, V1),
       [=](double z) {
         return n1 * n1 + 2 * sq(gS1) * n1 * (sq(xS1) + n1 + 1) * z * z +
                2 * sq(gA1) * n1 * (sq(xA1) - n1) * z * z + 2 * 2 * n1 * cross;
       },
       [=](double z) {
         return n1 * n1 + 2 * sq(gS1) * n1 * (sq(xS1) + n1 + 1) * z * z +
                2 * sq(gA1) * n1 * (sq(xA1) - n1) * z * z + 2 * 2 * n1 * cross * z * z;
       });
  line("varW S1A1", var(S1, A1), [=](double z) {
    return 2 * sq(gS1) * (n1 + 1) * sq(xS1) * z * z + 2 * sq(gA1) * n1 * sq(xA1) * z * z -
           2 * (2 * n1 + 1) * cross * z * z;
  });
  line("varW S1V1", var(S1, V1),
       [=](double z) {
         return n1 * n1 + 2 * sq(gS1) * (3 * sq(xS1) + n1 + 1) * (n1 + 1) * z * z +
                2 * 2 * (n1 + 1) * cross * z * z;
       },
       [=](double z) {
         return n1 * n1 + 2 * sq(gS1) * (3 * sq(xS1) + n1 + 1) * (n1 + 1) * z * z +
                2 * 2 * (n1 + 1) * cross * z * z + 2 * sq(gS1) * n1 * (sq(xS1) + n1 + 1) * z * z +
                2 * sq(gA1) * n1 * (sq(xA1) - n1) * z * z + 2 * 2 * n1 * cross * z * z;
       });
  line("varW A1V1", var(A1, V1),
       [=](double z) {
         return n1 * n1 + 2 * sq(gA1) * n1 * (n1 - sq(xA1)) * z * z - 2 * 2 * n1 * cross * z * z;
       },
       [=](double z) {
         return n1 * n1 + 2 * sq(gA1) * n1 * (n1 - sq(xA1)) * z * z - 2 * 2 * n1 * cross * z * z +
                2 * sq(gS1) * n1 * (sq(xS1) + n1 + 1) * z * z + 2 * sq(gA1) * n1 * (sq(xA1) - n1) * z * z +
                2 * 2 * n1 * cross * z * z;
       });
  line("lambda S1A1", squeeze(S1, A1), [=](double z) {
    return 2 * (1 + sq(gS1) * (n1 + 1) * z * z + sq(gA1) * n1 * z * z -
                abs(gA1) * abs(gS1) * (1 + 2 * n1) * z * z);
  });
  line("lambda S1V1", squeeze(S1, V1), [=](double z) {
    return 2 * (1 + n1 - 2 * abs(gS1) * (n1 + 1) * z + 2 * sq(gS1) * (n1 + 1) * z * z -
                sq(gA1) * n1 * z * z);
  });
  line("lambda A1V1", squeeze(A1, V1), [=](double z) {
    return 2 * (1 + n1 - 2 * re(i * std::conj(gA1) * n1) * z + sq(gS1) * (n1 + 1) * z * z);
  });
  line("lambda S1V2", squeeze(S1, V2), [=](double z) {
    return 2 * (1 + n2 + sq(gS1) * (n1 + 1) * z * z + sq(gS2) * (n2 + 1) * z * z -
                sq(gA2) * n2 * z * z - abs(gS2) * abs(kS) * (n2 + 1) * z * z);
  });
  line("lambda A1V2", squeeze(A1, V2),
       [=](double z) {
         return 2 * (1 + n2 + sq(gS2) * (n2 + 1) * z * z + sq(gA1) * n1 * z * z - sq(gA2) * n2 * z * z -
                     2 * re(std::conj(gA2) * kA * n2) * z * z);
       },
       [=](double z) {
         return 2 * (1 + n2 + sq(gS2) * (n2 + 1) * z * z + sq(gA1) * n1 * z * z - sq(gA2) * n2 * z * z -
                     re(std::conj(gA2) * kA * n2) * z * z);
       });
  return out;
}

}  // namespace coupler::testing
