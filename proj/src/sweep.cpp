#include "coupler/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>

#include "coupler/dynamics.hpp"
#include "coupler/errors.hpp"
#include "coupler/gaussian_stats.hpp"

namespace coupler {

namespace {

constexpr double kNotApplicable = std::numeric_limits<double>::quiet_NaN();

bool wants(Quantity requested, Quantity q) {
  return requested == q || (requested == Quantity::All && q != Quantity::Distribution);
}

struct Setup {
  ScenarioConfig cfg;
  std::vector<double> grid;
  GaussianState s0;
  Propagator propagator;
  bool need_distribution = false;
};

Setup prepare(const ScenarioConfig& cfg) {
  validate_scenario(cfg);
  const ValidatedParams params = validate_params(cfg.params);
  Setup setup{cfg, cfg.z_grid(), build_input_state(cfg.inputs),
              Propagator(build_drift_matrix(params)), false};
  for (const Observable& o : cfg.observables) {
    setup.need_distribution = setup.need_distribution || o.quantity == Quantity::Distribution;
  }
  return setup;
}

SweepResult empty_result(const Setup& s) {
  SweepResult r;
  r.name = s.cfg.name;
  r.z = s.grid;
  r.columns = column_names(s.cfg);
  const std::size_t n = s.grid.size();
  r.rows.assign(n, std::vector<double>(r.columns.size(), 0.0));
  r.states.resize(n);
  for (const Observable& o : s.cfg.observables) {
    if (o.quantity == Quantity::Distribution) {
      r.distributions.push_back({o.modes, std::vector<std::vector<double>>(n)});
    }
  }
  r.metadata["scenario"] = serialize_scenario(s.cfg);
  r.metadata["exponential"] = s.propagator.spectral() ? "spectral" : "pade13";
  return r;
}

// Fill grid point i of r.
void evaluate_point(const Setup& s, std::size_t i, SweepResult& r) {
  const GaussianState state = evolve_state(s.propagator(s.grid[i]), s.s0);
  r.states[i] = state;
  std::vector<double>& row = r.rows[i];
  std::size_t c = 0;
  std::size_t d = 0;
  for (const Observable& o : s.cfg.observables) {
    const ModeSelection& sel = o.modes;
    if (wants(o.quantity, Quantity::Moments)) {
      const MomentsAndDistribution md = moments_and_distribution(state, sel, s.cfg.k_max, -1);
      row[c++] = md.mean_w;
      for (const auto& w : md.reduced) row[c++] = w ? *w : kNotApplicable;
    }
    if (wants(o.quantity, Quantity::Variance)) row[c++] = intensity_variance(state, sel);
    if (wants(o.quantity, Quantity::Squeeze)) row[c++] = principal_squeeze(state, sel);
    if (wants(o.quantity, Quantity::Quadrature)) {
      const QuadratureVariances q = quadrature_variances(state, sel);
      row[c++] = q.var_p;
      row[c++] = q.var_q;
      row[c++] = q.uncertainty;
    }
    if (o.quantity == Quantity::Distribution) {
      r.distributions[d++].rows[i] = moments_and_distribution(state, sel, 1, s.cfg.n_max).p_n;
    }
  }
}

void check_finite(const SweepResult& r) {
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    for (std::size_t c = 0; c < r.columns.size(); ++c) {
      const double v = r.rows[i][c];
      if (std::isinf(v) || (std::isnan(v) && r.columns[c].find(".w") == std::string::npos)) {
        throw NumericalError("non-finite value in column " + r.columns[c] + " at z = " +
                             std::to_string(r.z[i]));
      }
    }
  }
}

std::string format_value(double v) {
  if (std::isnan(v)) return "NA";
  if (v == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

std::vector<std::string> column_names(const ScenarioConfig& cfg) {
  std::vector<std::string> cols;
  for (const Observable& o : cfg.observables) {
    const std::string p = o.modes.name() + ".";
    if (wants(o.quantity, Quantity::Moments)) {
      cols.push_back(p + "meanW");
      for (int k = 2; k <= cfg.k_max; ++k) cols.push_back(p + "w" + std::to_string(k));
    }
    if (wants(o.quantity, Quantity::Variance)) cols.push_back(p + "varW");
    if (wants(o.quantity, Quantity::Squeeze)) cols.push_back(p + "lambda");
    if (wants(o.quantity, Quantity::Quadrature)) {
      cols.push_back(p + "var_p");
      cols.push_back(p + "var_q");
      cols.push_back(p + "uncertainty");
    }
  }
  return cols;
}

SweepResult run_scenario(const ScenarioConfig& cfg) {
  const Setup s = prepare(cfg);
  SweepResult r = empty_result(s);
  const auto n = static_cast<std::int64_t>(s.grid.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      evaluate_point(s, static_cast<std::size_t>(i), r);
    } catch (...) {
#pragma omp critical(coupler_sweep_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  check_finite(r);
  return r;
}

SweepResult run_scenario_serial(const ScenarioConfig& cfg) {
  const Setup s = prepare(cfg);
  SweepResult r = empty_result(s);
  for (std::size_t i = 0; i < s.grid.size(); ++i) evaluate_point(s, i, r);
  check_finite(r);
  return r;
}

std::string format_csv(const SweepResult& result) {
  std::string out = "z";
  for (const std::string& c : result.columns) out += "," + c;
  out += "\n";
  for (std::size_t i = 0; i < result.z.size(); ++i) {
    out += format_value(result.z[i]);
    for (double v : result.rows[i]) out += "," + format_value(v);
    out += "\n";
  }
  return out;
}

std::string format_distribution_csv(const SweepResult& result) {
  if (result.distributions.empty()) return {};
  std::string out = "z";
  for (const DistributionTable& t : result.distributions) {
    const std::size_t width = t.rows.empty() ? 0 : t.rows.front().size();
    for (std::size_t n = 0; n < width; ++n) out += "," + t.modes.name() + ".p" + std::to_string(n);
  }
  out += "\n";
  for (std::size_t i = 0; i < result.z.size(); ++i) {
    out += format_value(result.z[i]);
    for (const DistributionTable& t : result.distributions) {
      for (double p : t.rows[i]) out += "," + format_value(p);
    }
    out += "\n";
  }
  return out;
}

std::string distribution_path(const std::string& path) {
  const std::size_t slash = path.find_last_of('/');
  const std::size_t dot = path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + ".pn.csv";
  return path.substr(0, dot) + ".pn.csv";
}

std::vector<std::string> emit_csv(const SweepResult& result, const std::string& path) {
  auto write = [](const std::string& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw Error("cannot open '" + p + "' for writing");
    f << text;
    f.close();
    if (!f) throw Error("failed writing '" + p + "'");
  };
  std::vector<std::string> written{path};
  write(path, format_csv(result));
  if (!result.distributions.empty()) {
    const std::string pn = distribution_path(path);
    write(pn, format_distribution_csv(result));
    written.push_back(pn);
  }
  return written;
}

}  // namespace coupler
