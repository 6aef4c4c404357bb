#include "coupler/scenario.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>

#include "coupler/errors.hpp"

namespace coupler {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string_view unquote(std::string_view s) {
  s = trim(s);
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

std::optional<double> parse_real(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::optional<long> parse_integer(std::string_view s) {
  s = trim(s);
  long value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::optional<cd> try_parse_complex(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (c != ' ' && c != '\t') s.push_back(c);
  }
  if (s.empty()) return std::nullopt;
  if (s.back() != 'i' && s.back() != 'j') {
    auto re = parse_real(s);
    if (!re) return std::nullopt;
    return cd(*re, 0.0);
  }
  s.pop_back();
  // Split at the last sign that is not part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  std::string re_part = split == std::string::npos ? "" : s.substr(0, split);
  std::string im_part = split == std::string::npos ? s : s.substr(split);
  if (im_part.empty() || im_part == "+") im_part = "1";
  if (im_part == "-") im_part = "-1";
  double re = 0.0;
  if (!re_part.empty()) {
    auto r = parse_real(re_part);
    if (!r) return std::nullopt;
    re = *r;
  }
  auto im = parse_real(im_part);
  if (!im) return std::nullopt;
  return cd(re, *im);
}

}  // namespace

cd parse_complex(std::string_view text) {
  auto v = try_parse_complex(text);
  if (!v) throw ValidationError("malformed complex literal '" + std::string(text) + "'");
  return *v;
}

std::string format_complex(cd v) {
  if (v.imag() == 0.0 && !std::signbit(v.imag())) return format_real(v.real());
  std::string out = format_real(v.real());
  const std::string im = format_real(v.imag());
  if (im.front() != '-') out += '+';
  return out + im + "i";
}

std::string_view quantity_name(Quantity q) {
  switch (q) {
    case Quantity::Moments: return "moments";
    case Quantity::Variance: return "variance";
    case Quantity::Squeeze: return "squeeze";
    case Quantity::Quadrature: return "quadrature";
    case Quantity::Distribution: return "pn";
    case Quantity::All: return "all";
  }
  return "?";
}

Quantity parse_quantity(std::string_view text) {
  for (Quantity q : {Quantity::Moments, Quantity::Variance, Quantity::Squeeze, Quantity::Quadrature,
                     Quantity::Distribution, Quantity::All}) {
    if (quantity_name(q) == text) return q;
  }
  throw ValidationError("unknown quantity tag '" + std::string(text) + "'");
}

std::string Observable::to_string() const {
  std::string out(quantity_name(quantity));
  out += ':';
  out += mode_name(modes.first());
  if (modes.compound()) {
    out += ',';
    out += mode_name(modes.second());
  }
  return out;
}

Observable Observable::parse(std::string_view text) {
  text = trim(text);
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw ValidationError("observable must look like 'tag:modes', got '" + std::string(text) + "'");
  }
  return Observable{parse_quantity(trim(text.substr(0, colon))),
                    ModeSelection::parse(text.substr(colon + 1))};
}

std::vector<double> ScenarioConfig::z_grid() const {
  std::vector<double> z(static_cast<std::size_t>(z_steps));
  for (int k = 0; k < z_steps; ++k) {
    z[static_cast<std::size_t>(k)] =
        k == z_steps - 1 ? z_max : z_max * static_cast<double>(k) / static_cast<double>(z_steps - 1);
  }
  return z;
}

void validate_scenario(const ScenarioConfig& cfg) {
  if (!(cfg.z_max > 0.0) || !std::isfinite(cfg.z_max)) {
    throw ValidationError("z_max must be finite and > 0");
  }
  if (cfg.z_steps < 2) throw ValidationError("z_steps must be >= 2");
  if (cfg.n_max < 1 || cfg.n_max > kMaxPhotonCutoff) {
    throw ValidationError("n_max must lie in [1, " + std::to_string(kMaxPhotonCutoff) + "]");
  }
  if (cfg.k_max < 2 || cfg.k_max > kMaxReducedMoment) {
    throw ValidationError("k_max must lie in [2, " + std::to_string(kMaxReducedMoment) + "]");
  }
}

ScenarioConfig parse_scenario(std::string_view text) {
  ScenarioConfig cfg;
  std::string section;
  bool have_params = false;
  int line_no = 0;

  auto fail = [&](const std::string& what, const std::string& key) -> ParseError {
    return ParseError(what, line_no, key);
  };

  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    // Strip comments outside quotes.
    bool quoted = false;
    for (std::size_t k = 0; k < line.size(); ++k) {
      if (line[k] == '"') quoted = !quoted;
      if (line[k] == '#' && !quoted) {
        line = line.substr(0, k);
        break;
      }
    }
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw fail("unterminated section header", std::string(line));
      section = std::string(trim(line.substr(1, line.size() - 2)));
      const bool input_section = section.rfind("inputs.", 0) == 0 && parse_mode(section.substr(7));
      if (section == "params") {
        have_params = true;
      } else if (section != "observables" && section != "run" && !input_section) {
        throw fail("unknown section", section);
      }
      continue;
    }

    if (section == "observables") {
      std::string_view entry = line;
      // Tolerate "entry = ..." and trailing commas from list-style documents.
      if (const auto eq = entry.find('='); eq != std::string_view::npos) entry = entry.substr(eq + 1);
      entry = trim(entry);
      if (!entry.empty() && entry.back() == ',') entry.remove_suffix(1);
      try {
        cfg.observables.push_back(Observable::parse(unquote(entry)));
      } catch (const ValidationError& e) {
        throw fail(e.what(), std::string(entry));
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw fail("expected key = value", std::string(line));
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = unquote(line.substr(eq + 1));
    if (section.empty()) throw fail("key outside of any section", key);

    auto real_value = [&]() {
      auto v = parse_real(value);
      if (!v) throw fail("malformed real number '" + std::string(value) + "'", key);
      return *v;
    };
    auto int_value = [&]() {
      auto v = parse_integer(value);
      if (!v) throw fail("malformed integer '" + std::string(value) + "'", key);
      return static_cast<int>(*v);
    };
    auto complex_value = [&]() {
      auto v = try_parse_complex(value);
      if (!v) throw fail("malformed complex literal '" + std::string(value) + "'", key);
      return *v;
    };

    if (section == "params") {
      CouplerParams& p = cfg.params;
      std::map<std::string, cd*> complex_keys{{"gS1", &p.gS1},   {"gA1", &p.gA1},
                                              {"gS2", &p.gS2},   {"gA2", &p.gA2},
                                              {"kappaS", &p.kappaS}, {"kappaA", &p.kappaA}};
      std::map<std::string, double*> real_keys{
          {"dkS1", &p.mismatch.dkS1}, {"dkA1", &p.mismatch.dkA1}, {"dkS2", &p.mismatch.dkS2},
          {"dkA2", &p.mismatch.dkA2}, {"dKS", &p.mismatch.dKS},   {"dKA", &p.mismatch.dKA}};
      if (auto it = complex_keys.find(key); it != complex_keys.end()) {
        *it->second = complex_value();
      } else if (auto jt = real_keys.find(key); jt != real_keys.end()) {
        *jt->second = real_value();
      } else {
        throw fail("unknown key in [params]", key);
      }
    } else if (section == "run") {
      if (key == "name") {
        cfg.name = std::string(value);
      } else if (key == "z_max") {
        cfg.z_max = real_value();
      } else if (key == "z_steps") {
        cfg.z_steps = int_value();
      } else if (key == "n_max") {
        cfg.n_max = int_value();
      } else if (key == "k_max") {
        cfg.k_max = int_value();
      } else {
        throw fail("unknown key in [run]", key);
      }
    } else {
      const Mode m = *parse_mode(section.substr(7));
      InputSpec& spec = cfg.inputs[static_cast<std::size_t>(index(m))];
      if (key == "xi") {
        spec.xi = complex_value();
      } else if (key == "r") {
        spec.r = real_value();
      } else if (key == "theta") {
        spec.theta = real_value();
      } else if (key == "n_ch") {
        spec.n_ch = real_value();
      } else {
        throw fail("unknown key in [" + section + "]", key);
      }
    }
  }

  if (!have_params) throw ParseError("missing [params] section", line_no, "params");
  if (cfg.observables.empty()) {
    for (Mode m : kAllModes) cfg.observables.push_back({Quantity::All, ModeSelection(m)});
  }
  validate_scenario(cfg);
  for (const InputSpec& s : cfg.inputs) {
    if (s.r < 0.0 || s.n_ch < 0.0) throw ValidationError("r and n_ch must be >= 0");
  }
  return cfg;
}

std::string serialize_scenario(const ScenarioConfig& cfg) {
  std::ostringstream out;
  const CouplerParams& p = cfg.params;
  out << "[params]\n";
  out << "gS1 = \"" << format_complex(p.gS1) << "\"\n";
  out << "gA1 = \"" << format_complex(p.gA1) << "\"\n";
  out << "gS2 = \"" << format_complex(p.gS2) << "\"\n";
  out << "gA2 = \"" << format_complex(p.gA2) << "\"\n";
  out << "kappaS = \"" << format_complex(p.kappaS) << "\"\n";
  out << "kappaA = \"" << format_complex(p.kappaA) << "\"\n";
  if (!p.mismatch.all_zero()) {
    out << "dkS1 = " << format_real(p.mismatch.dkS1) << "\n";
    out << "dkA1 = " << format_real(p.mismatch.dkA1) << "\n";
    out << "dkS2 = " << format_real(p.mismatch.dkS2) << "\n";
    out << "dkA2 = " << format_real(p.mismatch.dkA2) << "\n";
    out << "dKS = " << format_real(p.mismatch.dKS) << "\n";
    out << "dKA = " << format_real(p.mismatch.dKA) << "\n";
  }
  for (Mode m : kAllModes) {
    const InputSpec& s = cfg.inputs[static_cast<std::size_t>(index(m))];
    out << "\n[inputs." << mode_name(m) << "]\n";
    out << "xi = \"" << format_complex(s.xi) << "\"\n";
    out << "r = " << format_real(s.r) << "\n";
    out << "theta = " << format_real(s.theta) << "\n";
    out << "n_ch = " << format_real(s.n_ch) << "\n";
  }
  out << "\n[run]\n";
  out << "name = \"" << cfg.name << "\"\n";
  out << "z_max = " << format_real(cfg.z_max) << "\n";
  out << "z_steps = " << cfg.z_steps << "\n";
  out << "n_max = " << cfg.n_max << "\n";
  out << "k_max = " << cfg.k_max << "\n";
  out << "\n[observables]\n";
  for (const Observable& o : cfg.observables) out << "\"" << o.to_string() << "\"\n";
  return out.str();
}

}  // namespace coupler
