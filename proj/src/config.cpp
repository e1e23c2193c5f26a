#include "compnoma/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "compnoma/errors.hpp"

namespace compnoma {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, sep)) {
    part = trim(part);
    if (!part.empty()) out.push_back(part);
  }
  return out;
}

double parse_double(const std::string& key, const std::string& s) {
  const std::string t = trim(s);
  char* end = nullptr;
  const double x = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size()) {
    throw ConfigError(key + ": cannot parse \"" + s + "\" as a number");
  }
  return x;
}

std::int64_t parse_int(const std::string& key, const std::string& s) {
  const std::string t = trim(s);
  char* end = nullptr;
  const long long x = std::strtoll(t.c_str(), &end, 10);
  if (t.empty() || end != t.c_str() + t.size()) {
    throw ConfigError(key + ": cannot parse \"" + s + "\" as an integer");
  }
  return x;
}

std::uint64_t parse_uint(const std::string& key, const std::string& s) {
  const std::string t = trim(s);
  char* end = nullptr;
  const unsigned long long x = std::strtoull(t.c_str(), &end, 10);
  if (t.empty() || end != t.c_str() + t.size()) {
    throw ConfigError(key + ": cannot parse \"" + s + "\" as an unsigned integer");
  }
  return x;
}

bool parse_bool(const std::string& key, const std::string& s) {
  const std::string t = trim(s);
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  throw ConfigError(key + ": cannot parse \"" + s + "\" as a boolean");
}

Eigen::Vector2d parse_point(const std::string& key, const std::string& s) {
  std::string t = s;
  for (char& c : t)
    if (c == ',') c = ' ';
  std::stringstream ss(t);
  double x, y;
  if (!(ss >> x >> y)) {
    throw ConfigError(key + ": cannot parse \"" + s + "\" as an x y pair");
  }
  std::string leftover;
  if (ss >> leftover) {
    throw ConfigError(key + ": trailing text after point \"" + s + "\"");
  }
  return {x, y};
}

std::vector<Eigen::Vector2d> parse_points(const std::string& key, const std::string& s) {
  std::vector<Eigen::Vector2d> pts;
  for (const auto& part : split(s, ';')) pts.push_back(parse_point(key, part));
  if (pts.empty()) throw ConfigError(key + ": no points given");
  return pts;
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "preset",     "axis",         "values",       "scheme",       "case",
      "method",     "alpha",        "beta",         "rho_db",       "sigma2_eps",
      "csi",        "upsilon_db",   "ideal_sic",    "v",            "samples",
      "seed",       "chunk",        "threads",      "out",          "bs_positions",
      "ccu_positions", "ceu_position", "bs_height", "cell_radius",
  };
  return keys;
}

}  // namespace

ConfigMap parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);

  ConfigMap kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": expected key=value, got \"" + line + "\"");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": empty key");
    }
    kv[key] = value;  // last one wins
  }
  return kv;
}

std::vector<double> parse_value_list(const std::string& s) {
  const std::string t = trim(s);
  if (t.empty()) throw ConfigError("values: empty list");

  std::vector<double> out;
  if (t.find(':') != std::string::npos) {
    const auto parts = split(t, ':');
    if (parts.size() != 3) {
      throw ConfigError("values: range must be lo:hi:step, got \"" + s + "\"");
    }
    const double lo = parse_double("values", parts[0]);
    const double hi = parse_double("values", parts[1]);
    const double step = parse_double("values", parts[2]);
    if (step <= 0 || hi < lo) {
      throw ConfigError("values: range needs hi >= lo and step > 0");
    }
    for (int i = 0;; ++i) {
      const double v = lo + i * step;
      if (v > hi + step * 1e-9) break;
      out.push_back(v);
    }
  } else {
    for (const auto& part : split(t, ',')) out.push_back(parse_double("values", part));
  }
  if (out.empty()) throw ConfigError("values: empty list");
  return out;
}

void apply_config(RunConfig& rc, const ConfigMap& kv) {
  for (const auto& [key, value] : kv) {
    (void)value;
    if (!known_keys().count(key)) throw ConfigError("unknown config key: " + key);
  }
  auto get = [&](const char* key) -> const std::string* {
    const auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };

  SweepSpec& spec = rc.spec;

  if (const auto* s = get("v")) spec.fixed.v = parse_double("v", *s);
  if (const auto* s = get("rho_db")) spec.fixed.rho = db_to_linear(parse_double("rho_db", *s));
  if (const auto* s = get("sigma2_eps"))
    spec.fixed.sigma2_eps = parse_double("sigma2_eps", *s);
  if (const auto* s = get("upsilon_db"))
    spec.fixed.upsilon = db_to_linear(parse_double("upsilon_db", *s));
  if (const auto* s = get("ideal_sic"))
    if (parse_bool("ideal_sic", *s)) spec.fixed.upsilon = 0.0;

  // beta alone (or alpha alone) implies the complementary split; both given
  // are taken literally so an inconsistent pair still reaches validation
  const auto* alpha_s = get("alpha");
  const auto* beta_s = get("beta");
  if (alpha_s && beta_s) {
    spec.fixed.alpha = parse_double("alpha", *alpha_s);
    spec.fixed.beta = parse_double("beta", *beta_s);
  } else if (beta_s) {
    set_beta(spec.fixed, parse_double("beta", *beta_s));
  } else if (alpha_s) {
    const double a = parse_double("alpha", *alpha_s);
    spec.fixed.alpha = a;
    spec.fixed.beta = 1.0 - a;
  }

  if (const auto* s = get("axis")) spec.axis = axis_from_string(trim(*s));
  if (const auto* s = get("values")) spec.values = parse_value_list(*s);

  if (const auto* s = get("scheme")) {
    spec.schemes.clear();
    for (const auto& part : split(*s, ',')) spec.schemes.push_back(scheme_from_string(part));
    if (spec.schemes.empty()) throw ConfigError("scheme: empty list");
  }
  if (const auto* s = get("case")) {
    spec.cases.clear();
    for (const auto& part : split(*s, ',')) spec.cases.push_back(case_from_string(part));
    if (spec.cases.empty()) throw ConfigError("case: empty list");
  }
  if (const auto* s = get("method")) {
    spec.methods.clear();
    for (const auto& part : split(*s, ','))
      spec.methods.push_back(method_from_string(part));
    if (spec.methods.empty()) throw ConfigError("method: empty list");
  }

  if (const auto* s = get("samples")) {
    spec.mc.samples = parse_int("samples", *s);
    if (spec.mc.samples < 1000) throw ConfigError("samples: must be at least 1000");
  }
  if (const auto* s = get("seed")) spec.mc.seed = parse_uint("seed", *s);
  if (const auto* s = get("chunk")) {
    spec.mc.chunk = parse_int("chunk", *s);
    if (spec.mc.chunk < 1) throw ConfigError("chunk: must be positive");
  }
  if (const auto* s = get("threads"))
    spec.mc.threads = static_cast<int>(parse_int("threads", *s));

  const bool layout_given = get("bs_positions") || get("ccu_positions") ||
                            get("ceu_position") || get("bs_height") ||
                            get("cell_radius");
  if (const auto* s = get("preset")) {
    spec.presets = split(*s, ',');
    if (spec.presets.empty()) throw ConfigError("preset: empty list");
    for (const auto& p : spec.presets) {
      if (p != "b2" && p != "b3" && p != "custom") {
        throw ConfigError("preset: expected b2, b3, or custom, got \"" + p + "\"");
      }
      if (layout_given && p != "custom") {
        throw ConfigError("explicit layout coordinates conflict with preset " + p);
      }
    }
  } else if (layout_given) {
    spec.presets = {"custom"};
  }

  if (layout_given) {
    const auto* bs = get("bs_positions");
    const auto* ccu = get("ccu_positions");
    const auto* ceu = get("ceu_position");
    if (!bs || !ccu || !ceu) {
      throw ConfigError(
          "a custom layout needs bs_positions, ccu_positions, and ceu_position");
    }
    CellLayout layout;
    layout.bs_positions = parse_points("bs_positions", *bs);
    layout.ccu_positions = parse_points("ccu_positions", *ccu);
    layout.ceu_position = parse_point("ceu_position", *ceu);
    layout.bs_height = 0.05;
    layout.cell_radius = 1.0;
    if (const auto* s = get("bs_height"))
      layout.bs_height = parse_double("bs_height", *s);
    if (const auto* s = get("cell_radius"))
      layout.cell_radius = parse_double("cell_radius", *s);
    validate(layout);
    spec.layout = std::move(layout);
  }

  if (const auto* s = get("csi")) {
    const std::string mode = trim(*s);
    if (mode == "perfect") {
      if (spec.axis == Axis::sigma2_eps && get("values")) {
        throw ConfigError("csi=perfect conflicts with a sigma2_eps sweep axis");
      }
      if (const auto* e = get("sigma2_eps")) {
        if (parse_double("sigma2_eps", *e) != 0.0) {
          throw ConfigError("csi=perfect conflicts with sigma2_eps=" + *e);
        }
      }
      spec.fixed.sigma2_eps = 0.0;
    } else if (mode == "imperfect") {
      if (!get("sigma2_eps") && spec.axis != Axis::sigma2_eps) {
        throw ConfigError("csi=imperfect requires sigma2_eps");
      }
    } else {
      throw ConfigError("csi: expected perfect or imperfect, got \"" + mode + "\"");
    }
  }

  if (const auto* s = get("out")) rc.out = trim(*s);
}

}  // namespace compnoma
