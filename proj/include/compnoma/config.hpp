#pragma once

#include <map>
#include <string>
#include <vector>

#include "compnoma/sweep.hpp"

namespace compnoma {

using ConfigMap = std::map<std::string, std::string>;

// Plain key=value lines; '#' starts a comment; blank lines ignored; a key
// given twice keeps the last value.
ConfigMap parse_config_file(const std::string& path);

// "lo:hi:step" (inclusive) or a comma list; throws ConfigError when empty or
// malformed.
std::vector<double> parse_value_list(const std::string& s);

struct RunConfig {
  SweepSpec spec;
  std::string out;  // CSV destination; empty means stdout-only report
};

// Applies a merged key set (file entries overridden by CLI flags) onto the
// run.  Unknown keys throw ConfigError; value errors name the offending key.
// Recognized keys: preset, axis, values, scheme, case, method, alpha, beta,
// rho_db, sigma2_eps, csi, upsilon_db, ideal_sic, v, samples, seed, chunk,
// threads, out, and the explicit-layout group bs_positions, ccu_positions,
// ceu_position, bs_height, cell_radius.
void apply_config(RunConfig& rc, const ConfigMap& kv);

}  // namespace compnoma
