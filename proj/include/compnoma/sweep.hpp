#pragma once

#include <optional>
#include <string>
#include <vector>

#include "compnoma/capacity_mc.hpp"
#include "compnoma/geometry.hpp"
#include "compnoma/params.hpp"

namespace compnoma {

enum class Axis { rho_dB, sigma2_eps, beta };

std::string to_string(Axis a);
std::string to_string(Scheme s);
std::string to_string(PairingCase c);
std::string to_string(Method m);
Axis axis_from_string(const std::string& s);
Scheme scheme_from_string(const std::string& s);
PairingCase case_from_string(const std::string& s);
Method method_from_string(const std::string& s);

struct SweepSpec {
  std::vector<std::string> presets{"b2"};  // subset of {b2, b3}, or {"custom"}
  std::optional<CellLayout> layout;        // required when presets == {"custom"}
  Axis axis = Axis::rho_dB;
  std::vector<double> values;              // nonempty, strictly increasing
  SystemParams fixed;                      // parameters the axis does not touch
  std::vector<Scheme> schemes{Scheme::COMP_NOMA};
  std::vector<PairingCase> cases{PairingCase::CASE_I};
  std::vector<Method> methods{Method::analytic};
  McConfig mc;
};

struct SweepRow {
  std::string preset;
  Scheme scheme = Scheme::COMP_NOMA;
  // OMA rows carry no pairing distinction; case_tag is "-" for them
  std::string case_tag;
  Method method = Method::analytic;
  int B = 0;
  double rho_dB = 0, sigma2_eps = 0, alpha = 0, beta = 0, upsilon_dB = 0;
  std::string user;  // CCU-1..CCU-B, CEU, SUM, CCU-SUM
  double capacity_bits = 0;
  double stderr_ = 0;        // 0 for analytic rows
  std::int64_t samples = 0;  // 0 for analytic rows
  std::uint64_t seed = 0;
};

// Evaluates the whole grid.  Rows come back in deterministic grid order
// (preset, then value, scheme, case, method, user) regardless of how the work
// was scheduled across the pool.  Any failing grid point aborts the run by
// throwing.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);
std::vector<SweepRow> run_sweeps(const std::vector<SweepSpec>& specs);

// Built-in parameter-study bundles; name is one of fig4..fig8.  base
// supplies every parameter the bundle does not pin.
std::vector<SweepSpec> figure_sweeps(const std::string& name, const SystemParams& base,
                                     const McConfig& mc);

// CSV with a commented metadata line, an exact header, and 17-significant-
// digit values; written to a temp file and renamed so a failed run leaves
// nothing behind.
void write_csv(const std::string& path, const std::vector<SweepRow>& rows);
std::vector<SweepRow> read_csv(const std::string& path);

inline const char* csv_header() {
  return "preset,scheme,case,method,B,rho_dB,sigma2_eps,alpha,beta,upsilon_dB,"
         "user,capacity_bits,stderr,samples,seed";
}

}  // namespace compnoma
