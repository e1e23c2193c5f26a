#pragma once

#include <cmath>

namespace compnoma {

// CCU pairing outcome: CASE_I — grouped CCUs receive cross-BS interference;
// CASE_II — they do not (interference-free pairing).  The CEU is unaffected.
enum class PairingCase { CASE_I, CASE_II };

enum class Scheme { COMP_NOMA, COMP_OMA };

enum class Method { analytic, monte_carlo };

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

struct SystemParams {
  int B = 2;                            // coordinated base stations
  double alpha = 0.05;                  // CCU power fraction
  double beta = 0.95;                   // CEU power fraction; alpha + beta = 1
  double rho = db_to_linear(20.0);      // transmit SNR, linear
  double sigma2_eps = 0.0;              // estimation-error variance (0 = perfect CSI)
  double upsilon = db_to_linear(-25.0); // residual SIC interference, linear
  double v = 4.0;                       // path-loss exponent
  PairingCase pairing = PairingCase::CASE_I;
  Scheme scheme = Scheme::COMP_NOMA;
};

// Throws ParamError.  alpha = 0 is admitted as the documented limiting case
// (all CCU capacities are then exactly 0).
void validate(const SystemParams& p);

inline void set_beta(SystemParams& p, double beta) {
  p.beta = beta;
  p.alpha = 1.0 - beta;
}

}  // namespace compnoma
