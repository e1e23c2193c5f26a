#include "compnoma/params.hpp"

#include <cmath>
#include <string>

#include "compnoma/errors.hpp"

namespace compnoma {

void validate(const SystemParams& p) {
  if (p.B < 2) throw ParamError("B must be >= 2, got " + std::to_string(p.B));
  if (!(p.alpha >= 0.0) || !(p.beta > 0.0) || p.alpha > 1.0 || p.beta > 1.0) {
    throw ParamError("power fractions out of range: alpha = " + std::to_string(p.alpha) +
                     ", beta = " + std::to_string(p.beta));
  }
  if (std::abs(p.alpha + p.beta - 1.0) > 1e-12) {
    throw ParamError("alpha + beta != 1 (alpha = " + std::to_string(p.alpha) +
                     ", beta = " + std::to_string(p.beta) + ")");
  }
  if (p.alpha > p.beta) {
    throw ParamError("the power split must favor the far user: alpha <= beta required");
  }
  if (!(p.rho > 0.0) || !std::isfinite(p.rho)) throw ParamError("rho must be positive and finite");
  if (!(p.sigma2_eps >= 0.0)) throw ParamError("sigma2_eps must be >= 0");
  if (!(p.upsilon >= 0.0)) throw ParamError("upsilon must be >= 0");
  if (!(p.v > 0.0)) throw ParamError("path-loss exponent must be > 0");
}

}  // namespace compnoma
