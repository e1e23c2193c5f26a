#include "compnoma/capacity_analytic.hpp"

#include <cmath>
#include <numbers>

#include "compnoma/errors.hpp"
#include "compnoma/special_functions.hpp"

namespace compnoma {

namespace {

constexpr double kLn2 = std::numbers::ln2;

void check_pair(const SystemParams& p, const LinkTable& table) {
  validate(p);
  if (p.B != table.num_bs()) {
    throw ParamError("params.B = " + std::to_string(p.B) + " does not match the link table (B = " +
                     std::to_string(table.num_bs()) + ")");
  }
}

}  // namespace

double expected_log2_shifted(const RateSet& rs, double shift) {
  if (!(shift > 0.0)) throw ParamError("expected_log2_shifted: shift must be > 0");
  const Eigen::VectorXd w = partial_fraction_weights(rs.rates);
  const double log_shift = std::log(shift);
  double acc = 0.0;
  for (int i = 0; i < rs.rates.size(); ++i) {
    acc += w[i] * (log_shift + exp_scaled_e1(shift * rs.rates[i]));
  }
  return acc / kLn2;
}

double a_const(const SystemParams& p, const LinkTable& table, int j) {
  check_pair(p, table);
  if (j < 0 || j >= p.B) throw ParamError("CCU index out of range");
  return p.rho * table.sigma2_eps_ccu.col(j).sum() + p.rho * p.upsilon + 1.0;
}

double b_const(const SystemParams& p, const LinkTable& table) {
  check_pair(p, table);
  return p.rho * table.sigma2_eps_ceu.sum() + 1.0;
}

double ccu_capacity_case1(const SystemParams& p, const LinkTable& table, int j) {
  check_pair(p, table);
  if (p.alpha == 0.0) return 0.0;  // no CCU power, zero SINR
  const double a = a_const(p, table, j);
  const RateSet full = rates_ccu(table, j, p.alpha, p.rho, true);
  const RateSet interf = rates_ccu(table, j, p.alpha, p.rho, false);
  // E[log2((T + a)/(Y + a))] with T the full sum and Y the interference-only sum
  return std::max(0.0, expected_log2_shifted(full, a) - expected_log2_shifted(interf, a));
}

double ccu_capacity_case2(const SystemParams& p, const LinkTable& table, int j) {
  check_pair(p, table);
  if (p.alpha == 0.0) return 0.0;
  const double n = a_const(p, table, j) / (p.alpha * p.rho * table.sigma2_hat_ccu(j, j));
  return exp_scaled_e1(n) / kLn2;
}

double ccu_capacity(const SystemParams& p, const LinkTable& table, int j) {
  return p.pairing == PairingCase::CASE_I ? ccu_capacity_case1(p, table, j)
                                          : ccu_capacity_case2(p, table, j);
}

double ceu_capacity(const SystemParams& p, const LinkTable& table) {
  check_pair(p, table);
  const double b = b_const(p, table);
  const RateSet num = rates_ceu(table, p.alpha, p.rho, RateKind::CEU_NUM);
  // E[log2((S + b)/(alpha S + b))]; alpha = 0 degenerates the denominator sum to 0
  const double minuend = expected_log2_shifted(num, b);
  const double subtrahend =
      p.alpha == 0.0 ? std::log2(b)
                     : expected_log2_shifted(rates_ceu(table, p.alpha, p.rho, RateKind::CEU_DEN), b);
  return std::max(0.0, minuend - subtrahend);
}

GroupCapacity noma_group_capacity(const SystemParams& p, const LinkTable& table) {
  check_pair(p, table);
  GroupCapacity g;
  g.ccu.resize(p.B);
  for (int j = 0; j < p.B; ++j) g.ccu[j] = ccu_capacity(p, table, j);
  g.ceu = ceu_capacity(p, table);
  g.sum = g.ceu + g.ccu.sum();
  return g;
}

GroupCapacity oma_group_capacity(const SystemParams& p, const LinkTable& table) {
  check_pair(p, table);
  const double share = 1.0 / (p.B + 1);
  GroupCapacity g;
  g.ccu.resize(p.B);
  for (int j = 0; j < p.B; ++j) {
    if (p.alpha == 0.0) {
      g.ccu[j] = 0.0;
      continue;
    }
    // exclusive slot: only the serving link transmits, so only its error remains
    const double n = (1.0 + p.rho * table.sigma2_eps_ccu(j, j)) /
                     (p.alpha * p.rho * table.sigma2_hat_ccu(j, j));
    g.ccu[j] = share * exp_scaled_e1(n) / kLn2;
  }
  const double b = b_const(p, table);
  Eigen::VectorXd l(p.B);
  for (int i = 0; i < p.B; ++i) l[i] = 1.0 / (p.beta * p.rho * table.sigma2_hat_ceu(i));
  const RateSet joint = make_rate_set(std::move(l));
  g.ceu = share * std::max(0.0, expected_log2_shifted(joint, b) - std::log2(b));
  g.sum = g.ceu + g.ccu.sum();
  return g;
}

GroupCapacity group_capacity(const SystemParams& p, const LinkTable& table) {
  return p.scheme == Scheme::COMP_NOMA ? noma_group_capacity(p, table)
                                       : oma_group_capacity(p, table);
}

}  // namespace compnoma
