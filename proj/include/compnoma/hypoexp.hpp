#pragma once

#include <Eigen/Dense>

#include "compnoma/channel.hpp"

namespace compnoma {

// minimum relative gap between two rates before the partial-fraction products
// become numerically meaningless
inline constexpr double kRateDistinctTol = 1e-9;

enum class DegeneratePolicy {
  fail,     // throw RateCollisionError (default)
  perturb,  // nudge colliding rates apart multiplicatively by ~1e-7 and flag it
};

enum class RateKind {
  CCU_FULL,    // B rates 1/(alpha rho lambda_ij), full signal-plus-interference sum
  CCU_INTERF,  // B-1 rates, serving BS excluded
  CEU_NUM,     // B rates 1/(rho lambda_ik)
  CEU_DEN,     // B rates 1/(alpha rho lambda_ik)
  GENERIC,
};

// The distribution of a sum of independent Exp(rate_i) variables with
// pairwise-distinct rates.
struct RateSet {
  Eigen::VectorXd rates;
  RateKind kind = RateKind::GENERIC;
  bool perturbed = false;
};

RateSet make_rate_set(Eigen::VectorXd rates, RateKind kind = RateKind::GENERIC,
                      DegeneratePolicy policy = DegeneratePolicy::fail);

// Rates of the alpha*rho*g_ij terms CCU-j sees across BSs i = 1..B;
// include_own = false drops the serving BS (the interference-only sum).
RateSet rates_ccu(const LinkTable& table, int j, double alpha, double rho,
                  bool include_own, DegeneratePolicy policy = DegeneratePolicy::fail);

// Rates over the CEU's B joint links: CEU_NUM omits alpha, CEU_DEN includes it.
RateSet rates_ceu(const LinkTable& table, double alpha, double rho, RateKind kind,
                  DegeneratePolicy policy = DegeneratePolicy::fail);

// w_i = prod_{h != i} k_h / (k_h - k_i); evaluated in log-magnitude + sign
// form when there are more than 8 rates to keep intermediates representable.
Eigen::VectorXd partial_fraction_weights(const Eigen::VectorXd& rates);

// f(x) = sum_i w_i k_i e^(-k_i x); tiny negative cancellation residue is
// clamped to 0.
double pdf(const RateSet& rs, double x);

// F(x) = 1 - sum_i w_i e^(-k_i x)
double cdf(const RateSet& rs, double x);

// sum of 1/k_i
double mean(const RateSet& rs);

}  // namespace compnoma
