#pragma once

#include <Eigen/Dense>

#include "compnoma/channel.hpp"
#include "compnoma/hypoexp.hpp"
#include "compnoma/params.hpp"

namespace compnoma {

// E[log2(X + shift)] for X hypoexponential with the given rates, shift > 0:
// (1/ln 2) * sum_i w_i (ln(shift) + e^(shift*k_i) E1(shift*k_i)).
double expected_log2_shifted(const RateSet& rs, double shift);

// Additive noise offset CCU-j sees after SIC: rho*sum_i sigma2_eps_ij + rho*upsilon + 1.
double a_const(const SystemParams& p, const LinkTable& table, int j);

// CEU counterpart (no SIC residue): rho*sum_i sigma2_eps_ik + 1.
double b_const(const SystemParams& p, const LinkTable& table);

// Ergodic capacity of CCU-j with cross-BS interference (bits/s/Hz).
double ccu_capacity_case1(const SystemParams& p, const LinkTable& table, int j);

// Ergodic capacity of CCU-j under interference-free pairing.
double ccu_capacity_case2(const SystemParams& p, const LinkTable& table, int j);

// Dispatches on p.pairing.
double ccu_capacity(const SystemParams& p, const LinkTable& table, int j);

// Ergodic capacity of the jointly served CEU; identical for both pairing cases.
double ceu_capacity(const SystemParams& p, const LinkTable& table);

struct GroupCapacity {
  Eigen::VectorXd ccu;
  double ceu = 0.0;
  double sum = 0.0;  // always ceu + ccu.sum(), assembled exactly that way
};

GroupCapacity noma_group_capacity(const SystemParams& p, const LinkTable& table);

// Orthogonal baseline: each of the B+1 users gets an exclusive 1/(B+1) share,
// keeping its NOMA power fraction inside its own slot; no SIC, so no upsilon,
// and only the transmitting links' estimation error remains.
GroupCapacity oma_group_capacity(const SystemParams& p, const LinkTable& table);

// Dispatches on p.scheme.
GroupCapacity group_capacity(const SystemParams& p, const LinkTable& table);

}  // namespace compnoma
