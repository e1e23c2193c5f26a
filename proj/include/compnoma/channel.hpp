#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "compnoma/geometry.hpp"

namespace compnoma {

// One link's Rayleigh statistics: sigma2 = d^-v is the true channel variance,
// sigma2_hat = sigma2 - sigma2_eps the estimated-channel variance, so
// |h_hat|^2 ~ Exp(mean sigma2_hat).
struct LinkStats {
  double sigma2 = 0;
  double sigma2_hat = 0;
  double sigma2_eps = 0;
};

struct LinkTable {
  Eigen::MatrixXd sigma2_ccu, sigma2_hat_ccu, sigma2_eps_ccu;  // (i, j): BS-i -> CCU-j
  Eigen::VectorXd sigma2_ceu, sigma2_hat_ceu, sigma2_eps_ceu;  // (i):    BS-i -> CEU
  double path_loss_exponent = 4.0;

  int num_bs() const { return static_cast<int>(sigma2_ceu.size()); }
  LinkStats ccu_links(int i, int j) const {
    return {sigma2_ccu(i, j), sigma2_hat_ccu(i, j), sigma2_eps_ccu(i, j)};
  }
  LinkStats ceu_links(int i) const {
    return {sigma2_ceu(i), sigma2_hat_ceu(i), sigma2_eps_ceu(i)};
  }
};

// One shared sigma2_eps on every link (the usual configuration).  Throws
// VarianceExhaustedError, naming the farthest link, when sigma2_eps >= d^-v
// anywhere.
LinkTable build_link_table(const DistanceTable& dist, double v, double sigma2_eps);

// Heterogeneous per-link error variances.
LinkTable build_link_table(const DistanceTable& dist, double v,
                           const Eigen::MatrixXd& ccu_sigma2_eps,
                           const Eigen::VectorXd& ceu_sigma2_eps);

// One realization of every |h_hat|^2.
struct FadingDraw {
  Eigen::MatrixXd g_ccu;  // (i, j)
  Eigen::VectorXd g_ceu;  // (i)
};

// Randomness stream index of each link; sample n of a link depends only on
// (seed, n, stream), independent of worker layout.
inline std::uint64_t ccu_stream(int B, int i, int j) {
  return static_cast<std::uint64_t>(i) * B + j;
}
inline std::uint64_t ceu_stream(int B, int i) {
  return static_cast<std::uint64_t>(B) * B + i;
}

void sample_into(const LinkTable& table, std::uint64_t seed,
                 std::uint64_t sample_index, FadingDraw& out);
FadingDraw sample(const LinkTable& table, std::uint64_t seed,
                  std::uint64_t sample_index);

}  // namespace compnoma
