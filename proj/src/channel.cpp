#include "compnoma/channel.hpp"

#include <cmath>
#include <sstream>

#include "compnoma/errors.hpp"
#include "compnoma/rng.hpp"

namespace compnoma {

namespace {

void check_exhaustion(const DistanceTable& dist, const LinkTable& t) {
  const int B = t.num_bs();
  double min_hat = t.sigma2_hat_ccu.minCoeff();
  min_hat = std::min(min_hat, t.sigma2_hat_ceu.minCoeff());
  if (min_hat > 0.0) return;

  // name the farthest link: it has the smallest d^-v and binds first
  double dmax = 0.0;
  int wi = 0, wj = -1;  // wj = -1 marks the CEU
  for (int i = 0; i < B; ++i) {
    for (int j = 0; j < B; ++j) {
      if (dist.d_ccu(i, j) > dmax) { dmax = dist.d_ccu(i, j); wi = i; wj = j; }
    }
    if (dist.d_ceu(i) > dmax) { dmax = dist.d_ceu(i); wi = i; wj = -1; }
  }
  const double eps = (wj < 0) ? t.sigma2_eps_ceu(wi) : t.sigma2_eps_ccu(wi, wj);
  const double s2 = (wj < 0) ? t.sigma2_ceu(wi) : t.sigma2_ccu(wi, wj);
  std::ostringstream msg;
  msg << "variance exhausted: sigma2_eps = " << eps << " >= d^-v = " << s2
      << " on the farthest link BS-" << (wi + 1) << " -> "
      << (wj < 0 ? std::string("CEU") : "CCU-" + std::to_string(wj + 1))
      << " (d = " << dmax << "); the estimated-channel variance would be <= 0";
  throw VarianceExhaustedError(msg.str());
}

}  // namespace

LinkTable build_link_table(const DistanceTable& dist, double v,
                           const Eigen::MatrixXd& ccu_sigma2_eps,
                           const Eigen::VectorXd& ceu_sigma2_eps) {
  const int B = dist.num_bs();
  if (!(v > 0.0)) throw ParamError("path-loss exponent must be > 0");
  if (ccu_sigma2_eps.rows() != B || ccu_sigma2_eps.cols() != B ||
      ceu_sigma2_eps.size() != B) {
    throw ParamError("sigma2_eps dimensions do not match the distance table");
  }
  if ((ccu_sigma2_eps.array() < 0.0).any() || (ceu_sigma2_eps.array() < 0.0).any()) {
    throw ParamError("sigma2_eps must be >= 0");
  }

  LinkTable t;
  t.path_loss_exponent = v;
  t.sigma2_ccu = dist.d_ccu.array().pow(-v);
  t.sigma2_ceu = dist.d_ceu.array().pow(-v);
  t.sigma2_eps_ccu = ccu_sigma2_eps;
  t.sigma2_eps_ceu = ceu_sigma2_eps;
  t.sigma2_hat_ccu = t.sigma2_ccu - t.sigma2_eps_ccu;
  t.sigma2_hat_ceu = t.sigma2_ceu - t.sigma2_eps_ceu;
  check_exhaustion(dist, t);
  return t;
}

LinkTable build_link_table(const DistanceTable& dist, double v, double sigma2_eps) {
  const int B = dist.num_bs();
  if (!(sigma2_eps >= 0.0)) throw ParamError("sigma2_eps must be >= 0");
  return build_link_table(dist, v, Eigen::MatrixXd::Constant(B, B, sigma2_eps),
                          Eigen::VectorXd::Constant(B, sigma2_eps));
}

void sample_into(const LinkTable& table, std::uint64_t seed,
                 std::uint64_t sample_index, FadingDraw& out) {
  const int B = table.num_bs();
  out.g_ccu.resize(B, B);
  out.g_ceu.resize(B);
  for (int i = 0; i < B; ++i) {
    for (int j = 0; j < B; ++j) {
      out.g_ccu(i, j) = rng::exponential(table.sigma2_hat_ccu(i, j), seed,
                                         sample_index, ccu_stream(B, i, j));
    }
    out.g_ceu(i) = rng::exponential(table.sigma2_hat_ceu(i), seed, sample_index,
                                    ceu_stream(B, i));
  }
}

FadingDraw sample(const LinkTable& table, std::uint64_t seed,
                  std::uint64_t sample_index) {
  FadingDraw d;
  sample_into(table, seed, sample_index, d);
  return d;
}

}  // namespace compnoma
