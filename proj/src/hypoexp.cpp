#include "compnoma/hypoexp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "compnoma/errors.hpp"

namespace compnoma {

namespace {

// indices of `rates` sorted by value, grouped into clusters whose neighbors
// are closer than the distinctness tolerance; singleton clusters mean all good
std::vector<std::vector<int>> collision_clusters(const Eigen::VectorXd& rates) {
  const int n = static_cast<int>(rates.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return rates[a] < rates[b]; });

  std::vector<std::vector<int>> clusters;
  for (int t = 0; t < n; ++t) {
    if (t > 0) {
      const double lo = rates[order[t - 1]], hi = rates[order[t]];
      if ((hi - lo) / std::max(hi, lo) <= kRateDistinctTol) {
        clusters.back().push_back(order[t]);
        continue;
      }
    }
    clusters.push_back({order[t]});
  }
  return clusters;
}

}  // namespace

RateSet make_rate_set(Eigen::VectorXd rates, RateKind kind, DegeneratePolicy policy) {
  if (rates.size() == 0) throw ParamError("rate set must contain at least one rate");
  for (int i = 0; i < rates.size(); ++i) {
    if (!(rates[i] > 0.0) || !std::isfinite(rates[i])) {
      throw ParamError("rates must be positive and finite, got " + std::to_string(rates[i]));
    }
  }

  RateSet rs;
  rs.kind = kind;
  for (int round = 0; round < 4; ++round) {
    auto clusters = collision_clusters(rates);
    if (std::all_of(clusters.begin(), clusters.end(),
                    [](const auto& c) { return c.size() == 1; })) {
      rs.rates = std::move(rates);
      return rs;
    }
    if (policy == DegeneratePolicy::fail) {
      for (const auto& c : clusters) {
        if (c.size() > 1) {
          std::ostringstream msg;
          msg << "rate collision: " << rates[c[0]] << " and " << rates[c[1]]
              << " are closer than the relative tolerance " << kRateDistinctTol;
          throw RateCollisionError(msg.str());
        }
      }
    }
    // spread each cluster multiplicatively: a pair becomes k(1 -/+ 1e-7)
    for (const auto& c : clusters) {
      const int m = static_cast<int>(c.size());
      if (m == 1) continue;
      for (int t = 0; t < m; ++t) {
        rates[c[t]] *= 1.0 + 1e-7 * (2 * t - (m - 1));
      }
      rs.perturbed = true;
    }
  }
  throw RateCollisionError("rate collision persists after perturbation attempts");
}

RateSet rates_ccu(const LinkTable& table, int j, double alpha, double rho,
                  bool include_own, DegeneratePolicy policy) {
  const int B = table.num_bs();
  if (j < 0 || j >= B) throw ParamError("CCU index out of range");
  if (!(alpha > 0.0) || alpha > 1.0) throw ParamError("rates_ccu: alpha must be in (0,1]");
  if (!(rho > 0.0)) throw ParamError("rates_ccu: rho must be > 0");

  Eigen::VectorXd k(include_own ? B : B - 1);
  int t = 0;
  for (int i = 0; i < B; ++i) {
    if (!include_own && i == j) continue;
    k[t++] = 1.0 / (alpha * rho * table.sigma2_hat_ccu(i, j));
  }
  return make_rate_set(std::move(k),
                       include_own ? RateKind::CCU_FULL : RateKind::CCU_INTERF, policy);
}

RateSet rates_ceu(const LinkTable& table, double alpha, double rho, RateKind kind,
                  DegeneratePolicy policy) {
  if (kind != RateKind::CEU_NUM && kind != RateKind::CEU_DEN) {
    throw ParamError("rates_ceu: kind must be CEU_NUM or CEU_DEN");
  }
  if (!(rho > 0.0)) throw ParamError("rates_ceu: rho must be > 0");
  const double scale = (kind == RateKind::CEU_DEN) ? alpha * rho : rho;
  if (!(scale > 0.0)) throw ParamError("rates_ceu: alpha must be > 0 for CEU_DEN");

  const int B = table.num_bs();
  Eigen::VectorXd k(B);
  for (int i = 0; i < B; ++i) k[i] = 1.0 / (scale * table.sigma2_hat_ceu(i));
  return make_rate_set(std::move(k), kind, policy);
}

Eigen::VectorXd partial_fraction_weights(const Eigen::VectorXd& rates) {
  const int n = static_cast<int>(rates.size());
  Eigen::VectorXd w(n);
  if (n <= 8) {
    for (int i = 0; i < n; ++i) {
      double p = 1.0;
      for (int h = 0; h < n; ++h) {
        if (h != i) p *= rates[h] / (rates[h] - rates[i]);
      }
      w[i] = p;
    }
    return w;
  }
  // log-magnitude + sign form for large sets
  for (int i = 0; i < n; ++i) {
    double lg = 0.0;
    int sign = 1;
    for (int h = 0; h < n; ++h) {
      if (h == i) continue;
      const double diff = rates[h] - rates[i];
      lg += std::log(rates[h]) - std::log(std::abs(diff));
      if (diff < 0.0) sign = -sign;
    }
    w[i] = sign * std::exp(lg);
  }
  return w;
}

double pdf(const RateSet& rs, double x) {
  if (x < 0.0) return 0.0;
  const Eigen::VectorXd w = partial_fraction_weights(rs.rates);
  double s = 0.0;
  for (int i = 0; i < rs.rates.size(); ++i) {
    s += w[i] * rs.rates[i] * std::exp(-rs.rates[i] * x);
  }
  return std::max(s, 0.0);
}

double cdf(const RateSet& rs, double x) {
  if (x <= 0.0) return 0.0;
  const Eigen::VectorXd w = partial_fraction_weights(rs.rates);
  double s = 0.0;
  for (int i = 0; i < rs.rates.size(); ++i) {
    s += w[i] * std::exp(-rs.rates[i] * x);
  }
  return std::clamp(1.0 - s, 0.0, 1.0);
}

double mean(const RateSet& rs) { return rs.rates.cwiseInverse().sum(); }

}  // namespace compnoma
