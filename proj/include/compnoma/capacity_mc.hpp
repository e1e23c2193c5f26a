#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "compnoma/channel.hpp"
#include "compnoma/params.hpp"

namespace compnoma {

// COMPNOMA_SEED from the environment if set, else 12345
std::uint64_t default_seed();

struct McConfig {
  std::int64_t samples = 1'000'000;  // >= 1000
  std::uint64_t seed = default_seed();
  std::int64_t chunk = 4096;  // fixed accumulation block; the determinism boundary
  int threads = 0;            // 0 = hardware concurrency
};

struct CapacityEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;  // sample-stddev / sqrt(samples)
  std::int64_t samples = 0;
  Method method = Method::monte_carlo;
};

// Per-draw SINRs (the estimator integrates log2(1 + .) over these).
double sinr_ccu_case1(const FadingDraw& draw, const SystemParams& p,
                      const LinkTable& table, int j);
double sinr_ccu_case2(const FadingDraw& draw, const SystemParams& p,
                      const LinkTable& table, int j);
// CCU-j decoding the CEU message before SIC; diagnostic only, capped by beta/alpha.
double sinr_ccu_decode_ceu(const FadingDraw& draw, const SystemParams& p,
                           const LinkTable& table, int j);
double sinr_ceu(const FadingDraw& draw, const SystemParams& p, const LinkTable& table);
// Exclusive-slot baselines (no cross-BS interference, no SIC residue).
double sinr_ccu_oma(const FadingDraw& draw, const SystemParams& p,
                    const LinkTable& table, int j);
double sinr_ceu_oma(const FadingDraw& draw, const SystemParams& p, const LinkTable& table);

// User-or-sum selector.
struct Target {
  enum class Kind { ccu, ceu, sum, ccu_sum };
  Kind kind = Kind::sum;
  int j = 0;  // CCU index when kind == ccu
};

// Mean of log2(1+SINR) over mc.samples draws, scaled by 1/(B+1) for OMA
// targets.  Bit-reproducible for fixed (seed, samples, chunk) regardless of
// thread count.
CapacityEstimate estimate(const SystemParams& p, const LinkTable& table,
                          Target target, const McConfig& mc);

struct GroupEstimate {
  std::vector<CapacityEstimate> ccu;
  CapacityEstimate ceu, sum, ccu_sum;
};

GroupEstimate estimate_group(const SystemParams& p, const LinkTable& table,
                             const McConfig& mc);

// Several (scheme, pairing) views evaluated over one shared set of fading
// draws — the per-draw values equal what separate runs would produce, at a
// third of the RNG cost.
struct ViewSpec {
  Scheme scheme = Scheme::COMP_NOMA;
  PairingCase pairing = PairingCase::CASE_I;
};

std::vector<GroupEstimate> estimate_views(const SystemParams& p, const LinkTable& table,
                                          const std::vector<ViewSpec>& views,
                                          const McConfig& mc);

}  // namespace compnoma
