#include "compnoma/capacity_mc.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "compnoma/errors.hpp"
#include "compnoma/rng.hpp"

namespace compnoma {

std::uint64_t default_seed() {
  if (const char* env = std::getenv("COMPNOMA_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return v;
  }
  return 12345;
}

namespace {

void check_inputs(const SystemParams& p, const LinkTable& table, const McConfig& mc) {
  validate(p);
  if (p.B != table.num_bs()) throw ParamError("params.B does not match the link table");
  if (mc.samples < 1000) throw ParamError("mc.samples must be >= 1000");
  if (mc.chunk < 1) throw ParamError("mc.chunk must be >= 1");
}

struct Acc {
  double s = 0.0, s2 = 0.0;
  void add(double x) {
    s += x;
    s2 += x * x;
  }
  void merge(const Acc& o) {
    s += o.s;
    s2 += o.s2;
  }
};

// Per view, targets are laid out as [ccu_0 .. ccu_{B-1}, ceu, sum, ccu_sum].
int targets_per_view(int B) { return B + 3; }

// One chunk of samples, accumulated serially in sample order.
void accumulate_chunk(const SystemParams& p, const LinkTable& table,
                      const std::vector<ViewSpec>& views, std::uint64_t seed,
                      std::int64_t begin, std::int64_t end, Acc* out) {
  const int B = p.B;
  const int T = targets_per_view(B);
  const double inv_rho = 1.0 / p.rho;
  const double share = 1.0 / (B + 1);

  Eigen::VectorXd eps_col(B);  // total error variance on CCU-j's links
  for (int j = 0; j < B; ++j) eps_col[j] = table.sigma2_eps_ccu.col(j).sum();
  const double eps_ceu = table.sigma2_eps_ceu.sum();

  Eigen::VectorXd g(B * B), gc(B), own(B), tot(B), cap(B);

  for (std::int64_t n = begin; n < end; ++n) {
    const auto un = static_cast<std::uint64_t>(n);
    for (int i = 0; i < B; ++i) {
      for (int j = 0; j < B; ++j) {
        g[i * B + j] = rng::exponential(table.sigma2_hat_ccu(i, j), seed, un,
                                        ccu_stream(B, i, j));
      }
      gc[i] = rng::exponential(table.sigma2_hat_ceu(i), seed, un, ceu_stream(B, i));
    }
    for (int j = 0; j < B; ++j) {
      own[j] = g[j * B + j];
      double t = 0.0;
      for (int i = 0; i < B; ++i) t += g[i * B + j];
      tot[j] = t;
    }
    const double S = gc.sum();

    for (std::size_t vi = 0; vi < views.size(); ++vi) {
      Acc* acc = out + vi * T;
      double ccu_sum = 0.0, ceu_cap = 0.0;
      if (views[vi].scheme == Scheme::COMP_NOMA) {
        const bool interference = views[vi].pairing == PairingCase::CASE_I;
        for (int j = 0; j < B; ++j) {
          const double den = (interference ? p.alpha * (tot[j] - own[j]) : 0.0) +
                             eps_col[j] + p.upsilon + inv_rho;
          cap[j] = std::log2(1.0 + p.alpha * own[j] / den);
        }
        ceu_cap = std::log2(1.0 + p.beta * S / (p.alpha * S + eps_ceu + inv_rho));
      } else {
        for (int j = 0; j < B; ++j) {
          cap[j] = share * std::log2(1.0 + p.alpha * own[j] /
                                               (table.sigma2_eps_ccu(j, j) + inv_rho));
        }
        ceu_cap = share * std::log2(1.0 + p.beta * S / (eps_ceu + inv_rho));
      }
      for (int j = 0; j < B; ++j) {
        acc[j].add(cap[j]);
        ccu_sum += cap[j];
      }
      acc[B].add(ceu_cap);
      acc[B + 1].add(ccu_sum + ceu_cap);
      acc[B + 2].add(ccu_sum);
    }
  }
}

// Pairwise merge of the per-chunk accumulators in fixed index order, so the
// reduction tree (and hence every rounding) is independent of thread count.
void reduce_chunks(const std::vector<std::vector<Acc>>& chunks, std::size_t lo,
                   std::size_t hi, std::vector<Acc>& out) {
  if (hi - lo == 1) {
    out = chunks[lo];
    return;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  std::vector<Acc> left, right;
  reduce_chunks(chunks, lo, mid, left);
  reduce_chunks(chunks, mid, hi, right);
  for (std::size_t t = 0; t < left.size(); ++t) left[t].merge(right[t]);
  out = std::move(left);
}

std::vector<std::vector<Acc>> run_kernel(const SystemParams& p, const LinkTable& table,
                                         const std::vector<ViewSpec>& views,
                                         const McConfig& mc) {
  const int T = targets_per_view(p.B);
  const auto n_chunks =
      static_cast<std::size_t>((mc.samples + mc.chunk - 1) / mc.chunk);
  std::vector<std::vector<Acc>> chunks(n_chunks);

  unsigned n_threads = mc.threads > 0 ? static_cast<unsigned>(mc.threads)
                                      : std::thread::hardware_concurrency();
  if (n_threads == 0) n_threads = 1;
  n_threads = std::min<unsigned>(n_threads, n_chunks);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= n_chunks) return;
      const std::int64_t begin = static_cast<std::int64_t>(c) * mc.chunk;
      const std::int64_t end = std::min<std::int64_t>(begin + mc.chunk, mc.samples);
      chunks[c].assign(views.size() * T, Acc{});
      accumulate_chunk(p, table, views, mc.seed, begin, end, chunks[c].data());
    }
  };
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::vector<std::vector<Acc>> reduced(1);
  reduce_chunks(chunks, 0, n_chunks, reduced[0]);
  return reduced;
}

CapacityEstimate finish(const Acc& a, std::int64_t n) {
  CapacityEstimate e;
  e.samples = n;
  e.method = Method::monte_carlo;
  e.mean = a.s / n;
  const double var = std::max(0.0, (a.s2 - n * e.mean * e.mean) / (n - 1));
  e.stderr_ = std::sqrt(var / n);
  return e;
}

double sinr_ccu_noma(const FadingDraw& draw, const SystemParams& p,
                     const LinkTable& table, int j, bool interference) {
  double cross = 0.0, eps = 0.0;
  for (int i = 0; i < p.B; ++i) {
    if (i != j) cross += draw.g_ccu(i, j);
    eps += table.sigma2_eps_ccu(i, j);
  }
  const double den =
      (interference ? p.alpha * cross : 0.0) + eps + p.upsilon + 1.0 / p.rho;
  return p.alpha * draw.g_ccu(j, j) / den;
}

}  // namespace

double sinr_ccu_case1(const FadingDraw& draw, const SystemParams& p,
                      const LinkTable& table, int j) {
  return sinr_ccu_noma(draw, p, table, j, true);
}

double sinr_ccu_case2(const FadingDraw& draw, const SystemParams& p,
                      const LinkTable& table, int j) {
  return sinr_ccu_noma(draw, p, table, j, false);
}

double sinr_ccu_decode_ceu(const FadingDraw& draw, const SystemParams& p,
                           const LinkTable& table, int j) {
  double tot = 0.0, eps = 0.0;
  for (int i = 0; i < p.B; ++i) {
    tot += draw.g_ccu(i, j);
    eps += table.sigma2_eps_ccu(i, j);
  }
  return p.beta * tot / (p.alpha * tot + eps + 1.0 / p.rho);
}

double sinr_ceu(const FadingDraw& draw, const SystemParams& p, const LinkTable& table) {
  const double S = draw.g_ceu.sum();
  return p.beta * S / (p.alpha * S + table.sigma2_eps_ceu.sum() + 1.0 / p.rho);
}

double sinr_ccu_oma(const FadingDraw& draw, const SystemParams& p,
                    const LinkTable& table, int j) {
  return p.alpha * draw.g_ccu(j, j) / (table.sigma2_eps_ccu(j, j) + 1.0 / p.rho);
}

double sinr_ceu_oma(const FadingDraw& draw, const SystemParams& p,
                    const LinkTable& table) {
  return p.beta * draw.g_ceu.sum() / (table.sigma2_eps_ceu.sum() + 1.0 / p.rho);
}

CapacityEstimate estimate(const SystemParams& p, const LinkTable& table,
                          Target target, const McConfig& mc) {
  check_inputs(p, table, mc);
  const std::vector<ViewSpec> views{{p.scheme, p.pairing}};
  const auto acc = run_kernel(p, table, views, mc);
  const int B = p.B;
  int idx = 0;
  switch (target.kind) {
    case Target::Kind::ccu:
      if (target.j < 0 || target.j >= B) throw ParamError("target CCU index out of range");
      idx = target.j;
      break;
    case Target::Kind::ceu: idx = B; break;
    case Target::Kind::sum: idx = B + 1; break;
    case Target::Kind::ccu_sum: idx = B + 2; break;
  }
  return finish(acc[0][idx], mc.samples);
}

std::vector<GroupEstimate> estimate_views(const SystemParams& p, const LinkTable& table,
                                          const std::vector<ViewSpec>& views,
                                          const McConfig& mc) {
  check_inputs(p, table, mc);
  if (views.empty()) throw ParamError("estimate_views: no views given");
  const auto acc = run_kernel(p, table, views, mc);
  const int B = p.B;
  const int T = targets_per_view(B);
  std::vector<GroupEstimate> out(views.size());
  for (std::size_t vi = 0; vi < views.size(); ++vi) {
    const Acc* a = acc[0].data() + vi * T;
    out[vi].ccu.resize(B);
    for (int j = 0; j < B; ++j) out[vi].ccu[j] = finish(a[j], mc.samples);
    out[vi].ceu = finish(a[B], mc.samples);
    out[vi].sum = finish(a[B + 1], mc.samples);
    out[vi].ccu_sum = finish(a[B + 2], mc.samples);
  }
  return out;
}

GroupEstimate estimate_group(const SystemParams& p, const LinkTable& table,
                             const McConfig& mc) {
  return estimate_views(p, table, {{p.scheme, p.pairing}}, mc)[0];
}

}  // namespace compnoma
