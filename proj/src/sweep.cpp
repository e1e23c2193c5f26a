#include "compnoma/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "compnoma/capacity_analytic.hpp"
#include "compnoma/errors.hpp"
#include "compnoma/version.hpp"

namespace compnoma {

std::string to_string(Axis a) {
  switch (a) {
    case Axis::rho_dB: return "rho_dB";
    case Axis::sigma2_eps: return "sigma2_eps";
    case Axis::beta: return "beta";
  }
  return "?";
}

std::string to_string(Scheme s) {
  return s == Scheme::COMP_NOMA ? "COMP_NOMA" : "COMP_OMA";
}

std::string to_string(PairingCase c) {
  return c == PairingCase::CASE_I ? "CASE_I" : "CASE_II";
}

std::string to_string(Method m) {
  return m == Method::analytic ? "analytic" : "monte-carlo";
}

Axis axis_from_string(const std::string& s) {
  if (s == "rho_dB" || s == "rho_db" || s == "rho") return Axis::rho_dB;
  if (s == "sigma2_eps") return Axis::sigma2_eps;
  if (s == "beta") return Axis::beta;
  throw ConfigError("unknown axis: " + s + " (expected rho_db, sigma2_eps, or beta)");
}

Scheme scheme_from_string(const std::string& s) {
  if (s == "COMP_NOMA" || s == "noma") return Scheme::COMP_NOMA;
  if (s == "COMP_OMA" || s == "oma") return Scheme::COMP_OMA;
  throw ConfigError("unknown scheme: " + s + " (expected noma or oma)");
}

PairingCase case_from_string(const std::string& s) {
  if (s == "CASE_I" || s == "1" || s == "I" || s == "i") return PairingCase::CASE_I;
  if (s == "CASE_II" || s == "2" || s == "II" || s == "ii") return PairingCase::CASE_II;
  throw ConfigError("unknown pairing case: " + s + " (expected 1 or 2)");
}

Method method_from_string(const std::string& s) {
  if (s == "analytic") return Method::analytic;
  if (s == "monte-carlo" || s == "mc" || s == "monte_carlo") return Method::monte_carlo;
  throw ConfigError("unknown method: " + s + " (expected analytic or monte-carlo)");
}

namespace {

CellLayout resolve_layout(const SweepSpec& spec, const std::string& preset) {
  if (preset == "b2") return preset_b2();
  if (preset == "b3") return preset_b3();
  if (preset == "custom") {
    if (!spec.layout) throw ConfigError("custom preset requires an explicit layout");
    return *spec.layout;
  }
  throw ConfigError("unknown preset: " + preset);
}

void validate_spec(const SweepSpec& spec) {
  if (spec.values.empty()) throw ConfigError("sweep values must be nonempty");
  for (std::size_t t = 1; t < spec.values.size(); ++t) {
    if (!(spec.values[t] > spec.values[t - 1])) {
      throw ConfigError("sweep values must be strictly increasing");
    }
  }
  if (spec.presets.empty()) throw ConfigError("sweep needs at least one preset");
  if (spec.schemes.empty()) throw ConfigError("sweep needs at least one scheme");
  if (spec.cases.empty()) throw ConfigError("sweep needs at least one pairing case");
  if (spec.methods.empty()) throw ConfigError("sweep needs at least one method");
}

SystemParams params_at(const SweepSpec& spec, double value, int B) {
  SystemParams p = spec.fixed;
  p.B = B;
  switch (spec.axis) {
    case Axis::rho_dB: p.rho = db_to_linear(value); break;
    case Axis::sigma2_eps: p.sigma2_eps = value; break;
    case Axis::beta: set_beta(p, value); break;
  }
  return p;
}

struct View {
  Scheme scheme;
  PairingCase pairing;
  std::string case_tag;  // "-" for OMA
};

std::vector<View> grid_views(const SweepSpec& spec) {
  std::vector<View> v;
  for (const Scheme sch : spec.schemes) {
    if (sch == Scheme::COMP_NOMA) {
      for (const PairingCase c : spec.cases) v.push_back({sch, c, to_string(c)});
    } else {
      // the orthogonal baseline has no pairing distinction; emit it once
      v.push_back({sch, PairingCase::CASE_I, "-"});
    }
  }
  return v;
}

std::string user_label(int j, int B) {
  if (j < B) return "CCU-" + std::to_string(j + 1);
  if (j == B) return "CEU";
  if (j == B + 1) return "SUM";
  return "CCU-SUM";
}

// rows for one (preset, value) grid point, in fixed view/method/user order
std::vector<SweepRow> grid_point_rows(const SweepSpec& spec, const std::string& preset,
                                      double value) {
  const CellLayout layout = resolve_layout(spec, preset);
  const DistanceTable dist = distances(layout);
  SystemParams base = params_at(spec, value, layout.num_bs());
  const LinkTable table = build_link_table(dist, base.v, base.sigma2_eps);
  const int B = base.B;

  const std::vector<View> views = grid_views(spec);
  const bool want_mc =
      std::find(spec.methods.begin(), spec.methods.end(), Method::monte_carlo) !=
      spec.methods.end();

  std::vector<GroupEstimate> mc_results;
  if (want_mc) {
    std::vector<ViewSpec> vs;
    for (const View& v : views) vs.push_back({v.scheme, v.pairing});
    McConfig mc = spec.mc;
    mc.threads = 1;  // the sweep pool owns the parallelism
    mc_results = estimate_views(base, table, vs, mc);
  }

  SweepRow proto;
  proto.preset = preset;
  proto.B = B;
  proto.rho_dB = spec.axis == Axis::rho_dB ? value : linear_to_db(base.rho);
  proto.sigma2_eps = base.sigma2_eps;
  proto.alpha = base.alpha;
  proto.beta = base.beta;
  proto.upsilon_dB = linear_to_db(base.upsilon);
  proto.seed = spec.mc.seed;

  std::vector<SweepRow> rows;
  for (std::size_t vi = 0; vi < views.size(); ++vi) {
    SystemParams p = base;
    p.scheme = views[vi].scheme;
    p.pairing = views[vi].pairing;
    for (const Method method : spec.methods) {
      SweepRow r = proto;
      r.scheme = p.scheme;
      r.case_tag = views[vi].case_tag;
      r.method = method;
      if (method == Method::analytic) {
        const GroupCapacity g = group_capacity(p, table);
        for (int u = 0; u < B + 3; ++u) {
          r.user = user_label(u, B);
          r.capacity_bits = u < B ? g.ccu[u]
                            : u == B ? g.ceu
                            : u == B + 1 ? g.sum
                                         : g.ccu.sum();
          r.stderr_ = 0.0;
          r.samples = 0;
          rows.push_back(r);
        }
      } else {
        const GroupEstimate& ge = mc_results[vi];
        for (int u = 0; u < B + 3; ++u) {
          r.user = user_label(u, B);
          const CapacityEstimate& e = u < B ? ge.ccu[u]
                                      : u == B ? ge.ceu
                                      : u == B + 1 ? ge.sum
                                                   : ge.ccu_sum;
          r.capacity_bits = e.mean;
          r.stderr_ = e.stderr_;
          r.samples = e.samples;
          rows.push_back(r);
        }
      }
    }
  }
  return rows;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  validate_spec(spec);

  struct Job {
    std::string preset;
    double value;
  };
  std::vector<Job> jobs;
  for (const auto& preset : spec.presets)
    for (const double v : spec.values) jobs.push_back({preset, v});

  std::vector<std::vector<SweepRow>> results(jobs.size());
  std::vector<std::string> failures(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= jobs.size()) return;
      try {
        results[t] = grid_point_rows(spec, jobs[t].preset, jobs[t].value);
      } catch (const std::exception& e) {
        failures[t] = e.what();
      }
    }
  };

  unsigned n_threads = std::thread::hardware_concurrency();
  if (n_threads == 0) n_threads = 1;
  n_threads = std::min<std::size_t>(n_threads, jobs.size());
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  // the whole run aborts on any failing grid point; no partial output
  for (std::size_t t = 0; t < jobs.size(); ++t) {
    if (!failures[t].empty()) {
      throw ConfigError("grid point (preset " + jobs[t].preset + ", " +
                        to_string(spec.axis) + " = " + std::to_string(jobs[t].value) +
                        ") failed: " + failures[t]);
    }
  }

  std::vector<SweepRow> rows;
  for (auto& r : results) rows.insert(rows.end(), r.begin(), r.end());
  return rows;
}

std::vector<SweepRow> run_sweeps(const std::vector<SweepSpec>& specs) {
  std::vector<SweepRow> rows;
  for (const auto& spec : specs) {
    auto part = run_sweep(spec);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  return rows;
}

std::vector<SweepSpec> figure_sweeps(const std::string& name, const SystemParams& base,
                                     const McConfig& mc) {
  auto rho_axis = [] {
    std::vector<double> v;
    for (int r = 0; r <= 30; r += 5) v.push_back(r);
    return v;
  };

  SweepSpec proto;
  proto.presets = {"b2", "b3"};
  proto.fixed = base;
  proto.methods = {Method::analytic, Method::monte_carlo};
  proto.mc = mc;

  std::vector<SweepSpec> out;
  if (name == "fig4") {
    // sum capacity vs SNR: NOMA (both pairing cases) against OMA, perfect CSI
    // and a small estimation error
    for (const double s2 : {0.0, 0.001}) {
      SweepSpec s = proto;
      s.axis = Axis::rho_dB;
      s.values = rho_axis();
      s.fixed.sigma2_eps = s2;
      s.schemes = {Scheme::COMP_NOMA, Scheme::COMP_OMA};
      s.cases = {PairingCase::CASE_I, PairingCase::CASE_II};
      out.push_back(std::move(s));
    }
  } else if (name == "fig5") {
    // NOMA sum capacity vs SNR across estimation-error levels
    for (const double s2 : {0.0, 0.01, 0.05}) {
      SweepSpec s = proto;
      s.axis = Axis::rho_dB;
      s.values = rho_axis();
      s.fixed.sigma2_eps = s2;
      out.push_back(std::move(s));
    }
  } else if (name == "fig6") {
    // CCU subtotal vs estimation error at 20 dB, NOMA against OMA
    SweepSpec s = proto;
    s.axis = Axis::sigma2_eps;
    s.values = {0.0, 0.005, 0.01, 0.02, 0.03, 0.04, 0.05};
    s.fixed.rho = db_to_linear(20.0);
    s.schemes = {Scheme::COMP_NOMA, Scheme::COMP_OMA};
    out.push_back(std::move(s));
  } else if (name == "fig7") {
    // per-user capacities vs estimation error at 20 dB
    SweepSpec s = proto;
    s.axis = Axis::sigma2_eps;
    s.values = {0.0, 0.001, 0.005, 0.01, 0.02, 0.03, 0.04, 0.05};
    s.fixed.rho = db_to_linear(20.0);
    out.push_back(std::move(s));
  } else if (name == "fig8") {
    // per-user capacities vs the CEU power fraction at 20 dB
    for (const double s2 : {0.0, 0.05}) {
      SweepSpec s = proto;
      s.axis = Axis::beta;
      for (int t = 0; t <= 18; ++t) s.values.push_back(0.5 + 0.025 * t);
      s.fixed.rho = db_to_linear(20.0);
      s.fixed.sigma2_eps = s2;
      out.push_back(std::move(s));
    }
  } else {
    throw ConfigError("unknown figure preset: " + name + " (expected fig4..fig8)");
  }
  return out;
}

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

void write_csv(const std::string& path, const std::vector<SweepRow>& rows) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path tmp = target.string() + ".tmp";

  std::int64_t samples = 0;
  std::uint64_t seed = 0;
  for (const auto& r : rows) {
    if (r.samples > 0) {
      samples = r.samples;
      seed = r.seed;
      break;
    }
    seed = r.seed;
  }

  {
    std::ofstream out(tmp);
    if (!out) throw ConfigError("cannot open " + tmp.string() + " for writing");
    out << "# compnoma " << kVersion << " seed=" << seed << " samples=" << samples
        << "\n";
    out << csv_header() << "\n";
    for (const auto& r : rows) {
      out << r.preset << ',' << to_string(r.scheme) << ',' << r.case_tag << ','
          << to_string(r.method) << ',' << r.B << ',' << fmt(r.rho_dB) << ','
          << fmt(r.sigma2_eps) << ',' << fmt(r.alpha) << ',' << fmt(r.beta) << ','
          << fmt(r.upsilon_dB) << ',' << r.user << ',' << fmt(r.capacity_bits) << ','
          << fmt(r.stderr_) << ',' << r.samples << ',' << r.seed << "\n";
    }
    if (!out.good()) {
      out.close();
      fs::remove(tmp);
      throw ConfigError("write failed for " + tmp.string());
    }
  }
  fs::rename(tmp, target);
}

std::vector<SweepRow> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);

  std::vector<SweepRow> rows;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != csv_header()) throw ConfigError("unexpected CSV header in " + path);
      header_seen = true;
      continue;
    }
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) f.push_back(field);
    if (f.size() != 15) throw ConfigError("malformed CSV row: " + line);

    SweepRow r;
    r.preset = f[0];
    r.scheme = scheme_from_string(f[1]);
    r.case_tag = f[2];
    r.method = method_from_string(f[3]);
    r.B = std::stoi(f[4]);
    r.rho_dB = std::strtod(f[5].c_str(), nullptr);
    r.sigma2_eps = std::strtod(f[6].c_str(), nullptr);
    r.alpha = std::strtod(f[7].c_str(), nullptr);
    r.beta = std::strtod(f[8].c_str(), nullptr);
    r.upsilon_dB = std::strtod(f[9].c_str(), nullptr);
    r.user = f[10];
    r.capacity_bits = std::strtod(f[11].c_str(), nullptr);
    r.stderr_ = std::strtod(f[12].c_str(), nullptr);
    r.samples = std::stoll(f[13]);
    r.seed = std::stoull(f[14]);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace compnoma
