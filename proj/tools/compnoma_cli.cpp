#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "compnoma/capacity_analytic.hpp"
#include "compnoma/config.hpp"
#include "compnoma/errors.hpp"
#include "compnoma/selfcheck.hpp"
#include "compnoma/validation.hpp"
#include "compnoma/version.hpp"

namespace {

using namespace compnoma;

// every flag funnels into the same key=value map the config file fills, so
// precedence is simply: defaults, then file, then command line
struct KeyedOptions {
  std::vector<std::pair<CLI::Option*, std::string>> bindings;
  std::vector<std::unique_ptr<std::string>> storage;

  CLI::Option* add(CLI::App* cmd, const std::string& flag, const std::string& key,
                   const std::string& help) {
    storage.push_back(std::make_unique<std::string>());
    CLI::Option* opt = cmd->add_option(flag, *storage.back(), help);
    bindings.push_back({opt, key});
    return opt;
  }

  void add_flag(CLI::App* cmd, const std::string& flag, const std::string& key,
                const std::string& help) {
    storage.push_back(std::make_unique<std::string>());
    std::string* slot = storage.back().get();
    CLI::Option* opt = cmd->add_flag_callback(
        flag, [slot] { *slot = "true"; }, help);
    bindings.push_back({opt, key});
  }

  void merge_into(ConfigMap& kv) const {
    for (const auto& [opt, key] : bindings) {
      if (opt->count() > 0) {
        const auto results = opt->results();
        kv[key] = results.empty() ? "true" : results.back();
      }
    }
  }
};

struct CommonArgs {
  std::string config_path;
  KeyedOptions keyed;
};

void add_param_options(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "key=value configuration file");
  args.keyed.add(cmd, "--preset", "preset", "cell layout: b2, b3, or a comma list");
  args.keyed.add(cmd, "--alpha", "alpha", "CCU power fraction");
  args.keyed.add(cmd, "--beta", "beta", "CEU power fraction (alpha = 1 - beta)");
  args.keyed.add(cmd, "--rho-db", "rho_db", "transmit SNR in dB");
  args.keyed.add(cmd, "--sigma2-eps", "sigma2_eps", "channel estimation error variance");
  args.keyed.add(cmd, "--csi", "csi", "perfect or imperfect");
  args.keyed.add(cmd, "--upsilon-db", "upsilon_db", "residual interference after SIC, dB");
  args.keyed.add_flag(cmd, "--ideal-sic", "ideal_sic", "zero out the SIC residue");
  args.keyed.add(cmd, "--scheme", "scheme", "noma, oma, or noma,oma");
  args.keyed.add(cmd, "--case", "case", "pairing case: 1, 2, or 1,2");
  args.keyed.add(cmd, "--method", "method", "analytic, monte-carlo, or both");
  args.keyed.add(cmd, "--samples", "samples", "Monte Carlo draws per estimate");
  args.keyed.add(cmd, "--seed", "seed", "RNG seed (default: COMPNOMA_SEED or 12345)");
  args.keyed.add(cmd, "--chunk", "chunk", "draws per deterministic accumulation block");
  args.keyed.add(cmd, "--threads", "threads", "worker threads (0 = hardware)");
  args.keyed.add(cmd, "--v", "v", "path-loss exponent");
  args.keyed.add(cmd, "--out", "out", "CSV output path");
}

RunConfig resolve(const CommonArgs& args) {
  ConfigMap kv;
  if (!args.config_path.empty()) kv = parse_config_file(args.config_path);
  args.keyed.merge_into(kv);
  RunConfig rc;
  apply_config(rc, kv);
  return rc;
}

std::string fmt_samples(std::int64_t n) {
  return n > 0 ? std::to_string(n) : std::string("-");
}

void print_rows(const std::vector<SweepRow>& rows) {
  std::printf("%-6s %-10s %-8s %-12s %-8s %-18s %-12s %s\n", "preset", "scheme",
              "case", "method", "user", "capacity[b/s/Hz]", "stderr", "samples");
  for (const auto& r : rows) {
    std::printf("%-6s %-10s %-8s %-12s %-8s %-18.6f %-12s %s\n", r.preset.c_str(),
                to_string(r.scheme).c_str(), r.case_tag.c_str(),
                to_string(r.method).c_str(), r.user.c_str(), r.capacity_bits,
                r.samples > 0 ? (std::to_string(r.stderr_).substr(0, 8)).c_str() : "-",
                fmt_samples(r.samples).c_str());
  }
}

int cmd_capacity(const CommonArgs& args) {
  RunConfig rc = resolve(args);
  validate(rc.spec.fixed);

  // a single parameter point expressed as a one-value sweep along rho
  rc.spec.axis = Axis::rho_dB;
  rc.spec.values = {linear_to_db(rc.spec.fixed.rho)};

  const std::vector<SweepRow> rows = run_sweep(rc.spec);
  std::printf("alpha %.4g  beta %.4g  sigma2_eps %.4g  upsilon %.4g dB  seed %llu\n",
              rc.spec.fixed.alpha, rc.spec.fixed.beta, rc.spec.fixed.sigma2_eps,
              linear_to_db(rc.spec.fixed.upsilon),
              static_cast<unsigned long long>(rc.spec.mc.seed));
  print_rows(rows);
  if (!rc.out.empty()) {
    write_csv(rc.out, rows);
    std::printf("wrote %zu rows to %s\n", rows.size(), rc.out.c_str());
  }
  return 0;
}

int cmd_sweep(const CommonArgs& args) {
  ConfigMap kv;
  if (!args.config_path.empty()) kv = parse_config_file(args.config_path);
  args.keyed.merge_into(kv);

  // figure bundles pin their own axis, values, schemes, and cases
  std::string fig;
  if (const auto it = kv.find("preset");
      it != kv.end() && it->second.rfind("fig", 0) == 0) {
    fig = it->second;
    kv.erase(it);
    if (kv.count("axis") || kv.count("values")) {
      throw ConfigError("figure preset " + fig + " pins axis and values");
    }
  }

  RunConfig rc;
  apply_config(rc, kv);
  if (rc.out.empty()) throw ConfigError("sweep needs an output path (--out)");

  std::vector<SweepRow> rows;
  if (!fig.empty()) {
    rows = run_sweeps(figure_sweeps(fig, rc.spec.fixed, rc.spec.mc));
  } else {
    if (rc.spec.values.empty()) {
      throw ConfigError("sweep needs --axis and --values (or a figure preset)");
    }
    rows = run_sweep(rc.spec);
  }
  write_csv(rc.out, rows);
  std::printf("wrote %zu rows to %s\n", rows.size(), rc.out.c_str());
  return 0;
}

int cmd_validate(std::int64_t samples, std::uint64_t seed, int threads,
                 double corrupt_upsilon) {
  McConfig mc;
  mc.samples = samples;
  mc.seed = seed;
  mc.threads = threads;
  const ValidationReport report = run_validation(mc, corrupt_upsilon);

  std::printf("%-6s %-7s %-10s %-10s %-8s %-8s %12s %12s %10s %8s\n", "preset",
              "rho_dB", "sigma2eps", "scheme", "case", "user", "analytic", "mc",
              "stderr", "ratio");
  for (const auto& r : report.rows) {
    std::printf("%-6s %-7.0f %-10.4g %-10s %-8s %-8s %12.6f %12.6f %10.2e %8.2f\n",
                r.preset.c_str(), r.rho_dB, r.sigma2_eps, to_string(r.scheme).c_str(),
                r.case_tag.c_str(), r.user.c_str(), r.analytic, r.mc_mean, r.mc_stderr,
                r.ratio);
  }
  std::printf("%zu comparisons, %lld samples each, max ratio %.2f -> %s\n",
              report.rows.size(), static_cast<long long>(report.samples),
              report.max_ratio, report.pass ? "PASS" : "FAIL");
  return report.pass ? 0 : 1;
}

int cmd_pdf_check(int min_size, int max_size, int seeds, std::int64_t ks_samples,
                  std::uint64_t seed) {
  bool all_pass = true;

  // the four rate families the capacity pipeline actually feeds in, from both
  // built-in layouts at default parameters
  std::printf("built-in rate sets:\n");
  std::printf("%-28s %-5s %12s %12s %12s %10s %10s %s\n", "set", "size", "norm_err",
              "mean_rel", "conv_err", "ks", "ks_crit", "ok");
  SystemParams p;
  const std::vector<std::pair<std::string, CellLayout>> layouts = {
      {"b2", preset_b2()}, {"b3", preset_b3()}};
  for (const auto& [name, layout] : layouts) {
    p.B = layout.num_bs();
    const LinkTable table = build_link_table(distances(layout), p.v, 0.01);
    std::vector<std::pair<std::string, RateSet>> sets;
    sets.push_back({name + " CEU numerator",
                    rates_ceu(table, p.alpha, p.rho, RateKind::CEU_NUM)});
    sets.push_back({name + " CEU denominator",
                    rates_ceu(table, p.alpha, p.rho, RateKind::CEU_DEN)});
    sets.push_back({name + " CCU-1 full",
                    rates_ccu(table, 0, p.alpha, p.rho, true)});
    if (p.B > 1) {
      sets.push_back({name + " CCU-1 interference",
                      rates_ccu(table, 0, p.alpha, p.rho, false)});
    }
    for (const auto& [label, rs] : sets) {
      const PdfCheckRow row = check_rate_set(rs, ks_samples, seed);
      all_pass = all_pass && row.pass;
      std::printf("%-28s %-5d %12.2e %12.2e %12.2e %10.4f %10.4f %s\n", label.c_str(),
                  row.size, row.normalization_err, row.mean_rel_err,
                  row.conv_max_abs_err, row.ks_stat, row.ks_crit,
                  row.pass ? "yes" : "NO");
    }
  }

  std::printf("random rate sets (sizes %d..%d, %d seeds each):\n", min_size, max_size,
              seeds);
  const PdfCheckReport report = run_pdf_checks(min_size, max_size, seeds, ks_samples, seed);
  std::printf("  %zu rate sets checked, %d KS stats above the 1%% critical value "
              "(allowed for this run: %d), hard bounds %s\n",
              report.rows.size(), report.ks_exceedances, report.ks_allowed,
              report.pass ? "met" : "VIOLATED");
  all_pass = all_pass && report.pass;
  std::printf("pdf-check: %s\n", all_pass ? "PASS" : "FAIL");
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CoMP-NOMA downlink ergodic-capacity calculator"};
  app.set_version_flag("--version", std::string("compnoma ") + compnoma::kVersion);
  app.require_subcommand(1);

  CommonArgs cap_args;
  CLI::App* cap = app.add_subcommand(
      "capacity", "per-user and sum capacities at one parameter point");
  add_param_options(cap, cap_args);

  CommonArgs sweep_args;
  CLI::App* sw = app.add_subcommand("sweep", "grid evaluation written as CSV");
  add_param_options(sw, sweep_args);
  sweep_args.keyed.add(sw, "--axis", "axis", "rho_db, sigma2_eps, or beta");
  sweep_args.keyed.add(sw, "--values", "values", "comma list or lo:hi:step");

  std::int64_t val_samples = 1'000'000;
  std::uint64_t val_seed = compnoma::default_seed();
  int val_threads = 0;
  double val_corrupt = 1.0;
  CLI::App* val = app.add_subcommand(
      "validate", "closed forms against an independent simulation, full grid");
  val->add_option("--samples", val_samples, "draws per estimate")
      ->check(CLI::Range(std::int64_t{1000}, std::int64_t{1} << 40));
  val->add_option("--seed", val_seed, "RNG seed");
  val->add_option("--threads", val_threads, "worker threads (0 = hardware)");
  val->add_option("--corrupt-upsilon", val_corrupt,
                  "scale the SIC residue on the analytic side only (test hook)");

  int pdf_min = 1, pdf_max = 6, pdf_seeds = 30;
  std::int64_t pdf_ks_samples = 100'000;
  std::uint64_t pdf_seed = compnoma::default_seed();
  CLI::App* pdf = app.add_subcommand(
      "pdf-check", "density checks for the sum-of-exponentials machinery");
  pdf->add_option("--min-size", pdf_min, "smallest rate count")->check(CLI::Range(1, 15));
  pdf->add_option("--max-size", pdf_max, "largest rate count")->check(CLI::Range(1, 15));
  pdf->add_option("--seeds", pdf_seeds, "random rate sets per size")
      ->check(CLI::Range(1, 10'000));
  pdf->add_option("--ks-samples", pdf_ks_samples, "draws per KS test")
      ->check(CLI::Range(std::int64_t{100}, std::int64_t{100'000'000}));
  pdf->add_option("--seed", pdf_seed, "RNG seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cap->parsed()) return cmd_capacity(cap_args);
    if (sw->parsed()) return cmd_sweep(sweep_args);
    if (val->parsed()) return cmd_validate(val_samples, val_seed, val_threads, val_corrupt);
    if (pdf->parsed())
      return cmd_pdf_check(pdf_min, pdf_max, pdf_seeds, pdf_ks_samples, pdf_seed);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
