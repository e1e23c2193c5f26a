#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "compnoma/hypoexp.hpp"

namespace compnoma {

// Adaptive Simpson quadrature on [a, b] to absolute tolerance tol.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol, int max_depth = 60);

// sup_x |F_empirical(x) - F(x)|; sorts the sample internally.
double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf);

// Asymptotic 1% critical value, 1.628 / sqrt(n).
double ks_critical_1pct(std::int64_t n);

// Density of the sum of independent Exp(rate_i) variables by direct numerical
// convolution of the exponential densities.  Supports 1..3 rates; this is the
// oracle route, deliberately independent of the partial-fraction form.
double convolution_pdf(const Eigen::VectorXd& rates, double x, double tol = 1e-8);

// Distribution self-checks on random distinct rate sets: quadrature
// normalization, mean identity, convolution-oracle match (sizes 1..3), and a
// KS test of summed exponential draws against the closed-form CDF.
struct PdfCheckRow {
  int size = 0;
  std::uint64_t seed = 0;
  double normalization_err = 0;  // |integral of pdf - 1|
  double mean_rel_err = 0;       // relative error of integral of x*pdf vs sum 1/k
  double conv_max_abs_err = 0;   // 0 for sizes without a convolution oracle
  double ks_stat = 0;
  double ks_crit = 0;
  bool pass = false;
};

struct PdfCheckReport {
  std::vector<PdfCheckRow> rows;
  int ks_exceedances = 0;  // KS is a 1%-level test; ~1% false alarms are expected
  int ks_allowed = 0;      // binomial bound the exceedance count is held to
  bool pass = false;
};

// All checks for one rate set (convolution only when the set has <= 3 rates).
PdfCheckRow check_rate_set(const RateSet& rs, std::int64_t ks_samples,
                           std::uint64_t seed);

// Runs the checks for sizes size_from..size_to with n_seeds random rate sets
// each (rates log-uniform in [0.1, 10]).  Deterministic checks must pass on
// every set; the KS exceedance count must stay within binomial bounds for the
// 1% level, with no statistic above twice the critical value.
PdfCheckReport run_pdf_checks(int size_from, int size_to, int n_seeds,
                              std::int64_t ks_samples, std::uint64_t seed0);

}  // namespace compnoma
