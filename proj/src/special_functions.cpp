#include "compnoma/special_functions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace compnoma {

namespace detail {

namespace {
constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
}

double e1_series(double x) {
  // E1(x) = -gamma - ln x + sum_{n>=1} (-1)^{n+1} x^n / (n * n!)
  double sum = 0.0;
  double term = 1.0;  // (-x)^n / n!
  for (int n = 1; n <= 64; ++n) {
    term *= -x / n;
    const double add = -term / n;
    sum += add;
    if (std::abs(add) <= 0.25 * std::numeric_limits<double>::epsilon() * std::abs(sum)) break;
  }
  return -kEulerGamma - std::log(x) + sum;
}

double e1_continued_fraction_scaled(double x) {
  // e^x E1(x) = 1/(x+1-) 1^2/(x+3-) 2^2/(x+5-) ..., evaluated by modified Lentz.
  // Needs ~90 iterations near x=1, a handful for large x.
  constexpr double tiny = 1e-300;
  double b = x + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double a = -static_cast<double>(i) * static_cast<double>(i);
    b += 2.0;
    d = b + a * d;
    if (std::abs(d) < tiny) d = tiny;
    c = b + a / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    h *= delta;
    if (std::abs(delta - 1.0) < std::numeric_limits<double>::epsilon()) break;
  }
  return h;
}

}  // namespace detail

namespace {

void check_domain(double x, const char* fn) {
  if (!(x > 0.0)) {
    throw std::domain_error(std::string(fn) + ": requires x > 0, got " +
                            std::to_string(x));
  }
}

}  // namespace

double e1(double x) {
  check_domain(x, "e1");
  if (x <= 1.0) return detail::e1_series(x);
  return std::exp(-x) * detail::e1_continued_fraction_scaled(x);
}

double exp_scaled_e1(double x) {
  check_domain(x, "exp_scaled_e1");
  if (x <= 1.0) return std::exp(x) * detail::e1_series(x);
  return detail::e1_continued_fraction_scaled(x);
}

}  // namespace compnoma
