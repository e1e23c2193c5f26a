#pragma once

namespace compnoma {

// E1(x) = integral_x^inf e^(-t)/t dt for x > 0.  Throws std::domain_error
// for x <= 0.
double e1(double x);

// e^x * E1(x).  Stays representable where e1 alone underflows (x beyond ~700);
// this is the form every closed-form capacity must use, because the products
// it is evaluated at reach thousands at high SNR.
double exp_scaled_e1(double x);

namespace detail {

// power-series branch, used for x <= 1; returns unscaled E1(x)
double e1_series(double x);

// modified-Lentz continued fraction, used for x > 1; returns e^x * E1(x)
double e1_continued_fraction_scaled(double x);

}  // namespace detail

}  // namespace compnoma
