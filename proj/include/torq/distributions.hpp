#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace torq::dist {

enum class Law { sigma, sigma2, phi1 };
const char* law_name(Law law);
Law parse_law(const std::string& name);

struct Value {
  double value = 0.0;
  double error = 0.0;  // quadrature error estimate
};

struct QuadratureFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  double tol = 1e-10;  // relative quadrature tolerance
  double abs_tol = 1e-14;  // per panel, for values near zero
  double series_threshold = 0.3;  // |L| below which the Taylor route is used
  // same for F1; the 1/xi^3 weight of phi1 amplifies direct-route rounding near 0
  double f1_series_threshold = 1.0;
};

// Cumulative laws at rescaled distance r >= 0
Value sigma(double r, const Options& o = {});
Value sigma2(double r, const Options& o = {});
Value phi1(double r, const Options& o = {});
Value cdf(Law law, double r, const Options& o = {});
// sigma through the complex ray and I(L), as a cross-check of the real form
Value sigma_complex(double r, const Options& o = {});

// d/dr under the integral sign
Value density(Law law, double r, const Options& o = {});

// small-r expansions with the given number of terms
double small_r_expansion(Law law, double r, int terms);

struct Curve {
  Law law;
  std::vector<double> r, cdf, pdf, err;
};
Curve curve(Law law, double rmax, double step, bool with_density, const Options& o = {});

struct SmallCycles {
  double n_sigma = 0.0, n_sigma2 = 0.0;
};
SmallCycles small_cycle_scalings(int l, double n);

// least squares slope of log y against log x
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace torq::dist
