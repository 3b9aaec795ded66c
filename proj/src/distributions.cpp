#include "torq/distributions.hpp"

#include "torq/scaling.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>

namespace torq::dist {

using scaling::cplx;

const char* law_name(Law law) {
  switch (law) {
    case Law::sigma: return "sigma";
    case Law::sigma2: return "sigma2";
    case Law::phi1: return "phi1";
  }
  return "?";
}

Law parse_law(const std::string& name) {
  if (name == "sigma") return Law::sigma;
  if (name == "sigma2") return Law::sigma2;
  if (name == "phi1") return Law::phi1;
  throw std::invalid_argument("unknown law: " + name);
}

namespace {

const double kSqrtPi = std::sqrt(M_PI);
const cplx kRay = std::polar(1.0, -M_PI / 4);  // sqrt(-i) with positive real part

// sin(k pi / 4) without rounding noise
double sin_quarter(int k) {
  static const double s = std::sqrt(0.5);
  static const double table[8] = {0.0, s, 1.0, s, 0.0, -s, -1.0, -s};
  return table[((k % 8) + 8) % 8];
}

// Im f(L) / xi^p along L = e^{-i pi/4} sqrt(xi) r from the Taylor coefficients of f;
// with derivative = true, d/dr of the same.
double im_series(scaling::Series which, double r, double xi, double p, bool derivative) {
  const auto& c = scaling::taylor(which);
  const double scale = which == scaling::Series::H ? std::sqrt(6.0) : 1.0;
  const double br = scaling::kB * r, sq = std::sqrt(xi);
  double sum = 0.0;
  double pw = 1.0;  // (b r sqrt(xi))^k
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (k > 0) pw *= br * sq;
    if (c[k] == 0.0) continue;
    const double s = -sin_quarter(static_cast<int>(k));
    if (s == 0.0) continue;
    double term = c[k] * pw * std::pow(xi, -p) * s;
    if (derivative) term *= static_cast<double>(k) / r;
    sum += term;
  }
  return sum * scale;
}

Value integrate_xi(const std::function<double(double)>& f, const Options& o, const char* what) {
  auto g = [&](double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    const double om = 1.0 - t;
    const double xi = t * t / om;
    if (xi > 40.0) return 0.0;
    return f(xi) * t * (2.0 - t) / (om * om);
  };
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  double err = 0.0, l1 = 0.0;
  double total = 0.0, total_err = 0.0;
  const double cuts[] = {0.0, 0.5, 0.75, 0.9, 1.0};
  for (int i = 0; i < 4; ++i) {
    // a single Kronrod pass sets the scale for the absolute floor
    const double rough = GK::integrate(g, cuts[i], cuts[i + 1], 0, 0.0, &err, &l1);
    const double rel = std::max(o.tol, o.abs_tol / std::max(std::abs(rough), 1e-300));
    total += GK::integrate(g, cuts[i], cuts[i + 1], 15, rel, &err, &l1);
    total_err += err;
  }
  if (!std::isfinite(total)) throw QuadratureFailure(std::string(what) + ": non-finite quadrature result");
  if (total_err > 1e-6 && total_err > 1e3 * std::max(o.tol * std::abs(total), o.abs_tol))
    throw QuadratureFailure(std::string(what) + ": tolerance not reached, estimate " + std::to_string(total) +
                            " +- " + std::to_string(total_err));
  return {total, total_err};
}

// sin a sinh a (sinh^2 a - sin^2 a) / (cosh a + cos a)^4
double sigma_ratio(double a) {
  if (a <= 0.0) return 0.0;
  const double sn = std::sin(a), cs = std::cos(a);
  if (a > 20.0) {
    const double E = std::exp(-a), E2 = E * E;
    const double den = std::pow(1.0 + E2 + 2.0 * E * cs, 4);
    const double om = 1.0 - E2;
    return (2.0 * E * sn * om * om * om - 8.0 * E2 * E * om * sn * sn * sn) / den;
  }
  const double sh = std::sinh(a), ch = std::cosh(a);
  double diff;  // sinh a - sin a
  if (a < 1.0) {
    // 2 (a^3/3! + a^7/7! + ...)
    double term = a * a * a / 6.0, s = 0.0;
    for (int k = 3; term > 1e-18 * s || s == 0.0; k += 4) {
      s += term;
      term *= a * a * a * a / ((k + 1.0) * (k + 2.0) * (k + 3.0) * (k + 4.0));
    }
    diff = 2.0 * s;
  } else {
    diff = sh - sn;
  }
  return sn * sh * diff * (sh + sn) / std::pow(ch + cs, 4);
}

// integrand pieces along the ray: Im f(L)/xi^p (or its r-derivative)
double ray_im(scaling::Series which, double r, double xi, double p, bool derivative, const Options& o) {
  const double modL = std::sqrt(xi) * r;
  const double cut = which == scaling::Series::F1 ? o.f1_series_threshold : o.series_threshold;
  if (modL < cut) return im_series(which, r, xi, p, derivative);
  const cplx L = kRay * std::sqrt(xi) * r;
  cplx v;
  switch (which) {
    case scaling::Series::I: v = derivative ? scaling::Iprime(L) * L / r : scaling::I(L); break;
    case scaling::Series::J:
      v = derivative ? scaling::Jprime(L, o.series_threshold) * L / r : scaling::J(L, o.series_threshold);
      break;
    case scaling::Series::F1:
      v = derivative ? scaling::F1prime(L, cut) * L / r : scaling::F1(L, cut);
      break;
    case scaling::Series::H: v = scaling::H(L, o.series_threshold); break;
  }
  return v.imag() * std::pow(xi, -p);
}

}  // namespace

Value sigma(double r, const Options& o) {
  if (r < 0) throw std::invalid_argument("r must be >= 0");
  if (r == 0) return {};
  auto f = [&](double xi) {
    return 8.0 / M_PI * sigma_ratio(std::sqrt(3.0 * xi) * r) * std::exp(-xi * xi) / xi;
  };
  return integrate_xi(f, o, "sigma");
}

Value sigma_complex(double r, const Options& o) {
  if (r < 0) throw std::invalid_argument("r must be >= 0");
  if (r == 0) return {};
  auto f = [&](double xi) { return -96.0 / M_PI * 2.0 * ray_im(scaling::Series::I, r, xi, 1.0, false, o) * std::exp(-xi * xi); };
  return integrate_xi(f, o, "sigma (complex)");
}

Value sigma2(double r, const Options& o) {
  if (r < 0) throw std::invalid_argument("r must be >= 0");
  if (r == 0) return {};
  auto f = [&](double xi) { return -96.0 / M_PI * 2.0 * ray_im(scaling::Series::J, r, xi, 1.0, false, o) * std::exp(-xi * xi); };
  return integrate_xi(f, o, "sigma2");
}

Value phi1(double r, const Options& o) {
  if (r < 0) throw std::invalid_argument("r must be >= 0");
  if (r == 0) return {};
  auto f = [&](double xi) { return 96.0 / M_PI * 2.0 * ray_im(scaling::Series::F1, r, xi, 3.0, false, o) * std::exp(-xi * xi); };
  Value v = integrate_xi(f, o, "phi1");
  v.value += 3.0 * std::pow(r, 4) / 28.0;
  return v;
}

Value cdf(Law law, double r, const Options& o) {
  switch (law) {
    case Law::sigma: return sigma(r, o);
    case Law::sigma2: return sigma2(r, o);
    case Law::phi1: return phi1(r, o);
  }
  throw std::invalid_argument("unknown law");
}

Value density(Law law, double r, const Options& o) {
  if (r <= 0) return {};
  switch (law) {
    case Law::sigma: {
      auto f = [&](double xi) { return -96.0 / M_PI * 2.0 * ray_im(scaling::Series::I, r, xi, 1.0, true, o) * std::exp(-xi * xi); };
      return integrate_xi(f, o, "sigma density");
    }
    case Law::sigma2: {
      auto f = [&](double xi) { return -96.0 / M_PI * 2.0 * ray_im(scaling::Series::J, r, xi, 1.0, true, o) * std::exp(-xi * xi); };
      return integrate_xi(f, o, "sigma2 density");
    }
    case Law::phi1: {
      auto f = [&](double xi) { return 96.0 / M_PI * 2.0 * ray_im(scaling::Series::F1, r, xi, 3.0, true, o) * std::exp(-xi * xi); };
      Value v = integrate_xi(f, o, "phi1 density");
      v.value += 12.0 * std::pow(r, 3) / 28.0;
      return v;
    }
  }
  throw std::invalid_argument("unknown law");
}

double small_r_expansion(Law law, double r, int terms) {
  std::vector<double> t;
  switch (law) {
    case Law::sigma:
      t = {9.0 * std::pow(r, 6) / (4.0 * kSqrtPi), -1431.0 * std::pow(r, 10) / (280.0 * kSqrtPi)};
      break;
    case Law::sigma2: t = {11043.0 * std::pow(r, 10) / (5096.0 * kSqrtPi)}; break;
    case Law::phi1:
      t = {3.0 * std::pow(r, 4) / 28.0, -15.0 * std::pow(r, 10) / (1456.0 * kSqrtPi),
           1242135.0 * std::pow(r, 14) / (506970464.0 * kSqrtPi)};
      break;
  }
  if (terms < 0 || terms > static_cast<int>(t.size())) throw std::out_of_range("too many expansion terms requested");
  double s = 0.0;
  for (int i = 0; i < terms; ++i) s += t[i];
  return s;
}

Curve curve(Law law, double rmax, double step, bool with_density, const Options& o) {
  if (!(step > 0) || !(rmax >= 0)) throw std::invalid_argument("need step > 0 and rmax >= 0");
  Curve c{law, {}, {}, {}, {}};
  const int n = static_cast<int>(std::floor(rmax / step + 1e-9));
  for (int i = 0; i <= n; ++i) {
    const double r = i * step;
    const Value v = cdf(law, r, o);
    c.r.push_back(r);
    c.cdf.push_back(v.value);
    c.err.push_back(v.error);
    c.pdf.push_back(with_density ? density(law, r, o).value : 0.0);
  }
  return c;
}

SmallCycles small_cycle_scalings(int l, double n) {
  const double r = l / std::pow(n, 0.25);
  return {n * sigma(r).value, n * sigma2(r).value};
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("loglog_slope needs two equal-length samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace torq::dist
