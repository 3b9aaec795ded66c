#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace torq::scaling {

using cplx = std::complex<double>;

// Thrown at L = 0 where F and C blow up.
struct SingularInput : std::domain_error {
  using std::domain_error::domain_error;
};

// Below this |L| the functions with cancellations switch to Taylor series.
inline constexpr double kSeriesThreshold = 0.3;

// sqrt(3/2): every scaling function is a function of u = kB * L
inline constexpr double kB = 1.2247448713915890491;

cplx F(cplx L);
cplx Fprime(cplx L);
cplx Fsecond(cplx L);
cplx C(cplx L);
cplx H(cplx L, double threshold = kSeriesThreshold);
cplx I(cplx L);
cplx Iprime(cplx L);
cplx J(cplx L, double threshold = kSeriesThreshold);
cplx Jprime(cplx L, double threshold = kSeriesThreshold);

cplx A0(cplx L);
cplx A1(cplx L);
cplx A2(cplx L);
cplx alpha0(cplx L);
cplx alpha1(cplx L);
cplx M(cplx L);
cplx Mprime(cplx L);
cplx Msecond(cplx L);
// A0 + L A1 + L^2 A2 away from 0, Taylor series near 0
cplx F1(cplx L, double threshold = kSeriesThreshold);
cplx F1prime(cplx L, double threshold = kSeriesThreshold);
// explicit A-form, no fallback (loses accuracy as L -> 0)
cplx F1_direct(cplx L);
cplx J_direct(cplx L);
cplx H_direct(cplx L);

double Ctilde(double L1, double L2);
double rho(double L1, double L2);
// both points on one ray from the origin; min taken by modulus
cplx rho(cplx L1, cplx L2);

// Taylor coefficients in u = kB * L, index = power of u
enum class Series { I, J, H, F1 };
const std::vector<double>& taylor(Series which);
// exact coefficient as "p/q"
std::string taylor_exact(Series which, int power);
cplx eval_taylor(Series which, cplx L);
cplx eval_taylor_derivative(Series which, cplx L);  // d/dL

// Independent oracles
double I_by_ode(double L);
double J_by_ode(double L);
double H_by_quadrature(double L);
struct QuadResult {
  double value = 0.0;
  double error = 0.0;
};
// triple integral of rho(L,L3) rho(L1,L3) rho(L2,L3) rho(L1,L2)^2 over the positive octant
QuadResult F1_by_quadrature(double L, double tol = 1e-7);

struct Residual {
  std::string name;
  std::string kind;  // "fd" or "algebraic"
  double max_abs = 0.0;
  double threshold = 0.0;
  bool ok() const { return max_abs < threshold; }
};
struct ResidualGrid {
  double lo = 0.2, hi = 5.0;
  int points = 97;
};
std::vector<Residual> residuals(const ResidualGrid& grid = {});

}  // namespace torq::scaling
