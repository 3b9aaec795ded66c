#include "torq/scaling.hpp"

#include "torq/series.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/numeric/odeint.hpp>

#include <array>
#include <cmath>
#include <functional>
#include <mutex>

namespace torq::scaling {

namespace {

const double kS6 = std::sqrt(6.0);
constexpr int kTaylorOrder = 48;

void require_nonzero(cplx L, const char* what) {
  if (L == cplx(0.0, 0.0)) throw SingularInput(std::string(what) + " is singular at L = 0");
}

// --- exact Taylor series in u ---

FormalSeries sinh_k(int k, int order) {
  FormalSeries s(order);
  mpz_class fact = 1, kp = 1;
  for (int j = 0; j <= order; ++j) {
    if (j > 0) {
      fact *= j;
      kp *= k;
    }
    if (j % 2 == 1) s[j] = mpq_class(kp, fact);
  }
  for (int j = 0; j <= order; ++j) s[j].canonicalize();
  return s;
}

FormalSeries cosh_k(int k, int order) {
  FormalSeries s(order);
  mpz_class fact = 1, kp = 1;
  for (int j = 0; j <= order; ++j) {
    if (j > 0) {
      fact *= j;
      kp *= k;
    }
    if (j % 2 == 0) s[j] = mpq_class(kp, fact);
  }
  for (int j = 0; j <= order; ++j) s[j].canonicalize();
  return s;
}

FormalSeries u_pow(int k, int order) { return FormalSeries::monomial(k, 1, order); }

FormalSeries strip(const FormalSeries& s, int k, const char* what) {
  if (s.valuation() < k) throw std::logic_error(std::string(what) + ": expected valuation " + std::to_string(k));
  return s.divided_by_power(k);
}

// h(u) = 60u + sinh 4u - 16 sinh 2u - 32 tanh u, H = sqrt6 h / 1728
FormalSeries h_series(int order) {
  const FormalSeries tanh1 = sinh_k(1, order) / cosh_k(1, order);
  return u_pow(1, order) * mpq_class(60) + sinh_k(4, order) - sinh_k(2, order) * mpq_class(16) - tanh1 * mpq_class(32);
}

struct TaylorTables {
  std::array<FormalSeries, 4> exact;
  std::array<std::vector<double>, 4> dbl;
};

TaylorTables build_tables() {
  const int N = kTaylorOrder;
  TaylorTables t;
  {
    const FormalSeries th = sinh_k(1, N) / cosh_k(1, N);
    t.exact[0] = th.pow(4) * mpq_class(1, 96);
  }
  {
    const int P = N + 8;
    const FormalSeries h7 = strip(h_series(P), 7, "h");
    const FormalSeries s2 = strip(sinh_k(2, P), 1, "sinh 2u");
    const FormalSeries core = h7 * cosh_k(2, P) / (s2.pow(3) * mpq_class(192));
    FormalSeries full(N);
    for (int k = 0; k + 4 <= N; ++k) full[k + 4] = core[k];
    t.exact[1] = full;
  }
  {
    t.exact[2] = h_series(N) * mpq_class(1, 1728);
  }
  {
    const int P = N + 12;
    const FormalSeries c2 = cosh_k(2, P), c4 = cosh_k(4, P), s1 = sinh_k(1, P);
    const FormalSeries s2 = sinh_k(2, P), s4 = sinh_k(4, P);
    const FormalSeries one = FormalSeries::constant(1, P);
    FormalSeries num = (one * mpq_class(238) + c2 * mpq_class(151) + c4) * s1 * s1 * mpq_class(1, 768);
    num -= u_pow(1, P) * (s2 * mpq_class(100) + s4 * mpq_class(31)) * mpq_class(5, 6144);
    num -= u_pow(2, P) * (one * mpq_class(3) + c2 * mpq_class(2)) * mpq_class(25, 512);
    const FormalSeries n10 = strip(num, 10, "F1 numerator");
    const FormalSeries d = strip(s1, 1, "sinh u").truncated(P - 10).pow(6);
    const FormalSeries q = n10 / d;
    FormalSeries full(N);
    for (int k = 0; k + 4 <= N; ++k) full[k + 4] = q[k];
    t.exact[3] = full;
  }
  for (int i = 0; i < 4; ++i) {
    t.dbl[i].resize(N + 1);
    for (int k = 0; k <= N; ++k) t.dbl[i][k] = t.exact[i][k].get_d();
  }
  return t;
}

const TaylorTables& tables() {
  static const TaylorTables t = build_tables();
  return t;
}

int index_of(Series s) {
  switch (s) {
    case Series::I: return 0;
    case Series::J: return 1;
    case Series::H: return 2;
    case Series::F1: return 3;
  }
  throw std::invalid_argument("unknown series");
}

double series_scale(Series s) { return s == Series::H ? kS6 : 1.0; }

}  // namespace

const std::vector<double>& taylor(Series which) { return tables().dbl[index_of(which)]; }

std::string taylor_exact(Series which, int power) {
  const auto& s = tables().exact[index_of(which)];
  if (power < 0 || power > s.order()) throw std::out_of_range("Taylor power out of range");
  return coeff_string(s[power]);
}

cplx eval_taylor(Series which, cplx L) {
  const auto& c = taylor(which);
  const cplx u = kB * L;
  cplx acc = 0.0;
  for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) acc = acc * u + c[k];
  return acc * series_scale(which);
}

cplx eval_taylor_derivative(Series which, cplx L) {
  const auto& c = taylor(which);
  const cplx u = kB * L;
  cplx acc = 0.0;
  for (int k = static_cast<int>(c.size()) - 1; k >= 1; --k) acc = acc * u + c[k] * static_cast<double>(k);
  return acc * kB * series_scale(which);
}

// --- closed forms ---

cplx F(cplx L) {
  require_nonzero(L, "F");
  const cplx s = std::sinh(kB * L);
  return 1.0 + 3.0 / (s * s);
}

cplx Fprime(cplx L) {
  require_nonzero(L, "F'");
  const cplx u = kB * L, s = std::sinh(u);
  return -6.0 * kB * std::cosh(u) / (s * s * s);
}

cplx Fsecond(cplx L) {
  require_nonzero(L, "F''");
  const cplx u = kB * L, s = std::sinh(u), c = std::cosh(u);
  return 9.0 * (3.0 * c * c - s * s) / (s * s * s * s);
}

cplx C(cplx L) {
  require_nonzero(L, "C");
  const cplx v = kS6 * L;
  return kS6 * (2.0 + std::cosh(v)) / std::sinh(v);
}

cplx H_direct(cplx L) {
  const cplx v = kS6 * L;
  return (180.0 * L + kS6 * (std::sinh(2.0 * v) - 16.0 * std::sinh(v) - 32.0 * std::tanh(kB * L))) / 1728.0;
}

cplx H(cplx L, double threshold) { return std::abs(L) < threshold ? eval_taylor(Series::H, L) : H_direct(L); }

cplx I(cplx L) {
  const cplx t = std::tanh(kB * L);
  return t * t * t * t / 96.0;
}

cplx Iprime(cplx L) {
  const cplx t = std::tanh(kB * L), c = std::cosh(kB * L);
  return 4.0 * kB * t * t * t / (c * c) / 96.0;
}

cplx J_direct(cplx L) { return -0.5 * H_direct(L) * Fprime(2.0 * L); }

cplx J(cplx L, double threshold) { return std::abs(L) < threshold ? eval_taylor(Series::J, L) : J_direct(L); }

cplx Jprime(cplx L, double threshold) {
  if (std::abs(L) < threshold) return eval_taylor_derivative(Series::J, L);
  const cplx fp = Fprime(L);
  return -0.5 * (3.0 / (fp * fp) * Fprime(2.0 * L) + 2.0 * H_direct(L) * Fsecond(2.0 * L));
}

cplx A0(cplx L) {
  const cplx u = kB * L, s = std::sinh(u);
  return (238.0 + 151.0 * std::cosh(2.0 * u) + std::cosh(4.0 * u)) / (768.0 * s * s * s * s);
}

cplx A1(cplx L) {
  const cplx u = kB * L, s = std::sinh(u), s2 = s * s;
  return -5.0 / (2048.0 * kS6) * (100.0 * std::sinh(2.0 * u) + 31.0 * std::sinh(4.0 * u)) / (s2 * s2 * s2);
}

cplx A2(cplx L) {
  const cplx u = kB * L, s = std::sinh(u), s2 = s * s;
  return -75.0 / 1024.0 * (3.0 + 2.0 * std::cosh(2.0 * u)) / (s2 * s2 * s2);
}

cplx alpha0(cplx L) {
  const cplx s2 = std::pow(std::sinh(kB * L), 2);
  return (390.0 / (s2 * s2) + 310.0 / s2 + 8.0) / 3072.0;
}

cplx alpha1(cplx L) {
  const cplx u = kB * L, s = std::sinh(u);
  return 25.0 / 512.0 * kB * std::cosh(u) / std::pow(s, 5);
}

namespace {
struct MParts {
  cplx a0u, a0uu, a1u, a1uu;
};
MParts m_parts(cplx L) {
  const cplx u = kB * L, s = std::sinh(u), c = std::cosh(u);
  const cplx is = 1.0 / s, is2 = is * is;
  MParts p;
  p.a0u = (-1560.0 * c * is2 * is2 * is - 620.0 * c * is2 * is) / 3072.0;
  p.a0uu = (7800.0 * c * c * is2 * is2 * is2 - 1560.0 * is2 * is2 + 1860.0 * c * c * is2 * is2 - 620.0 * is2) / 3072.0;
  const double k1 = 25.0 / 512.0 * kB;
  p.a1u = k1 * (is2 * is2 - 5.0 * c * c * is2 * is2 * is2);
  p.a1uu = k1 * (-14.0 * c * is2 * is2 * is + 30.0 * c * c * c * is2 * is2 * is2 * is);
  return p;
}
}  // namespace

cplx M(cplx L) { return alpha0(L) + L * alpha1(L); }

cplx Mprime(cplx L) {
  const MParts p = m_parts(L);
  return kB * p.a0u + alpha1(L) + L * kB * p.a1u;
}

cplx Msecond(cplx L) {
  const MParts p = m_parts(L);
  return kB * kB * p.a0uu + 2.0 * kB * p.a1u + L * kB * kB * p.a1uu;
}

cplx F1_direct(cplx L) { return A0(L) + L * A1(L) + L * L * A2(L); }

cplx F1(cplx L, double threshold) { return std::abs(L) < threshold ? eval_taylor(Series::F1, L) : F1_direct(L); }

cplx F1prime(cplx L, double threshold) {
  if (std::abs(L) < threshold) return eval_taylor_derivative(Series::F1, L);
  return 5.0 * Mprime(L) + L * Msecond(L);
}

double Ctilde(double L1, double L2) { return Fprime(L1).real() / Fprime(L2).real(); }

double rho(double L1, double L2) {
  if (L1 <= 0 || L2 <= 0) return 0.0;
  return (Fprime(L1) * Fprime(L2) * H(std::min(L1, L2))).real();
}

cplx rho(cplx L1, cplx L2) { return Fprime(L1) * Fprime(L2) * H(std::abs(L1) <= std::abs(L2) ? L1 : L2); }

// --- oracles ---

namespace {
double fp_real(double x) { return Fprime(x).real(); }
// 3 / F'(x)^2 without overflow near 0
double h_integrand(double x) {
  const double s = std::sinh(kB * x), c = std::cosh(kB * x);
  return std::pow(s, 6) / (18.0 * c * c);
}

// (T, G, Y3, Y4) integrated from far out down to L
std::array<double, 4> nested_tail(double L) {
  using namespace boost::numeric::odeint;
  using State = std::array<double, 4>;
  State y{0.0, 0.0, 0.0, 0.0};
  auto rhs = [](const State& s, State& d, double x) {
    const double f = fp_real(x);
    const double f3 = f * f * f;
    const double w = h_integrand(x);
    d[0] = -f3;
    d[1] = -f3 * s[0];
    d[2] = -w * s[1];
    d[3] = -w * s[2];
  };
  const double start = L + 14.0;
  integrate_adaptive(make_controlled(1e-40, 1e-13, runge_kutta_dopri5<State>()), rhs, y, start, L, -1e-3);
  return y;
}
}  // namespace

double H_by_quadrature(double L) {
  if (L <= 0) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(h_integrand, 0.0, L, 15, 1e-14);
}

double I_by_ode(double L) {
  if (L <= 0) return 0.0;
  const auto y = nested_tail(L);
  const double f = fp_real(L);
  return 6.0 / (f * f) * y[3];
}

double J_by_ode(double L) {
  if (L <= 0) return 0.0;
  const auto y = nested_tail(L);
  const double f = fp_real(L);
  return 6.0 / (f * f) * H_by_quadrature(L) * y[2];
}

QuadResult F1_by_quadrature(double L, double tol) {
  if (L <= 0) throw std::invalid_argument("F1_by_quadrature needs L > 0");
  using GK = boost::math::quadrature::gauss_kronrod<double, 21>;
  const double top = L + 9.0;
  const unsigned depth = 12;
  double err_total = 0.0;
  // integral of f over (0, top) split at the given points
  auto split = [&](const std::function<double(double)>& f, std::vector<double> cuts, double rel, double* err) {
    cuts.push_back(0.0);
    cuts.push_back(top);
    std::sort(cuts.begin(), cuts.end());
    double sum = 0.0, e = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      if (cuts[i + 1] - cuts[i] <= 0) continue;
      double ei = 0.0;
      sum += GK::integrate(f, cuts[i], cuts[i + 1], depth, rel, &ei);
      e += ei;
    }
    if (err) *err = e;
    return sum;
  };
  double outer_err = 0.0;
  const double value = split(
      [&](double L3) {
        const double r3 = rho(L, L3);
        if (r3 == 0.0) return 0.0;
        return r3 * split(
                        [&](double L1) {
                          const double r13 = rho(L1, L3);
                          return r13 * split(
                                           [&](double L2) {
                                             const double r12 = rho(L1, L2);
                                             return rho(L2, L3) * r12 * r12;
                                           },
                                           {L1, L3}, tol * 0.01, nullptr);
                        },
                        {L3}, tol * 0.1, nullptr);
      },
      {L}, tol, &outer_err);
  err_total = outer_err;
  if (!(err_total <= 100 * tol * std::max(1.0, std::abs(value))))
    throw std::runtime_error("F1 quadrature: tolerance not reached, estimate " + std::to_string(value) + " +- " +
                             std::to_string(err_total));
  return {value, err_total};
}

// --- residuals ---

namespace {

using RealFn = std::function<double(double)>;

// central second derivative, two Richardson levels
double d2(const RealFn& f, double x, double h = 1e-2) {
  auto D = [&](double k) { return (f(x + k) - 2 * f(x) + f(x - k)) / (k * k); };
  const double a = D(h), b = D(h / 2), c = D(h / 4);
  const double r1 = (4 * b - a) / 3, r2 = (4 * c - b) / 3;
  return (16 * r2 - r1) / 15;
}

double d1(const RealFn& f, double x, double h = 1e-2) {
  auto D = [&](double k) { return (f(x + k) - f(x - k)) / (2 * k); };
  const double a = D(h), b = D(h / 2), c = D(h / 4);
  const double r1 = (4 * b - a) / 3, r2 = (4 * c - b) / 3;
  return (16 * r2 - r1) / 15;
}

// one-sided first derivative, fourth order; dir = +1 forward, -1 backward
double d1_side(const RealFn& f, double x, int dir, double h = 1e-3) {
  const double k = dir * h;
  return (-25 * f(x) + 48 * f(x + k) - 36 * f(x + 2 * k) + 16 * f(x + 3 * k) - 3 * f(x + 4 * k)) / (12 * k);
}

double rel(double lhs, double rhs) { return std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)); }

std::vector<double> grid_points(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / std::max(1, n - 1);
  return g;
}

}  // namespace

std::vector<Residual> residuals(const ResidualGrid& grid) {
  const auto pts = grid_points(grid.lo, grid.hi, grid.points);
  const auto mid = grid_points(std::max(grid.lo, 0.5), std::min(grid.hi, 3.0), grid.points);
  const RealFn f = [](double x) { return F(x).real(); };
  const RealFn c = [](double x) { return C(x).real(); };
  const RealFn h = [](double x) { return H(x).real(); };
  const RealFn a0 = [](double x) { return A0(x).real(); };
  const RealFn a1 = [](double x) { return A1(x).real(); };
  std::vector<Residual> out;
  auto add = [&](std::string name, std::string kind, double thr, const std::vector<double>& xs,
                 const std::function<double(double)>& r) {
    Residual res{std::move(name), std::move(kind), 0.0, thr};
    for (double x : xs) res.max_abs = std::max(res.max_abs, r(x));
    out.push_back(std::move(res));
  };
  add("F'' = 3(F^2-1)", "fd", 1e-6, pts, [&](double x) {
    const double v = f(x);
    return rel(d2(f, x), 3 * (v * v - 1));
  });
  add("F'' = 3(F^2-1)", "algebraic", 1e-10, pts, [&](double x) {
    const double v = f(x);
    return rel(Fsecond(x).real(), 3 * (v * v - 1));
  });
  add("C' = C^2 - 6F", "fd", 1e-6, pts, [&](double x) {
    const double v = c(x);
    return rel(d1(c, x), v * v - 6 * f(x));
  });
  add("C = -F''/F'", "algebraic", 1e-10, pts,
      [&](double x) { return rel(c(x), -Fsecond(x).real() / Fprime(x).real()); });
  add("H' = 3/F'^2", "fd", 1e-6, pts, [&](double x) {
    const double fp = Fprime(x).real();
    return rel(d1(h, x), 3 / (fp * fp));
  });
  add("A0'' - 4A1' + 20A2 = 0", "fd", 1e-6, mid, [&](double x) {
    const double lhs = d2(a0, x) - 4 * d1(a1, x) + 20 * A2(x).real();
    return std::abs(lhs) / std::max(1.0, std::abs(d2(a0, x)));
  });
  add("F1 = 4M + LM'", "algebraic", 1e-10, mid,
      [&](double x) { return rel(F1_direct(x).real(), (4.0 * M(x) + x * Mprime(x)).real()); });
  add("F1' = 5M' + LM''", "fd", 1e-6, mid, [&](double x) {
    const RealFn f1 = [](double y) { return F1_direct(y).real(); };
    return rel(d1(f1, x), F1prime(x).real());
  });
  // Taylor fallbacks against direct evaluation where both are accurate
  const auto annulus = grid_points(0.25, 0.35, 11);
  add("F1 Taylor vs direct", "algebraic", 1e-9, annulus, [&](double x) {
    double worst = 0.0;
    for (double ang : {0.0, -M_PI / 4, M_PI / 4}) {
      const cplx L = std::polar(x, ang);
      worst = std::max(worst, std::abs(eval_taylor(Series::F1, L) - F1_direct(L)) / std::max(1e-3, std::abs(F1_direct(L))));
    }
    return worst;
  });
  add("J Taylor vs direct", "algebraic", 1e-9, annulus, [&](double x) {
    double worst = 0.0;
    for (double ang : {0.0, -M_PI / 4, M_PI / 4}) {
      const cplx L = std::polar(x, ang);
      worst = std::max(worst, std::abs(eval_taylor(Series::J, L) - J_direct(L)) / std::max(1e-3, std::abs(J_direct(L))));
    }
    return worst;
  });
  add("H Taylor vs direct", "algebraic", 1e-9, annulus, [&](double x) {
    double worst = 0.0;
    for (double ang : {0.0, -M_PI / 4, M_PI / 4}) {
      const cplx L = std::polar(x, ang);
      worst = std::max(worst, std::abs(eval_taylor(Series::H, L) - H_direct(L)) / std::max(1e-3, std::abs(H_direct(L))));
    }
    return worst;
  });
  // rho equation off the diagonal, second argument fixed at 1
  const double l2 = 1.0;
  std::vector<double> off;
  for (double x : pts)
    if (std::abs(x - l2) > 0.1) off.push_back(x);
  add("d1^2 rho = 6 F rho (L1 != L2)", "fd", 1e-6, off, [&](double x) {
    const RealFn r = [&](double y) { return rho(y, l2); };
    return rel(d2(r, x, std::min(1e-2, std::abs(x - l2) / 8)), 6 * f(x) * rho(x, l2));
  });
  add("rho jump at diagonal = -3", "fd", 1e-6, grid_points(0.5, 3.0, 11), [&](double x) {
    const RealFn r = [&](double y) { return rho(y, x); };
    return std::abs(d1_side(r, x, +1) - d1_side(r, x, -1) + 3.0);
  });
  return out;
}

}  // namespace torq::scaling
