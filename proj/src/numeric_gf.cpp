#include "torq/numeric_gf.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace torq::gf {

NumericGF::NumericGF(double g) : g_(g) {
  if (!(g > 0.0 && g < 1.0 / 12.0)) throw std::domain_error("g must lie in (0, 1/12)");
  eps_ = std::sqrt(1.0 - 12.0 * g);
  R_ = 2.0 / (1.0 + eps_);
  // x + 1/x + 1 = 1/(gR^2); with c = 1/(gR^2) - 1, c - 2 = 6 eps / (1 - eps)
  const double cm2 = 6.0 * eps_ / (1.0 - eps_);
  const double c = cm2 + 2.0;
  x_ = 2.0 / (c + std::sqrt(cm2 * (c + 2.0)));
  logx_ = std::log(x_);
}

NumericGF NumericGF::from_epsilon(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("epsilon must lie in (0, 1)");
  NumericGF n((1.0 - eps * eps) / 12.0);
  n.eps_ = eps;
  n.R_ = 2.0 / (1.0 + eps);
  const double cm2 = 6.0 * eps / (1.0 - eps);
  const double c = cm2 + 2.0;
  n.x_ = 2.0 / (c + std::sqrt(cm2 * (c + 2.0)));
  n.logx_ = std::log(n.x_);
  return n;
}

double NumericGF::one_minus_xpow(int k) const { return -std::expm1(k * logx_); }

double NumericGF::R(int l) const {
  if (l < 0) throw std::invalid_argument("R label must be >= 0");
  if (l == 0) return 0.0;
  return R_ * one_minus_xpow(l) * one_minus_xpow(l + 3) / (one_minus_xpow(l + 1) * one_minus_xpow(l + 2));
}

double NumericGF::X(int l) const {
  if (l < 1) throw std::invalid_argument("X label must be >= 1");
  const double a = one_minus_xpow(l + 1), b = one_minus_xpow(l + 3);
  return one_minus_xpow(3) * a * a * one_minus_xpow(2 * l + 3) / (one_minus_xpow(1) * b * b * one_minus_xpow(2 * l + 1));
}

double NumericGF::Xtilde(int l1, int l2) const {
  if (l2 < 1 || l1 < l2) throw std::invalid_argument("Xtilde needs l1 >= l2 >= 1");
  if (l1 == l2) return 1.0;
  const double num = one_minus_xpow(l2) * one_minus_xpow(l2 + 1) * one_minus_xpow(l2 + 2) * one_minus_xpow(l2 + 3) *
                     one_minus_xpow(2 * l1 + 3);
  const double den = one_minus_xpow(l1) * one_minus_xpow(l1 + 1) * one_minus_xpow(l1 + 2) * one_minus_xpow(l1 + 3) *
                     one_minus_xpow(2 * l2 + 3);
  return std::exp((l1 - l2) * logx_) * num / den;
}

double NumericGF::kp(int p) const {
  p = std::abs(p);
  const double base = one_minus_xpow(3) / (one_minus_xpow(1) * one_minus_xpow(2));
  return base * std::exp(p * logx_) - (p == 0 ? 1.0 : 0.0);
}

double NumericGF::W1() const {
  const double x = x_, om = one_minus_xpow(1), op = 1.0 + x;
  return x * x * x * (1 + 2 * x + 2 * x * x - 2 * x * x * x) / (2 * std::pow(om, 4) * op * op);
}

double NumericGF::W2() const {
  const double x = x_, om = one_minus_xpow(1), op = 1.0 + x;
  return x * x * (1 + 2 * x) * (1 + 2 * x) / (4 * om * om * op * op);
}

double NumericGF::K_xtilde_sum(int l1, int l2) const {
  if (l1 < 0 || l2 < 0) throw std::invalid_argument("K labels must be >= 0");
  if (l1 == 0 || l2 == 0) return 0.0;
  double s = (l1 == l2) ? -1.0 : 0.0;
  for (int k = 1; k <= std::min(l1, l2); ++k) s += Xtilde(l1, k) * Xtilde(l2, k) * X(k);
  return s;
}

// Solve for K_{a,b}, a = 1..M, with K_0 = 0 and K_{M+1} closed by k_{M+1-b}.
std::vector<double> NumericGF::K_column(int b, int rows, double tol) const {
  auto solve = [&](int M) {
    std::vector<double> lower(M + 1), diag(M + 1), upper(M + 1), rhs(M + 1);
    std::vector<double> Rs(M + 2);
    for (int a = 0; a <= M + 1; ++a) Rs[a] = R(a);
    for (int a = 1; a <= M; ++a) {
      const double gr = g_ * Rs[a];
      lower[a] = -gr * Rs[a - 1];
      diag[a] = 1.0 - gr * Rs[a];
      upper[a] = -gr * Rs[a + 1];
      double r = 0.0;
      if (a - 1 == b) r += Rs[a - 1];
      if (a == b) r += Rs[a];
      if (a + 1 == b) r += Rs[a + 1];
      rhs[a] = gr * r;
    }
    rhs[M] -= upper[M] * kp(M + 1 - b);
    // Thomas algorithm; the system is diagonally dominant
    for (int a = 2; a <= M; ++a) {
      const double w = lower[a] / diag[a - 1];
      diag[a] -= w * upper[a - 1];
      rhs[a] -= w * rhs[a - 1];
    }
    std::vector<double> K(M + 1);
    K[M] = rhs[M] / diag[M];
    for (int a = M - 1; a >= 1; --a) K[a] = (rhs[a] - upper[a] * K[a + 1]) / diag[a];
    return K;
  };
  int M = std::max({2 * rows, 2 * b, 64});
  std::vector<double> prev = solve(M);
  for (int it = 0; it < 16; ++it) {
    const int M2 = 2 * M;
    std::vector<double> next = solve(M2);
    double worst = 0.0;
    for (int a = 1; a <= rows; ++a) {
      const double scale = std::max(std::abs(next[a]), 1e-300);
      worst = std::max(worst, std::abs(next[a] - prev[a]) / scale);
    }
    if (worst <= tol) {
      next.resize(rows + 1);
      next[0] = 0.0;
      return next;
    }
    prev = std::move(next);
    M = M2;
  }
  throw CapError("K: label cap doubling did not converge for b=" + std::to_string(b));
}

double NumericGF::K(int l1, int l2, double tol) const {
  if (l1 < 0 || l2 < 0) throw std::invalid_argument("K labels must be >= 0");
  if (l1 == 0 || l2 == 0) return 0.0;
  return K_column(l2, std::max(l1, 1), tol)[l1];
}

std::vector<std::vector<double>> NumericGF::K_table(int cap, double tol) const {
  if (cap < 1) throw std::invalid_argument("K_table cap must be >= 1");
  std::vector<std::vector<double>> t(cap + 2, std::vector<double>(cap + 2, 0.0));
  for (int b = 1; b <= cap + 1; ++b) {
    const auto col = K_column(b, cap + 1, tol);
    for (int a = 1; a <= cap + 1; ++a) t[a][b] = col[a];
  }
  return t;
}

double eval_numeric(GfKind which, std::span<const int> labels, double g) {
  const NumericGF n(g);
  auto need = [&](std::size_t k) {
    if (labels.size() != k) throw std::invalid_argument("wrong number of labels");
  };
  switch (which) {
    case GfKind::R: need(1); return n.R(labels[0]);
    case GfKind::X: need(1); return n.X(labels[0]);
    case GfKind::Xtilde: need(2); return n.Xtilde(labels[0], labels[1]);
    case GfKind::K: need(2); return n.K(labels[0], labels[1]);
    case GfKind::kp: need(1); return n.kp(labels[0]);
    case GfKind::W1: need(0); return n.W1();
    case GfKind::W2: need(0); return n.W2();
  }
  throw std::invalid_argument("unknown generating function");
}

}  // namespace torq::gf
