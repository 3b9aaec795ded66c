#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace torq::gf {

enum class GfKind { R, X, Xtilde, K, kp, W1, W2 };

// Thrown when a label cap cannot reach the requested accuracy.
struct CapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Generating functions evaluated at a fixed real 0 < g < 1/12.
class NumericGF {
 public:
  explicit NumericGF(double g);
  // g = (1 - eps^2) / 12
  static NumericGF from_epsilon(double eps);

  double g() const { return g_; }
  double epsilon() const { return eps_; }
  double R() const { return R_; }
  double x() const { return x_; }

  double R(int l) const;
  double X(int l) const;
  double Xtilde(int l1, int l2) const;
  double kp(int p) const;
  double W1() const;
  double W2() const;

  // banded solve of the K recursion with a doubled label cap until two answers agree
  double K(int l1, int l2, double tol = 1e-10) const;
  // K[a][b] for 0 <= a, b <= cap + 1 by the same banded solve, one column per b
  std::vector<std::vector<double>> K_table(int cap, double tol = 1e-10) const;
  // -delta + sum_k Xtilde Xtilde X, used as a cross-check of the banded route
  double K_xtilde_sum(int l1, int l2) const;

 private:
  std::vector<double> K_column(int b, int rows, double tol) const;
  double one_minus_xpow(int k) const;  // 1 - x^k without cancellation

  double g_, eps_, R_, x_, logx_;
};

double eval_numeric(GfKind which, std::span<const int> labels, double g);

}  // namespace torq::gf
