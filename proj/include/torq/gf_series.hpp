#pragma once

#include "torq/series.hpp"

#include <map>
#include <string>
#include <vector>

namespace torq::gf {

// Exact integer-coefficient tables in the edge weight g, truncated at `order`.
// Holds R, x, R_l, X_l and the products Xtilde_{a,k} for labels up to max_label.
class ChainTables {
 public:
  ChainTables(int order, int max_label);

  int order() const { return order_; }
  int max_label() const { return max_label_; }

  const IntSeries& R() const { return R_; }
  const IntSeries& x() const { return x_; }
  const IntSeries& one_minus_x_pow(int k) const;  // 1 - x^k
  const IntSeries& R(int l) const;                 // 0 <= l <= max_label + 1
  const IntSeries& X(int l) const;                 // 1 <= l <= max_label
  // g R_l R_{l+1} X_{l+1}
  const IntSeries& step(int l) const;
  // product route; zero series when a - k exceeds the order
  const IntSeries& Xtilde(int a, int k) const;
  // -delta + sum_{k=from}^{min(a,b)} Xtilde_{a,k} Xtilde_{b,k} X_k
  IntSeries K(int a, int b, int from = 1) const;

 private:
  int order_;
  int max_label_;
  IntSeries R_, x_, zero_;
  std::vector<IntSeries> omx_;
  std::vector<IntSeries> Rl_, Xl_, step_;
  std::vector<std::vector<IntSeries>> xt_;  // xt_[k][a - k]
};

// closed forms and recursions, all exact
IntSeries series_R_int(int order);
IntSeries solve_x_int(int order);
FormalSeries solve_x(int order);
FormalSeries series_R(int l, int order);
FormalSeries series_X(int l, int order);
FormalSeries series_Xtilde(int l1, int l2, int order);          // product form
FormalSeries series_Xtilde_closed(int l1, int l2, int order);   // x-power closed form
FormalSeries series_K(int l1, int l2, int order);
FormalSeries series_kp(int p, int order);

FormalSeries series_W1(int order);              // telescoped k_p sum
FormalSeries series_W2(int order);
FormalSeries series_W1_double_sum(int order);   // backbone double sum, cut at label order+2
FormalSeries series_W2_double_sum(int order);
FormalSeries series_W1_closed(int order);
FormalSeries series_W2_closed(int order);

struct Q1Series {
  FormalSeries pointed;
  FormalSeries rooted;
};
Q1Series series_Q1(int order);           // pointed = W1 + W2, rooted = 4 * pointed
FormalSeries series_Q1_closed(int order);

struct IdentityCheck {
  bool ok = true;
  std::string where;  // first failing identity, empty when ok
};

IdentityCheck check_R_recursion(int lmax, int order);
// same recursion on a given table R_0 .. R_{lmax+1}
IdentityCheck check_R_recursion(const std::vector<IntSeries>& R);
IdentityCheck check_X_recursion(int lmax, int order);
IdentityCheck check_Xtilde_forms(int lmax, int order);
IdentityCheck check_K_recursion(int lmax, int order);
IdentityCheck check_kp_recursion(int pmax, int order);
IdentityCheck check_K_symmetry(int lmax, int order);

// corner-rooted counts of well-labeled 1-trees of size n by the minimum label
// on the skeleton; entries for m = 1..n
std::map<int, mpz_class> exact_min_skeleton_distribution(int n);

}  // namespace torq::gf
