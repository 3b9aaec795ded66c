#include "torq/gf_series.hpp"

#include <stdexcept>

namespace torq::gf {

namespace {

IntSeries one(int order) { return IntSeries::constant(1, order); }

void require_order(int order) {
  if (order < 0) throw std::invalid_argument("order must be non-negative");
}

void require_label(int l, int min) {
  if (l < min) throw std::invalid_argument("label out of range: " + std::to_string(l));
}

// [t^n] of a^3 without forming the full cube
mpz_class cube_coeff(const IntSeries& a, int n) {
  if (a.order() < n) throw std::logic_error("cube_coeff: order too small");
  const int va = a.valuation();
  if (3 * va > n) return 0;
  std::vector<mpz_class> sq(n + 1);
  for (int i = va; i <= n - 2 * va; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (int j = va; i + j <= n - va; ++j) detail::addmul(sq[i + j], a[i], a[j]);
  }
  mpz_class out = 0;
  for (int i = va; i <= n - 2 * va; ++i) detail::addmul(out, a[i], sq[n - i]);
  return out;
}

mpz_class square_coeff(const IntSeries& a, int n) {
  mpz_class out = 0;
  for (int i = 0; i <= n; ++i) detail::addmul(out, a[i], a[n - i]);
  return out;
}

FormalSeries scaled(const IntSeries& s, const mpq_class& factor) {
  FormalSeries out = to_rational(s);
  out *= factor;
  return out;
}

}  // namespace

IntSeries series_R_int(int order) {
  require_order(order);
  // R = 1 + 3 g R^2, coefficientwise
  IntSeries R(order);
  R[0] = 1;
  for (int n = 1; n <= order; ++n) {
    mpz_class acc = 0;
    for (int i = 0; i <= n - 1; ++i) detail::addmul(acc, R[i], R[n - 1 - i]);
    R[n] = 3 * acc;
  }
  return R;
}

IntSeries solve_x_int(int order) {
  require_order(order);
  const IntSeries R = series_R_int(order);
  const IntSeries gR2 = (R * R).shifted(1);
  // x = gR^2 / (1 - gR^2 (1 + x)); each pass fixes one more coefficient
  IntSeries x(order);
  for (int pass = 1; pass <= order; ++pass) {
    const IntSeries gr = gR2.truncated(pass);
    const IntSeries xt = x.truncated(pass);
    const IntSeries next = gr * (one(pass) - gr * (one(pass) + xt)).inverse();
    x = next.truncated(order);
  }
  return x;
}

FormalSeries solve_x(int order) { return to_rational(solve_x_int(order)); }

ChainTables::ChainTables(int order, int max_label)
    : order_(order), max_label_(max_label), R_(series_R_int(order)), x_(solve_x_int(order)), zero_(order) {
  require_order(order);
  if (max_label < 1) throw std::invalid_argument("max_label must be >= 1");
  const int kmax = 2 * max_label + 8;
  omx_.reserve(kmax + 1);
  IntSeries xp = one(order);
  for (int k = 0; k <= kmax; ++k) {
    omx_.push_back(one(order) - xp);
    if (k < order) xp = xp * x_;
    else xp = IntSeries(order);
  }
  Rl_.resize(max_label + 2);
  for (int l = 0; l <= max_label + 1; ++l)
    Rl_[l] = R_ * omx_[l] * omx_[l + 3] / (omx_[l + 1] * omx_[l + 2]);
  Xl_.resize(max_label + 2);
  for (int l = 1; l <= max_label + 1; ++l) {
    const IntSeries num = omx_[3] * omx_[l + 1] * omx_[l + 1] * omx_[2 * l + 3];
    const IntSeries den = omx_[1] * omx_[l + 3] * omx_[l + 3] * omx_[2 * l + 1];
    Xl_[l] = num / den;
  }
  step_.resize(max_label + 1);
  for (int l = 1; l <= max_label; ++l) step_[l] = (Rl_[l] * Rl_[l + 1] * Xl_[l + 1]).shifted(1);
  xt_.resize(max_label + 1);
  for (int k = 1; k <= max_label; ++k) {
    auto& col = xt_[k];
    col.push_back(one(order));
    for (int a = k + 1; a <= max_label && a - k <= order; ++a) col.push_back(col.back() * step_[a - 1]);
  }
}

const IntSeries& ChainTables::one_minus_x_pow(int k) const { return omx_.at(k); }

const IntSeries& ChainTables::R(int l) const {
  if (l < 0 || l > max_label_ + 1) throw std::out_of_range("R label");
  return Rl_[l];
}

const IntSeries& ChainTables::X(int l) const {
  if (l < 1 || l > max_label_ + 1) throw std::out_of_range("X label");
  return Xl_[l];
}

const IntSeries& ChainTables::step(int l) const {
  if (l < 1 || l > max_label_) throw std::out_of_range("step label");
  return step_[l];
}

const IntSeries& ChainTables::Xtilde(int a, int k) const {
  if (k < 1 || a < k || a > max_label_) throw std::out_of_range("Xtilde labels");
  const auto& col = xt_[k];
  if (a - k >= static_cast<int>(col.size())) return zero_;
  return col[a - k];
}

IntSeries ChainTables::K(int a, int b, int from) const {
  IntSeries out(order_);
  if (a == 0 || b == 0) return out;
  const int lo = std::max(from, 1);
  const int hi = std::min(a, b);
  if (lo > hi) return out;
  if (a == b) out[0] = -1;
  for (int k = lo; k <= hi; ++k) {
    if ((a - k) + (b - k) > order_) continue;
    out += Xtilde(a, k) * Xtilde(b, k) * X(k);
  }
  return out;
}

FormalSeries series_R(int l, int order) {
  require_label(l, 0);
  ChainTables t(order, std::max(l, 1));
  return to_rational(t.R(l));
}

FormalSeries series_X(int l, int order) {
  require_label(l, 1);
  ChainTables t(order, l);
  return to_rational(t.X(l));
}

FormalSeries series_Xtilde(int l1, int l2, int order) {
  require_label(l2, 1);
  if (l1 < l2) throw std::invalid_argument("Xtilde needs l1 >= l2");
  ChainTables t(order, l1);
  return to_rational(t.Xtilde(l1, l2));
}

FormalSeries series_Xtilde_closed(int l1, int l2, int order) {
  require_label(l2, 1);
  if (l1 < l2) throw std::invalid_argument("Xtilde needs l1 >= l2");
  ChainTables t(order, l1);
  auto omx = [&](int k) { return t.one_minus_x_pow(k); };
  IntSeries xp = one(order);
  for (int i = 0; i < l1 - l2; ++i) xp = xp * t.x();
  const IntSeries num = omx(l2) * omx(l2 + 1) * omx(l2 + 2) * omx(l2 + 3) * omx(2 * l1 + 3);
  const IntSeries den = omx(l1) * omx(l1 + 1) * omx(l1 + 2) * omx(l1 + 3) * omx(2 * l2 + 3);
  return to_rational(xp * num / den);
}

FormalSeries series_K(int l1, int l2, int order) {
  require_label(l1, 0);
  require_label(l2, 0);
  ChainTables t(order, std::max({l1, l2, 1}));
  return to_rational(t.K(l1, l2));
}

namespace {

IntSeries kp_int(int p, const IntSeries& x, int order) {
  if (p < 0) p = -p;
  const IntSeries o = one(order);
  const IntSeries x2 = x * x;
  IntSeries base = (o - x2 * x) / ((o - x) * (o - x2));
  for (int i = 0; i < p; ++i) base = base * x;
  if (p == 0) base[0] -= 1;
  return base;
}

}  // namespace

FormalSeries series_kp(int p, int order) {
  require_order(order);
  return to_rational(kp_int(p, solve_x_int(order), order));
}

FormalSeries series_W1(int order) {
  require_order(order);
  const IntSeries x = solve_x_int(order);
  // 6 W1 = k0^3 + 2 sum_{p>=1} k_p^3
  IntSeries six = kp_int(0, x, order).pow(3);
  for (int p = 1; 3 * p <= order; ++p) {
    IntSeries c = kp_int(p, x, order).pow(3);
    six += c + c;
  }
  return scaled(six, mpq_class(1, 6));
}

FormalSeries series_W2(int order) {
  require_order(order);
  const IntSeries k0 = kp_int(0, solve_x_int(order), order);
  return scaled(k0 * k0, mpq_class(1, 4));
}

FormalSeries series_W1_double_sum(int order) {
  require_order(order);
  const int top = order + 2;
  ChainTables t(order, top);
  IntSeries six(order);
  for (int l1 = 1; l1 <= top; ++l1) {
    six += t.K(l1, l1).pow(3) - t.K(l1 - 1, l1 - 1).pow(3);
    for (int l2 = 1; l2 < l1; ++l2) {
      IntSeries d = t.K(l1, l2).pow(3) - t.K(l1 - 1, l2 - 1).pow(3);
      six += d + d;
    }
  }
  return scaled(six, mpq_class(1, 6));
}

FormalSeries series_W2_double_sum(int order) {
  require_order(order);
  const int top = order + 2;
  ChainTables t(order, top);
  IntSeries four(order);
  for (int l = 1; l <= top; ++l) {
    const IntSeries a = t.K(l, l), b = t.K(l - 1, l - 1);
    four += a * a - b * b;
  }
  return scaled(four, mpq_class(1, 4));
}

FormalSeries series_W1_closed(int order) {
  require_order(order);
  const IntSeries x = solve_x_int(order);
  const IntSeries o = one(order);
  const IntSeries x2 = x * x, x3 = x2 * x;
  const IntSeries num = x3 * (o + x + x + x2 + x2 - x3 - x3);
  const IntSeries omx = o - x, opx = o + x;
  const IntSeries den = omx.pow(4) * opx * opx;
  return scaled(num / den, mpq_class(1, 2));
}

FormalSeries series_W2_closed(int order) {
  require_order(order);
  const IntSeries x = solve_x_int(order);
  const IntSeries o = one(order);
  const IntSeries t = o + x + x;
  const IntSeries omx = o - x, opx = o + x;
  return scaled(x * x * t * t / (omx * omx * opx * opx), mpq_class(1, 4));
}

Q1Series series_Q1(int order) {
  Q1Series q;
  q.pointed = series_W1(order) + series_W2(order);
  q.rooted = q.pointed * mpq_class(4);
  return q;
}

FormalSeries series_Q1_closed(int order) {
  require_order(order);
  const IntSeries x = solve_x_int(order);
  const IntSeries o = one(order);
  const IntSeries x2 = x * x;
  const IntSeries num = x2 * (o + x * mpz_class(4) + x2);
  const IntSeries omx = o - x, opx = o + x;
  return scaled(num / (omx.pow(4) * opx * opx), mpq_class(1, 4));
}

namespace {

IdentityCheck fail(std::string where) { return IdentityCheck{false, std::move(where)}; }

}  // namespace

IdentityCheck check_R_recursion(const std::vector<IntSeries>& R) {
  if (R.size() < 3) throw std::invalid_argument("need R_0 .. R_2 at least");
  const IntSeries o = one(R[0].order());
  for (std::size_t l = 1; l + 1 < R.size(); ++l) {
    // R_l (1 - g(R_{l+1} + R_l + R_{l-1})) = 1
    const IntSeries s = (R[l + 1] + R[l] + R[l - 1]).shifted(1);
    if (!(R[l] * (o - s) == o)) return fail("R recursion at l=" + std::to_string(l));
  }
  if (!R[0].is_zero()) return fail("R_0 != 0");
  return {};
}

IdentityCheck check_R_recursion(int lmax, int order) {
  ChainTables t(order, lmax + 1);
  const IntSeries o = one(order);
  std::vector<IntSeries> R;
  for (int l = 0; l <= lmax + 1; ++l) R.push_back(t.R(l));
  if (auto r = check_R_recursion(R); !r.ok) return r;
  // closed form of R itself
  const IntSeries lhs = t.R();
  const IntSeries rhs = o + (lhs * lhs).shifted(1) * mpz_class(3);
  if (!(lhs == rhs)) return fail("R = 1 + 3gR^2");
  return {};
}

IdentityCheck check_X_recursion(int lmax, int order) {
  ChainTables t(order, lmax + 1);
  const IntSeries o = one(order);
  for (int l = 1; l <= lmax; ++l) {
    const IntSeries inner = o + (t.R(l + 1) * t.R(l + 1) * t.X(l + 1)).shifted(1);
    const IntSeries rhs = o + (t.R(l) * t.R(l) * t.X(l) * inner).shifted(1);
    if (!(t.X(l) == rhs)) return fail("X recursion at l=" + std::to_string(l));
  }
  return {};
}

IdentityCheck check_Xtilde_forms(int lmax, int order) {
  for (int l1 = 1; l1 <= lmax; ++l1)
    for (int l2 = 1; l2 <= l1; ++l2)
      if (!(series_Xtilde(l1, l2, order) == series_Xtilde_closed(l1, l2, order)))
        return fail("Xtilde product vs closed form at (" + std::to_string(l1) + "," + std::to_string(l2) + ")");
  return {};
}

IdentityCheck check_K_recursion(int lmax, int order) {
  ChainTables t(order, lmax + 1);
  for (int a = 1; a <= lmax; ++a)
    for (int b = 1; b <= lmax; ++b) {
      IntSeries sum(order);
      for (int ap = a - 1; ap <= a + 1; ++ap) {
        IntSeries term = t.K(ap, b);
        if (ap == b) term[0] += 1;
        sum += t.R(ap) * term;
      }
      const IntSeries rhs = (t.R(a) * sum).shifted(1);
      if (!(t.K(a, b) == rhs)) return fail("K recursion at (" + std::to_string(a) + "," + std::to_string(b) + ")");
    }
  return {};
}

IdentityCheck check_K_symmetry(int lmax, int order) {
  ChainTables t(order, lmax);
  for (int a = 1; a <= lmax; ++a)
    for (int b = 1; b < a; ++b)
      if (!(t.K(a, b) == t.K(b, a))) return fail("K symmetry at (" + std::to_string(a) + "," + std::to_string(b) + ")");
  return {};
}

IdentityCheck check_kp_recursion(int pmax, int order) {
  const IntSeries x = solve_x_int(order);
  const IntSeries R = series_R_int(order);
  const IntSeries gR2 = (R * R).shifted(1);
  for (int p = -pmax; p <= pmax; ++p) {
    IntSeries sum = kp_int(p - 1, x, order) + kp_int(p, x, order) + kp_int(p + 1, x, order);
    if (p >= -1 && p <= 1) sum[0] += 1;
    if (!(kp_int(p, x, order) == gR2 * sum)) return fail("k_p recursion at p=" + std::to_string(p));
    if (!(kp_int(p, x, order) == kp_int(-p, x, order))) return fail("k_p symmetry at p=" + std::to_string(p));
  }
  return {};
}

std::map<int, mpz_class> exact_min_skeleton_distribution(int n) {
  if (n < 2) throw std::invalid_argument("exact_min_skeleton_distribution needs n >= 2");
  ChainTables t(n, 2 * n + 1);
  // A[m] = 12 * weighted count of almost well-labeled 1-trees of size n whose
  // skeleton minimum is exactly m
  std::vector<mpz_class> A(2 * n + 2);
  for (int b = 1; b <= 2 * n; ++b) {
    for (int a = b; a <= 2 * n; ++a) {
      const int other = 2 * std::max(1, a - b);
      if ((a - b) + other > n) break;
      const int w = (a == b) ? 2 : 4;
      IntSeries S(n);
      mpz_class prev = 0;
      for (int m = b; m >= 1; --m) {
        if ((a + b - 2 * m) + other > n) break;
        if (m == b && a == b) S[0] -= 1;
        S += t.Xtilde(a, m) * t.Xtilde(b, m) * t.X(m);
        const mpz_class c = cube_coeff(S, n);
        A[m] += w * (c - prev);
        prev = c;
      }
    }
  }
  for (int l = 1; l <= 2 * n; ++l) {
    if (1 + 1 > n) break;
    IntSeries S(n);
    mpz_class prev = 0;
    for (int m = l; m >= 1; --m) {
      if (std::max(1, 2 * (l - m)) + 1 > n) break;
      if (m == l) S[0] -= 1;
      S += t.Xtilde(l, m) * t.Xtilde(l, m) * t.X(m);
      const mpz_class c = square_coeff(S, n);
      A[m] += 3 * (c - prev);
      prev = c;
    }
  }
  std::map<int, mpz_class> out;
  for (int m = 1; m <= n; ++m) {
    const mpz_class B12 = A[m] - A[m - 1];
    const mpz_class scaled = B12 * (2 * n);
    if (scaled % 12 != 0) throw std::logic_error("min-skeleton count is not integral");
    out[m] = scaled / 12;
  }
  return out;
}

}  // namespace torq::gf
