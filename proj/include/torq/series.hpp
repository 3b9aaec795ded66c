#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace torq {

namespace detail {

inline void addmul(mpz_class& acc, const mpz_class& a, const mpz_class& b) {
  mpz_addmul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}
inline void submul(mpz_class& acc, const mpz_class& a, const mpz_class& b) {
  mpz_submul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}
template <class T>
void addmul(T& acc, const T& a, const T& b) {
  acc += a * b;
}
template <class T>
void submul(T& acc, const T& a, const T& b) {
  acc -= a * b;
}

inline bool is_zero(const mpz_class& c) { return sgn(c) == 0; }
inline bool is_zero(const mpq_class& c) { return sgn(c) == 0; }
inline bool is_zero(double c) { return c == 0.0; }

// exact division used by inverse(); integer series need a unit constant term
inline mpz_class divide_exact(const mpz_class& a, const mpz_class& unit) {
  return unit > 0 ? mpz_class(a) : mpz_class(-a);
}
inline mpq_class divide_exact(const mpq_class& a, const mpq_class& b) { return a / b; }
inline double divide_exact(double a, double b) { return a / b; }

inline bool is_unit(const mpz_class& c) { return c == 1 || c == -1; }
inline bool is_unit(const mpq_class& c) { return sgn(c) != 0; }
inline bool is_unit(double c) { return c != 0.0; }

inline double to_double(const mpz_class& c) { return c.get_d(); }
inline double to_double(const mpq_class& c) { return c.get_d(); }
inline double to_double(double c) { return c; }

}  // namespace detail

// Truncated power series sum_{k<=order} c_k t^k. Operations keep the smaller order.
template <class Coeff>
class PowerSeries {
 public:
  using value_type = Coeff;

  PowerSeries() : c_(1) {}
  explicit PowerSeries(int order) : c_(checked(order) + 1) {}
  PowerSeries(int order, std::vector<Coeff> coeffs) : c_(std::move(coeffs)) {
    c_.resize(checked(order) + 1);
  }

  static PowerSeries constant(const Coeff& v, int order) {
    PowerSeries s(order);
    s.c_[0] = v;
    return s;
  }
  static PowerSeries monomial(int power, const Coeff& v, int order) {
    PowerSeries s(order);
    if (power < 0) throw std::invalid_argument("negative power");
    if (power <= order) s.c_[power] = v;
    return s;
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  const Coeff& operator[](int k) const { return c_.at(k); }
  Coeff& operator[](int k) { return c_.at(k); }
  const std::vector<Coeff>& coeffs() const { return c_; }

  // index of the first nonzero coefficient, order()+1 for the zero series
  int valuation() const {
    for (int k = 0; k <= order(); ++k)
      if (!detail::is_zero(c_[k])) return k;
    return order() + 1;
  }
  bool is_zero() const { return valuation() > order(); }

  PowerSeries truncated(int order) const {
    PowerSeries s(order);
    for (int k = 0; k <= std::min(order, this->order()); ++k) s.c_[k] = c_[k];
    return s;
  }

  // multiply by t^k, keeping the order
  PowerSeries shifted(int k) const {
    PowerSeries s(order());
    for (int i = 0; i + k <= order(); ++i) s.c_[i + k] = c_[i];
    return s;
  }
  // divide by t^k; the dropped coefficients must vanish. Order drops by k.
  PowerSeries divided_by_power(int k) const {
    if (k > order()) throw std::invalid_argument("divided_by_power: k exceeds order");
    for (int i = 0; i < k; ++i)
      if (!detail::is_zero(c_[i])) throw std::domain_error("divided_by_power: nonzero low coefficient");
    PowerSeries s(order() - k);
    for (int i = k; i <= order(); ++i) s.c_[i - k] = c_[i];
    return s;
  }

  PowerSeries& operator+=(const PowerSeries& o) {
    shrink_to(o.order());
    for (int k = 0; k <= order(); ++k) c_[k] += o.c_[k];
    return *this;
  }
  PowerSeries& operator-=(const PowerSeries& o) {
    shrink_to(o.order());
    for (int k = 0; k <= order(); ++k) c_[k] -= o.c_[k];
    return *this;
  }
  PowerSeries& operator*=(const Coeff& v) {
    for (auto& c : c_) c *= v;
    return *this;
  }
  PowerSeries& operator*=(const PowerSeries& o) {
    *this = *this * o;
    return *this;
  }
  PowerSeries& operator/=(const PowerSeries& o) {
    *this = *this / o;
    return *this;
  }

  friend PowerSeries operator+(PowerSeries a, const PowerSeries& b) { return a += b; }
  friend PowerSeries operator-(PowerSeries a, const PowerSeries& b) { return a -= b; }
  friend PowerSeries operator-(PowerSeries a) {
    for (auto& c : a.c_) c = -c;
    return a;
  }
  friend PowerSeries operator*(PowerSeries a, const Coeff& v) { return a *= v; }
  friend PowerSeries operator*(const Coeff& v, PowerSeries a) { return a *= v; }

  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
    const int n = std::min(a.order(), b.order());
    PowerSeries out(n);
    const int va = a.valuation(), vb = b.valuation();
    for (int i = va; i <= n - vb; ++i) {
      if (detail::is_zero(a.c_[i])) continue;
      for (int j = vb; i + j <= n; ++j) detail::addmul(out.c_[i + j], a.c_[i], b.c_[j]);
    }
    return out;
  }

  PowerSeries inverse() const {
    if (!detail::is_unit(c_[0])) throw std::domain_error("inverse: constant term is not a unit");
    const int n = order();
    PowerSeries out(n);
    out.c_[0] = detail::divide_exact(Coeff(1), c_[0]);
    for (int k = 1; k <= n; ++k) {
      Coeff acc(0);
      for (int j = 1; j <= k; ++j)
        if (!detail::is_zero(c_[j])) detail::addmul(acc, c_[j], out.c_[k - j]);
      out.c_[k] = detail::divide_exact(Coeff(-acc), c_[0]);
    }
    return out;
  }

  friend PowerSeries operator/(const PowerSeries& a, const PowerSeries& b) { return a * b.inverse(); }

  PowerSeries pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    PowerSeries result = constant(Coeff(1), order());
    PowerSeries base = *this;
    while (e > 0) {
      if (e & 1) result *= base;
      e >>= 1;
      if (e) base *= base;
    }
    return result;
  }

  // this(inner(t)); inner must have zero constant term
  PowerSeries compose(const PowerSeries& inner) const {
    if (!detail::is_zero(inner.c_[0])) throw std::domain_error("compose: inner series has a constant term");
    const int n = std::min(order(), inner.order());
    PowerSeries result = constant(c_[n], n);
    PowerSeries in = inner.truncated(n);
    for (int k = n - 1; k >= 0; --k) {
      result = result * in;
      result.c_[0] += c_[k];
    }
    return result;
  }

  PowerSeries derivative() const {
    PowerSeries s(std::max(order() - 1, 0));
    for (int k = 1; k <= order(); ++k) s.c_[k - 1] = c_[k] * Coeff(k);
    return s;
  }

  // first index where the two series differ (up to the common order), or -1
  int first_difference(const PowerSeries& o) const {
    const int n = std::min(order(), o.order());
    for (int k = 0; k <= n; ++k)
      if (c_[k] != o.c_[k]) return k;
    return -1;
  }
  friend bool operator==(const PowerSeries& a, const PowerSeries& b) {
    return a.order() == b.order() && a.first_difference(b) < 0;
  }

  // numeric evaluation (Horner) at a real or complex point
  template <class T>
  T evaluate(T at) const {
    T acc(0);
    for (int k = order(); k >= 0; --k) acc = acc * at + T(detail::to_double(c_[k]));
    return acc;
  }

 private:
  static int checked(int order) {
    if (order < 0) throw std::invalid_argument("negative series order");
    return order;
  }
  void shrink_to(int order) {
    if (order < this->order()) c_.resize(order + 1);
  }

  std::vector<Coeff> c_;
};

using FormalSeries = PowerSeries<mpq_class>;
using IntSeries = PowerSeries<mpz_class>;

FormalSeries to_rational(const IntSeries& s);
// coefficientwise exact conversion; throws if some coefficient is not an integer
IntSeries to_integer(const FormalSeries& s);

std::string coeff_string(const mpq_class& q);  // always "p/q"
mpq_class parse_coeff(const std::string& text);

}  // namespace torq
