#include "torq/series.hpp"

namespace torq {

FormalSeries to_rational(const IntSeries& s) {
  FormalSeries out(s.order());
  for (int k = 0; k <= s.order(); ++k) out[k] = mpq_class(s[k]);
  return out;
}

IntSeries to_integer(const FormalSeries& s) {
  IntSeries out(s.order());
  for (int k = 0; k <= s.order(); ++k) {
    if (s[k].get_den() != 1) throw std::domain_error("to_integer: non-integer coefficient at " + std::to_string(k));
    out[k] = s[k].get_num();
  }
  return out;
}

std::string coeff_string(const mpq_class& q) { return q.get_num().get_str() + "/" + q.get_den().get_str(); }

mpq_class parse_coeff(const std::string& text) {
  mpq_class q;
  if (q.set_str(text, 10) != 0) throw std::invalid_argument("bad rational: " + text);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
  q.canonicalize();
  return q;
}

}  // namespace torq
