#pragma once

#include "torq/codec.hpp"

#include <gmpxx.h>

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace torq::enumerate {

struct CountTable {
  std::vector<std::string> columns;  // key column names
  std::map<std::vector<int>, mpz_class> rows;

  void add(const std::vector<int>& key, const mpz_class& count = 1) { rows[key] += count; }
  mpz_class total() const;
  // sum of counts grouped by one key column
  std::map<int, mpz_class> marginal(std::size_t column) const;
  std::string to_csv() const;
};

inline constexpr int kDefaultCap = 8;

// Unicellular maps with n edges as chord matchings of the face: half-edge i is
// corner i in face order, alpha = matching, sigma(h) = alpha(h) + 1 mod 2n.
CombMap map_from_matching(const std::vector<int>& matching);

// Every corner-rooted well-labeled one-face map of genus h with n edges, once each.
void for_each_rooted(int n, int genus, const std::function<void(const LabeledOneTree&)>& visit);
// One representative per unrooted class with its automorphism count (root
// rotations fixing the object); sum of 2n/aut over classes = rooted count.
void for_each_unrooted(int n, int genus, const std::function<void(const LabeledOneTree&, int aut)>& visit);

// key: (kind: 0 generic / 1 degenerate, min skeleton label, root corner label)
CountTable enum_one_trees(int n, int cap = kDefaultCap);
// key: (size) -> number of planted trees with root label l, labels >= 1
CountTable enum_planted_trees(int l, int n, int cap = 7);
// key: (label of the marked vertex)
CountTable marked_vertex_histogram(int n, int cap = kDefaultCap);

mpq_class count_pointed_planar(int n);
// corner-rooted genus-0 well-labeled trees divided by 2n, i.e. the 1/|Aut|-weighted count
mpq_class count_pointed_planar_enumerated(int n, int cap = 5);

// Independent generator: all sigma for fixed alpha, filtered to one face and
// the given genus, weighted back to corner-rooted counts. Feasible for n <= 4.
mpz_class brute_force_rooted_count(int n, int genus);

}  // namespace torq::enumerate
