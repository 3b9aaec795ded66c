#include "torq/enumerate.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace torq::enumerate {

mpz_class CountTable::total() const {
  mpz_class s = 0;
  for (const auto& [k, c] : rows) s += c;
  return s;
}

std::map<int, mpz_class> CountTable::marginal(std::size_t column) const {
  std::map<int, mpz_class> out;
  for (const auto& [k, c] : rows) out[k.at(column)] += c;
  return out;
}

std::string CountTable::to_csv() const {
  std::ostringstream os;
  for (const auto& c : columns) os << c << ',';
  os << "count\n";
  for (const auto& [k, c] : rows) {
    for (int v : k) os << v << ',';
    os << c.get_str() << '\n';
  }
  return os.str();
}

namespace {

void check_cap(int n, int cap) {
  if (n > cap) throw std::invalid_argument("n = " + std::to_string(n) + " exceeds the enumeration cap " + std::to_string(cap));
}

// all perfect matchings of 0..2n-1
void for_each_matching(int n, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> m(2 * n, -1);
  std::function<void()> rec = [&]() {
    int i = 0;
    while (i < 2 * n && m[i] >= 0) ++i;
    if (i == 2 * n) {
      visit(m);
      return;
    }
    for (int j = i + 1; j < 2 * n; ++j) {
      if (m[j] >= 0) continue;
      m[i] = j;
      m[j] = i;
      rec();
      m[i] = m[j] = -1;
    }
  };
  rec();
}

int cycle_count_sigma(const std::vector<int>& m) {
  const int N = static_cast<int>(m.size());
  std::vector<char> seen(N, 0);
  int c = 0;
  for (int h = 0; h < N; ++h) {
    if (seen[h]) continue;
    ++c;
    for (int e = h; !seen[e]; e = (m[e] + 1) % N) seen[e] = 1;
  }
  return c;
}

// Every labeling with adjacent labels within 1 and minimum exactly 1, as
// per-vertex label vectors.
void for_each_labeling(const CombMap& m, const std::function<void(const std::vector<int>&)>& visit) {
  const int V = m.vertices();
  std::vector<int> order, pos(V, -1);
  order.push_back(0);
  pos[0] = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (HalfEdge h : m.rotation(order[i])) {
      const int u = m.vertex_of(m.alpha(h));
      if (pos[u] < 0) {
        pos[u] = static_cast<int>(order.size());
        order.push_back(u);
      }
    }
  // neighbours earlier in the order, per vertex
  std::vector<std::vector<int>> earlier(V);
  for (HalfEdge h = 0; h < m.half_edges(); ++h) {
    const int a = m.vertex_of(h), b = m.vertex_of(m.alpha(h));
    if (pos[b] < pos[a]) earlier[a].push_back(b);
  }
  std::vector<int> rel(V, 0), out(V);
  std::function<void(int)> rec = [&](int k) {
    if (k == V) {
      const int lo = *std::min_element(rel.begin(), rel.end());
      for (int v = 0; v < V; ++v) out[v] = rel[v] - lo + 1;
      visit(out);
      return;
    }
    const int v = order[k];
    const int ref = rel[earlier[v].front()];
    for (int d = -1; d <= 1; ++d) {
      const int l = ref + d;
      bool ok = true;
      for (int u : earlier[v])
        if (std::abs(rel[u] - l) > 1) {
          ok = false;
          break;
        }
      if (!ok) continue;
      rel[v] = l;
      rec(k + 1);
    }
  };
  rec(1);
}

int genus_vertices(int n, int genus) { return n + 1 - 2 * genus; }

}  // namespace

CombMap map_from_matching(const std::vector<int>& matching) {
  const int N = static_cast<int>(matching.size());
  std::vector<int> sigma(N);
  for (int h = 0; h < N; ++h) sigma[h] = (matching[h] + 1) % N;
  return CombMap(matching, sigma);
}

void for_each_rooted(int n, int genus, const std::function<void(const LabeledOneTree&)>& visit) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  const int V = genus_vertices(n, genus);
  for_each_matching(n, [&](const std::vector<int>& mt) {
    if (cycle_count_sigma(mt) != V) return;
    const CombMap base = map_from_matching(mt);
    for_each_labeling(base, [&](const std::vector<int>& labels) { visit(LabeledOneTree{base.with_labels(labels), 0}); });
  });
}

void for_each_unrooted(int n, int genus, const std::function<void(const LabeledOneTree&, int)>& visit) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  const int N = 2 * n;
  const int V = genus_vertices(n, genus);
  std::vector<int> rotated(N);
  for_each_matching(n, [&](const std::vector<int>& mt) {
    if (cycle_count_sigma(mt) != V) return;
    std::vector<int> stab;
    for (int k = 0; k < N; ++k) {
      for (int i = 0; i < N; ++i) rotated[i] = ((mt[(i + k) % N] - k) % N + N) % N;
      if (rotated < mt) return;
      if (rotated == mt) stab.push_back(k);
    }
    const CombMap base = map_from_matching(mt);
    std::vector<int> at(N), shifted(N);
    for_each_labeling(base, [&](const std::vector<int>& labels) {
      for (int i = 0; i < N; ++i) at[i] = labels[base.vertex_of(i)];
      int aut = 0;
      for (int k : stab) {
        for (int i = 0; i < N; ++i) shifted[i] = at[(i + k) % N];
        if (shifted < at) return;
        if (shifted == at) ++aut;
      }
      visit(LabeledOneTree{base.with_labels(labels), 0}, aut);
    });
  });
}

CountTable enum_one_trees(int n, int cap) {
  check_cap(n, cap);
  if (n < 2) throw std::invalid_argument("genus-1 one-trees need n >= 2");
  CountTable t;
  t.columns = {"kind", "minskel", "rootlabel"};
  for_each_rooted(n, 1, [&](const LabeledOneTree& tr) {
    const Backbone b = backbone(tr);
    const int kind = b.kind == BackboneKind::generic ? 0 : 1;
    t.add({kind, b.min_label(), tr.map.label(tr.map.vertex_of(tr.root))});
  });
  return t;
}

CountTable enum_planted_trees(int l, int n, int cap) {
  check_cap(n, cap);
  CountTable t;
  t.columns = {"size"};
  for (int k = 0; k <= n; ++k) t.rows[{k}] = 0;
  if (l < 1) return t;  // R_0 = 0
  // depth-first walk around the tree: a stack of labels on the current branch
  std::vector<int> stack{l};
  std::function<void(int, int)> rec = [&](int used, int open) {
    // record the tree closed here (all open edges walked back)
    if (open == 0) t.rows[{used}] += 1;
    if (used < n) {
      const int top = stack.back();
      for (int d = -1; d <= 1; ++d) {
        if (top + d < 1) continue;
        stack.push_back(top + d);
        rec(used + 1, open + 1);
        stack.pop_back();
      }
    }
    if (open > 0) {
      const int top = stack.back();
      stack.pop_back();
      rec(used, open - 1);
      stack.push_back(top);
    }
  };
  rec(0, 0);
  return t;
}

CountTable marked_vertex_histogram(int n, int cap) {
  check_cap(n, cap);
  CountTable t;
  t.columns = {"label"};
  for_each_rooted(n, 1, [&](const LabeledOneTree& tr) {
    for (int v = 0; v < tr.map.vertices(); ++v) t.add({tr.map.label(v)});
  });
  return t;
}

mpq_class count_pointed_planar(int n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  mpz_class p3, binom;
  mpz_ui_pow_ui(p3.get_mpz_t(), 3, n);
  mpz_bin_uiui(binom.get_mpz_t(), 2 * n, n);
  mpq_class q(p3 * binom, mpz_class(2 * n) * (n + 1));
  q.canonicalize();
  return q;
}

mpq_class count_pointed_planar_enumerated(int n, int cap) {
  check_cap(n, cap);
  mpz_class rooted = 0;
  for_each_rooted(n, 0, [&](const LabeledOneTree&) { rooted += 1; });
  mpq_class q(rooted, 2 * n);
  q.canonicalize();
  return q;
}

mpz_class brute_force_rooted_count(int n, int genus) {
  if (n < 1 || n > 4) throw std::invalid_argument("brute force supports 1 <= n <= 4");
  const int N = 2 * n;
  std::vector<int> alpha(N);
  for (int h = 0; h < N; ++h) alpha[h] = h ^ 1;
  std::vector<int> sigma(N);
  std::iota(sigma.begin(), sigma.end(), 0);
  mpz_class weighted = 0;
  do {
    // one face under phi = sigma o alpha
    int len = 0;
    int h = 0;
    do {
      h = sigma[alpha[h]];
      ++len;
    } while (h != 0);
    if (len != N) continue;
    std::vector<char> seen(N, 0);
    int V = 0;
    for (int s = 0; s < N; ++s) {
      if (seen[s]) continue;
      ++V;
      for (int e = s; !seen[e]; e = sigma[e]) seen[e] = 1;
    }
    if (V != genus_vertices(n, genus)) continue;
    const CombMap m(alpha, sigma);
    long count = 0;
    for_each_labeling(m, [&](const std::vector<int>&) { ++count; });
    weighted += count;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  // labeled copies of an unrooted map: 2^n n! / |Aut|; corner rootings: 2n / |Aut|
  mpz_class fact = 1;
  for (int i = 2; i <= n; ++i) fact *= i;
  const mpz_class denom = (mpz_class(1) << n) * fact;
  mpz_class num = weighted * N;
  if (num % denom != 0) throw std::logic_error("brute-force count is not integral");
  return num / denom;
}

}  // namespace torq::enumerate
