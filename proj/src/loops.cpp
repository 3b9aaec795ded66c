#include "torq/loops.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace torq {

bool is_multiple_of(HomologyClass c, HomologyClass base) {
  if (base.is_zero()) return c.is_zero();
  if (static_cast<long long>(c.a) * base.b - static_cast<long long>(c.b) * base.a != 0) return false;
  if (base.a != 0) return c.a % base.a == 0;
  return c.b % base.b == 0;
}

std::vector<HomologyClass> homology_classes(const CombMap& m) {
  if (m.genus() != 1) throw std::invalid_argument("homology classes are implemented for genus 1 only");
  const int n = m.half_edges();
  std::vector<char> tree(n, 0);
  {
    std::vector<char> seen(m.vertices(), 0);
    std::deque<int> q{0};
    seen[0] = 1;
    while (!q.empty()) {
      const int v = q.front();
      q.pop_front();
      for (HalfEdge h : m.rotation(v)) {
        const int u = m.vertex_of(m.alpha(h));
        if (!seen[u]) {
          seen[u] = 1;
          tree[h] = tree[m.alpha(h)] = 1;
          q.push_back(u);
        }
      }
    }
  }
  // spanning tree of the dual through non-tree edges
  std::vector<HalfEdge> parent_edge(m.faces(), -1);
  std::vector<int> face_order;
  std::vector<char> cotree(n, 0);
  {
    std::vector<char> seen(m.faces(), 0);
    seen[0] = 1;
    face_order.push_back(0);
    for (std::size_t i = 0; i < face_order.size(); ++i) {
      const int f = face_order[i];
      for (HalfEdge h : m.face_walk(f)) {
        if (tree[h]) continue;
        const int f2 = m.face_of(m.alpha(h));
        if (!seen[f2]) {
          seen[f2] = 1;
          parent_edge[f2] = m.alpha(h);
          cotree[h] = cotree[m.alpha(h)] = 1;
          face_order.push_back(f2);
        }
      }
    }
  }
  std::vector<HomologyClass> cls(n);
  int generators = 0;
  for (HalfEdge h = 0; h < n; ++h) {
    if (tree[h] || cotree[h] || h > m.alpha(h)) continue;
    const HomologyClass basis = generators == 0 ? HomologyClass{1, 0} : HomologyClass{0, 1};
    ++generators;
    cls[h] = basis;
    cls[m.alpha(h)] = -basis;
  }
  if (generators != 2) throw std::logic_error("tree-cotree decomposition left an unexpected number of edges");
  for (auto it = face_order.rbegin(); it != face_order.rend(); ++it) {
    const int f = *it;
    const HalfEdge p = parent_edge[f];
    if (p < 0) continue;
    HomologyClass s;
    for (HalfEdge h : m.face_walk(f))
      if (h != p) s += cls[h];
    cls[p] = -s;
    cls[m.alpha(p)] = s;
  }
  for (int f = 0; f < m.faces(); ++f) {
    HomologyClass s;
    for (HalfEdge h : m.face_walk(f)) s += cls[h];
    if (!s.is_zero()) throw std::logic_error("face boundary with nonzero class");
  }
  return cls;
}

HomologyClass class_of_walk(const std::vector<HomologyClass>& classes, const std::vector<HalfEdge>& walk) {
  HomologyClass s;
  for (HalfEdge h : walk) s += classes.at(h);
  return s;
}

bool is_closed_walk_through(const CombMap& m, const std::vector<HalfEdge>& walk, int v) {
  if (walk.empty()) return false;
  int at = v;
  for (HalfEdge h : walk) {
    if (m.vertex_of(h) != at) return false;
    at = m.vertex_of(m.alpha(h));
  }
  return at == v;
}

namespace {

struct CoverSearch {
  const CombMap& m;
  std::vector<HomologyClass> cls;

  struct State {
    int vertex;
    HomologyClass c;
    int dist;
    int parent;      // state index, -1 at the start
    HalfEdge via;    // half-edge taken from the parent
  };

  static std::uint64_t key(int v, HomologyClass c) {
    constexpr std::int64_t off = 1 << 20;
    return static_cast<std::uint64_t>(v) | (static_cast<std::uint64_t>(c.a + off) << 22) |
           (static_cast<std::uint64_t>(c.b + off) << 43);
  }

  std::vector<HalfEdge> path_to(const std::vector<State>& states, int s) const {
    std::vector<HalfEdge> p;
    for (; states[s].parent >= 0; s = states[s].parent) p.push_back(states[s].via);
    std::reverse(p.begin(), p.end());
    return p;
  }

  // shortest closed walk through v whose class satisfies accept(class)
  template <class Accept>
  Cycle run(int v, Accept accept) const {
    std::vector<State> states;
    std::unordered_map<std::uint64_t, int> index;
    std::vector<std::vector<int>> lifts(m.vertices());
    states.push_back({v, {}, 0, -1, -1});
    index.emplace(key(v, {}), 0);
    lifts[v].push_back(0);
    int best = std::numeric_limits<int>::max();
    int best_s = -1, best_t = -1;
    std::vector<int> frontier{0};
    int level = 0;
    while (!frontier.empty()) {
      if (best != std::numeric_limits<int>::max() && 2 * level >= best - 1) break;
      std::vector<int> next;
      for (int s : frontier) {
        const int sv = states[s].vertex;
        const HomologyClass sc = states[s].c;
        const HalfEdge h0 = m.vertex_half_edge(sv);
        HalfEdge h = h0;
        do {
          const int u = m.vertex_of(m.alpha(h));
          const HomologyClass uc = sc + cls[h];
          const auto k = key(u, uc);
          if (!index.count(k)) {
            const int t = static_cast<int>(states.size());
            states.push_back({u, uc, level + 1, s, h});
            index.emplace(k, t);
            for (int o : lifts[u]) {
              const HomologyClass diff = uc - states[o].c;
              if (!accept(diff)) continue;
              const int len = level + 1 + states[o].dist;
              if (len < best) {
                best = len;
                best_s = t;
                best_t = o;
              }
            }
            lifts[u].push_back(t);
            next.push_back(t);
          }
          h = m.sigma(h);
        } while (h != h0);
      }
      frontier = std::move(next);
      ++level;
    }
    if (best_s < 0) throw std::logic_error("no admissible closed walk found");
    Cycle c;
    c.walk = path_to(states, best_s);
    std::vector<HalfEdge> back = path_to(states, best_t);
    for (auto it = back.rbegin(); it != back.rend(); ++it) c.walk.push_back(m.alpha(*it));
    c.length = static_cast<int>(c.walk.size());
    c.cls = class_of_walk(cls, c.walk);
    return c;
  }
};

}  // namespace

Cycle shortest_noncontractible_through(const CombMap& m, int v) {
  if (v < 0 || v >= m.vertices()) throw std::out_of_range("vertex");
  CoverSearch s{m, homology_classes(m)};
  Cycle c = s.run(v, [](HomologyClass d) { return !d.is_zero(); });
  if (c.cls.is_zero() || !is_closed_walk_through(m, c.walk, v)) throw std::logic_error("invalid shortest loop");
  return c;
}

Cycle second_shortest_noncontractible_through(const CombMap& m, int v, const Cycle& first) {
  if (v < 0 || v >= m.vertices()) throw std::out_of_range("vertex");
  CoverSearch s{m, homology_classes(m)};
  const HomologyClass c1 = class_of_walk(s.cls, first.walk);
  if (c1.is_zero()) throw std::invalid_argument("first loop is contractible");
  Cycle c = s.run(v, [c1](HomologyClass d) { return !is_multiple_of(d, c1); });
  if (is_multiple_of(c.cls, c1) || !is_closed_walk_through(m, c.walk, v)) throw std::logic_error("invalid second loop");
  return c;
}

}  // namespace torq
