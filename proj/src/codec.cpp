#include "torq/codec.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <string>

namespace torq {

void validate_one_tree(const LabeledOneTree& t, bool well_labeled) {
  const CombMap& m = t.map;
  if (m.faces() != 1) throw std::invalid_argument("one-tree must have exactly one face");
  if (!m.has_labels()) throw std::invalid_argument("one-tree must carry labels");
  if (t.root < 0 || t.root >= m.half_edges()) throw std::invalid_argument("root corner out of range");
  int lo = m.label(0);
  for (int v = 0; v < m.vertices(); ++v) {
    if (m.label(v) < 1) throw std::invalid_argument("labels must be >= 1");
    lo = std::min(lo, m.label(v));
  }
  for (HalfEdge h = 0; h < m.half_edges(); ++h)
    if (std::abs(m.label(m.vertex_of(h)) - m.label(m.vertex_of(m.alpha(h)))) > 1)
      throw std::invalid_argument("adjacent labels differ by more than 1");
  if (well_labeled && lo != 1) throw std::invalid_argument("minimum label must be 1");
}

std::vector<char> skeleton_half_edges(const CombMap& m) {
  std::vector<char> alive(m.half_edges(), 1);
  std::vector<int> deg(m.vertices());
  for (int v = 0; v < m.vertices(); ++v) deg[v] = m.degree(v);
  std::deque<int> leaves;
  for (int v = 0; v < m.vertices(); ++v)
    if (deg[v] == 1) leaves.push_back(v);
  while (!leaves.empty()) {
    const int v = leaves.front();
    leaves.pop_front();
    if (deg[v] != 1) continue;
    for (HalfEdge h : m.rotation(v)) {
      if (!alive[h]) continue;
      const HalfEdge a = m.alpha(h);
      alive[h] = alive[a] = 0;
      --deg[v];
      const int u = m.vertex_of(a);
      if (--deg[u] == 1) leaves.push_back(u);
      break;
    }
  }
  return alive;
}

LabeledOneTree skeleton(const LabeledOneTree& t) {
  const CombMap& m = t.map;
  const auto alive = skeleton_half_edges(m);
  std::vector<int> id(m.half_edges(), -1), back;
  for (HalfEdge h = 0; h < m.half_edges(); ++h)
    if (alive[h]) {
      id[h] = static_cast<int>(back.size());
      back.push_back(h);
    }
  if (back.empty()) throw std::invalid_argument("skeleton of a tree is empty");
  std::vector<int> alpha(back.size()), sigma(back.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    const HalfEdge h = back[i];
    alpha[i] = id[m.alpha(h)];
    HalfEdge s = m.sigma(h);
    while (!alive[s]) s = m.sigma(s);
    sigma[i] = id[s];
  }
  CombMap sk(alpha, sigma);
  std::vector<int> labels(sk.vertices());
  for (int v = 0; v < sk.vertices(); ++v) labels[v] = m.label(m.vertex_of(back[sk.vertex_half_edge(v)]));
  return LabeledOneTree{sk.with_labels(std::move(labels)), 0};
}

Backbone backbone(const LabeledOneTree& t) {
  const CombMap& m = t.map;
  if (m.genus() != 1) throw std::invalid_argument("backbone needs a genus-1 one-tree");
  const auto alive = skeleton_half_edges(m);
  std::vector<int> deg(m.vertices(), 0);
  for (HalfEdge h = 0; h < m.half_edges(); ++h)
    if (alive[h]) ++deg[m.vertex_of(h)];
  std::vector<int> branch;
  for (int v = 0; v < m.vertices(); ++v)
    if (deg[v] >= 3) branch.push_back(v);
  Backbone b;
  if (branch.size() == 1 && deg[branch[0]] == 4) {
    b.kind = BackboneKind::degenerate;
    b.v1 = b.v2 = branch[0];
  } else if (branch.size() == 2 && deg[branch[0]] == 3 && deg[branch[1]] == 3) {
    b.kind = BackboneKind::generic;
    b.v1 = branch[0];
    b.v2 = branch[1];
    if (m.label(b.v2) > m.label(b.v1)) std::swap(b.v1, b.v2);
  } else {
    throw std::logic_error("unexpected skeleton shape");
  }
  b.l1 = m.label(b.v1);
  b.l2 = m.label(b.v2);
  std::vector<char> used(m.half_edges(), 0);
  for (HalfEdge start : m.rotation(b.v1)) {
    if (!alive[start] || used[start]) continue;
    std::vector<int> chain{b.v1};
    HalfEdge h = start;
    while (true) {
      used[h] = 1;
      const HalfEdge a = m.alpha(h);
      used[a] = 1;
      const int u = m.vertex_of(a);
      chain.push_back(u);
      if (deg[u] != 2) break;
      HalfEdge nxt = m.sigma(a);
      while (!alive[nxt]) nxt = m.sigma(nxt);
      h = nxt;
    }
    if (chain.back() != b.v2) throw std::logic_error("chain does not end at the other branch vertex");
    b.chains.push_back(std::move(chain));
  }
  const std::size_t expected = b.kind == BackboneKind::generic ? 3 : 2;
  if (b.chains.size() != expected) throw std::logic_error("wrong number of backbone chains");
  for (const auto& c : b.chains) {
    int lo = m.label(c.front());
    for (int v : c) lo = std::min(lo, m.label(v));
    b.chain_minima.push_back(lo);
  }
  std::sort(b.chain_minima.rbegin(), b.chain_minima.rend());
  return b;
}

int min_skeleton_label(const LabeledOneTree& t) {
  const auto alive = skeleton_half_edges(t.map);
  int lo = -1;
  for (HalfEdge h = 0; h < t.map.half_edges(); ++h)
    if (alive[h]) {
      const int l = t.map.label(t.map.vertex_of(h));
      if (lo < 0 || l < lo) lo = l;
    }
  if (lo < 0) throw std::invalid_argument("map has an empty skeleton");
  return lo;
}

Decoded decode(const LabeledOneTree& t) {
  validate_one_tree(t, true);
  const CombMap& m = t.map;
  const int N = m.half_edges();
  Decoded d;
  d.corner_of.assign(N, -1);
  std::vector<HalfEdge> corner(N);
  std::vector<int> lab(N);
  {
    HalfEdge e = t.root;
    for (int j = 0; j < N; ++j) {
      corner[j] = e;
      d.corner_of[e] = j;
      lab[j] = m.label(m.vertex_of(e));
      e = m.phi(e);
    }
  }
  int maxl = 0;
  for (int l : lab) maxl = std::max(maxl, l);
  d.succ.assign(N, -1);
  {
    std::vector<int> next_at(maxl + 2, -1);
    for (int j = 2 * N - 1; j >= 0; --j) {
      const int jj = j % N;
      if (j < N && lab[jj] > 1) d.succ[jj] = next_at[lab[jj] - 1];
      next_at[lab[jj]] = jj;
    }
  }
  // arcs into each corner, ordered so the farthest in face order comes first
  std::vector<std::vector<int>> incoming(N);
  std::vector<int> to_origin;
  for (int j = 0; j < N; ++j) {
    if (d.succ[j] >= 0) incoming[d.succ[j]].push_back(j);
    else to_origin.push_back(j);
  }
  for (int j = 0; j < N; ++j) {
    auto& in = incoming[j];
    std::sort(in.begin(), in.end(), [&](int a, int b) { return (a - j + N) % N > (b - j + N) % N; });
  }
  std::vector<int> alpha(2 * N), sigma(2 * N, -1);
  for (int j = 0; j < N; ++j) {
    alpha[2 * j] = 2 * j + 1;
    alpha[2 * j + 1] = 2 * j;
  }
  auto close_cycle = [&](const std::vector<int>& cyc) {
    for (std::size_t i = 0; i < cyc.size(); ++i) sigma[cyc[i]] = cyc[(i + 1) % cyc.size()];
  };
  for (int v = 0; v < m.vertices(); ++v) {
    std::vector<int> cyc;
    for (HalfEdge e : m.rotation(v)) {
      const int j = d.corner_of[e];
      for (int i : incoming[j]) cyc.push_back(2 * i + 1);
      cyc.push_back(2 * j);
    }
    close_cycle(cyc);
  }
  std::vector<int> around_origin;
  for (auto it = to_origin.rbegin(); it != to_origin.rend(); ++it) around_origin.push_back(2 * *it + 1);
  close_cycle(around_origin);
  CombMap q(alpha, sigma);
  d.origin = q.vertex_of(around_origin.front());
  d.tree_vertex.assign(m.vertices(), -1);
  std::vector<int> labels(q.vertices(), 0);
  for (int v = 0; v < m.vertices(); ++v) {
    const int qv = q.vertex_of(2 * d.corner_of[m.vertex_half_edge(v)]);
    d.tree_vertex[v] = qv;
    labels[qv] = m.label(v);
  }
  d.quad = q.with_labels(std::move(labels));
  d.root_edge = Decoded::out_arc(0);
  return d;
}

LabeledOneTree encode(const CombMap& q, int origin, HalfEdge root_edge) {
  if (!is_bipartite(q)) throw std::invalid_argument("encode: map is not bipartite");
  for (int f = 0; f < q.faces(); ++f)
    if (q.face_walk(f).size() != 4) throw std::invalid_argument("encode: not a quadrangulation");
  const auto dist = bfs_distances(q, origin);
  if (root_edge < 0 || root_edge >= q.half_edges()) throw std::invalid_argument("encode: root edge out of range");
  {
    const int a = q.vertex_of(root_edge), b = q.vertex_of(q.alpha(root_edge));
    if (a == origin || dist[b] != dist[a] - 1) throw std::invalid_argument("encode: root edge must point toward the origin");
  }
  const int F = q.faces();
  // tree half-edge sitting in the quad corner K_q(f), if any
  std::vector<int> tree_at(q.half_edges(), -1);
  std::vector<int> tree_vertex_of(2 * F);
  for (int f = 0; f < F; ++f) {
    const auto w = q.face_walk(f);
    int lab[4];
    for (int i = 0; i < 4; ++i) lab[i] = dist[q.vertex_of(w[i])];
    int top = 0;
    for (int i = 1; i < 4; ++i)
      if (lab[i] > lab[top]) top = i;
    int a, b;
    if (lab[(top + 2) % 4] == lab[top]) {
      // (l, l+1, l, l+1): join the two higher corners
      a = top;
      b = (top + 2) % 4;
    } else {
      // (l, l+1, l+2, l+1): join the top corner to the corner before it in face order
      a = top;
      b = (top + 3) % 4;
    }
    tree_at[w[a]] = 2 * f;
    tree_at[w[b]] = 2 * f + 1;
    tree_vertex_of[2 * f] = q.vertex_of(w[a]);
    tree_vertex_of[2 * f + 1] = q.vertex_of(w[b]);
  }
  std::vector<int> alpha(2 * F), sigma(2 * F, -1);
  for (int f = 0; f < F; ++f) {
    alpha[2 * f] = 2 * f + 1;
    alpha[2 * f + 1] = 2 * f;
  }
  for (int v = 0; v < q.vertices(); ++v) {
    if (v == origin) continue;
    std::vector<int> cyc;
    for (HalfEdge h : q.rotation(v))
      if (tree_at[h] >= 0) cyc.push_back(tree_at[h]);
    if (cyc.empty()) throw std::invalid_argument("encode: vertex without tree edges");
    for (std::size_t i = 0; i < cyc.size(); ++i) sigma[cyc[i]] = cyc[(i + 1) % cyc.size()];
  }
  for (int s : sigma)
    if (s < 0) throw std::logic_error("encode: tree half-edge without rotation");
  CombMap tm(alpha, sigma);
  std::vector<int> labels(tm.vertices());
  for (int v = 0; v < tm.vertices(); ++v) labels[v] = dist[tree_vertex_of[tm.vertex_half_edge(v)]];
  LabeledOneTree t{tm.with_labels(std::move(labels)), -1};
  for (HalfEdge h = q.sigma(root_edge);; h = q.sigma(h)) {
    if (tree_at[h] >= 0) {
      t.root = tree_at[h];
      break;
    }
    if (h == root_edge) throw std::logic_error("encode: no tree corner around the root");
  }
  validate_one_tree(t, true);
  return t;
}

bool same_rooted(const LabeledOneTree& a, const LabeledOneTree& b) {
  return canonical_code(a.map, a.root) == canonical_code(b.map, b.root);
}

Cycle successor_loop(const LabeledOneTree& t, int v) { return successor_loop(t, decode(t), v); }

Cycle successor_loop(const LabeledOneTree& t, const Decoded& d, int v) {
  const CombMap& m = t.map;
  const auto alive = skeleton_half_edges(m);
  const auto rot = m.rotation(v);
  const int k = static_cast<int>(rot.size());
  // sector of corner K(rot[i]) = first skeleton half-edge at or after position i
  std::vector<int> sector(k, -1);
  for (int i = 0; i < k; ++i)
    for (int s = 0; s < k; ++s)
      if (alive[rot[(i + s) % k]]) {
        sector[i] = (i + s) % k;
        break;
      }
  if (sector[0] < 0) throw std::invalid_argument("successor_loop: vertex not on the skeleton");
  std::vector<int> firsts;  // one corner per sector
  std::vector<int> seen_sector;
  for (int i = 0; i < k; ++i)
    if (std::find(seen_sector.begin(), seen_sector.end(), sector[i]) == seen_sector.end()) {
      seen_sector.push_back(sector[i]);
      firsts.push_back(i);
    }
  if (firsts.size() < 2) throw std::invalid_argument("successor_loop: vertex has a single skeleton sector");
  const auto cls = homology_classes(d.quad);
  auto chain = [&](int i) {
    std::vector<HalfEdge> walk;
    for (int j = d.corner_of[rot[i]]; j >= 0; j = d.succ[j]) walk.push_back(Decoded::out_arc(j));
    return walk;
  };
  for (std::size_t x = 0; x < firsts.size(); ++x)
    for (std::size_t y = x + 1; y < firsts.size(); ++y) {
      Cycle c;
      c.walk = chain(firsts[x]);
      const auto back = chain(firsts[y]);
      for (auto it = back.rbegin(); it != back.rend(); ++it) c.walk.push_back(d.quad.alpha(*it));
      c.length = static_cast<int>(c.walk.size());
      c.cls = class_of_walk(cls, c.walk);
      if (!c.cls.is_zero()) return c;
    }
  throw std::logic_error("successor_loop: all sector pairs give contractible loops");
}

}  // namespace torq
