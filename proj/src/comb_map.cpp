#include "torq/comb_map.hpp"

#include <deque>
#include <stdexcept>
#include <string>

namespace torq {

CombMap::CombMap(std::vector<int> alpha, std::vector<int> sigma) : alpha_(std::move(alpha)), sigma_(std::move(sigma)) {
  build();
}

CombMap::CombMap(std::vector<int> alpha, std::vector<int> sigma, std::vector<int> labels)
    : alpha_(std::move(alpha)), sigma_(std::move(sigma)) {
  build();
  *this = with_labels(std::move(labels));
}

CombMap CombMap::with_labels(std::vector<int> labels) const {
  if (static_cast<int>(labels.size()) != vertices()) throw std::invalid_argument("one label per vertex required");
  for (int l : labels)
    if (l < 0) throw std::invalid_argument("labels must be non-negative");
  CombMap m = *this;
  m.labels_ = std::move(labels);
  return m;
}

void CombMap::build() {
  const int n = static_cast<int>(alpha_.size());
  if (n == 0 || n % 2 != 0) throw std::invalid_argument("need a positive even number of half-edges");
  if (static_cast<int>(sigma_.size()) != n) throw std::invalid_argument("alpha and sigma sizes differ");
  for (int h = 0; h < n; ++h) {
    const int a = alpha_[h];
    if (a < 0 || a >= n || a == h || alpha_[a] != h) throw std::invalid_argument("alpha is not a fixed-point-free involution");
  }
  sigma_inv_.assign(n, -1);
  for (int h = 0; h < n; ++h) {
    const int s = sigma_[h];
    if (s < 0 || s >= n || sigma_inv_[s] != -1) throw std::invalid_argument("sigma is not a permutation");
    sigma_inv_[s] = h;
  }
  vertex_of_.assign(n, -1);
  vertex_first_.clear();
  for (int h = 0; h < n; ++h) {
    if (vertex_of_[h] != -1) continue;
    const int v = static_cast<int>(vertex_first_.size());
    vertex_first_.push_back(h);
    for (int e = h; vertex_of_[e] == -1; e = sigma_[e]) vertex_of_[e] = v;
  }
  face_of_.assign(n, -1);
  face_first_.clear();
  for (int h = 0; h < n; ++h) {
    if (face_of_[h] != -1) continue;
    const int f = static_cast<int>(face_first_.size());
    face_first_.push_back(h);
    for (int e = h; face_of_[e] == -1; e = phi(e)) face_of_[e] = f;
  }
  // connectivity
  std::vector<char> seen(vertices(), 0);
  std::deque<int> queue{0};
  seen[0] = 1;
  int count = 1;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    const int h0 = vertex_first_[v];
    int h = h0;
    do {
      const int u = vertex_of_[alpha_[h]];
      if (!seen[u]) {
        seen[u] = 1;
        ++count;
        queue.push_back(u);
      }
      h = sigma_[h];
    } while (h != h0);
  }
  if (count != vertices()) throw std::invalid_argument("map is not connected");
  if ((2 - vertices() + edges() - faces()) % 2 != 0) throw std::logic_error("odd Euler characteristic");
}

int CombMap::degree(int v) const {
  int d = 0;
  const int h0 = vertex_first_.at(v);
  int h = h0;
  do {
    ++d;
    h = sigma_[h];
  } while (h != h0);
  return d;
}

std::vector<HalfEdge> CombMap::rotation(int v) const {
  std::vector<HalfEdge> out;
  const int h0 = vertex_first_.at(v);
  int h = h0;
  do {
    out.push_back(h);
    h = sigma_[h];
  } while (h != h0);
  return out;
}

std::vector<HalfEdge> CombMap::face_walk(int f) const {
  std::vector<HalfEdge> out;
  const int h0 = face_first_.at(f);
  int h = h0;
  do {
    out.push_back(h);
    h = phi(h);
  } while (h != h0);
  return out;
}

int CombMap::genus() const { return (2 - vertices() + edges() - faces()) / 2; }

int genus(const CombMap& m) { return m.genus(); }

bool is_bipartite(const CombMap& m) {
  std::vector<int> color(m.vertices(), -1);
  for (int s = 0; s < m.vertices(); ++s) {
    if (color[s] != -1) continue;
    color[s] = 0;
    std::deque<int> q{s};
    while (!q.empty()) {
      const int v = q.front();
      q.pop_front();
      for (HalfEdge h : m.rotation(v)) {
        const int u = m.vertex_of(m.alpha(h));
        if (color[u] == -1) {
          color[u] = 1 - color[v];
          q.push_back(u);
        } else if (color[u] == color[v]) {
          return false;
        }
      }
    }
  }
  return true;
}

std::vector<int> bfs_distances(const CombMap& m, int origin) {
  if (origin < 0 || origin >= m.vertices()) throw std::out_of_range("origin vertex");
  std::vector<int> d(m.vertices(), -1);
  d[origin] = 0;
  std::deque<int> q{origin};
  while (!q.empty()) {
    const int v = q.front();
    q.pop_front();
    for (HalfEdge h : m.rotation(v)) {
      const int u = m.vertex_of(m.alpha(h));
      if (d[u] == -1) {
        d[u] = d[v] + 1;
        q.push_back(u);
      }
    }
  }
  return d;
}

std::vector<int> canonical_code(const CombMap& m, HalfEdge root) {
  const int n = m.half_edges();
  if (root < 0 || root >= n) throw std::out_of_range("root half-edge");
  std::vector<int> id(n, -1), order;
  order.reserve(n);
  id[root] = 0;
  order.push_back(root);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const int h = order[i];
    for (int nb : {m.sigma(h), m.alpha(h)}) {
      if (id[nb] == -1) {
        id[nb] = static_cast<int>(order.size());
        order.push_back(nb);
      }
    }
  }
  std::vector<int> code;
  code.reserve(3 * n + 1);
  code.push_back(n);
  for (int h : order) {
    code.push_back(id[m.sigma(h)]);
    code.push_back(id[m.alpha(h)]);
    code.push_back(m.has_labels() ? m.label(m.vertex_of(h)) : 0);
  }
  return code;
}

}  // namespace torq
