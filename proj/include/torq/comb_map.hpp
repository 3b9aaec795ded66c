#pragma once

#include <cstdint>
#include <vector>

namespace torq {

using HalfEdge = int;

// Rotation system on half-edges 0..2E-1. alpha pairs half-edges into edges,
// sigma turns counterclockwise around a vertex, faces are orbits of
// phi = sigma o alpha. Vertex ids follow the first half-edge of each sigma
// orbit in increasing half-edge order.
class CombMap {
 public:
  CombMap() = default;
  CombMap(std::vector<int> alpha, std::vector<int> sigma);
  // labels indexed by vertex id (see above); all must be positive
  CombMap(std::vector<int> alpha, std::vector<int> sigma, std::vector<int> labels);

  int half_edges() const { return static_cast<int>(alpha_.size()); }
  int edges() const { return half_edges() / 2; }
  int vertices() const { return static_cast<int>(vertex_first_.size()); }
  int faces() const { return static_cast<int>(face_first_.size()); }

  HalfEdge alpha(HalfEdge h) const { return alpha_[h]; }
  HalfEdge sigma(HalfEdge h) const { return sigma_[h]; }
  HalfEdge sigma_inv(HalfEdge h) const { return sigma_inv_[h]; }
  HalfEdge phi(HalfEdge h) const { return sigma_[alpha_[h]]; }

  int vertex_of(HalfEdge h) const { return vertex_of_[h]; }
  int face_of(HalfEdge h) const { return face_of_[h]; }
  HalfEdge vertex_half_edge(int v) const { return vertex_first_[v]; }
  HalfEdge face_half_edge(int f) const { return face_first_[f]; }
  int degree(int v) const;
  std::vector<HalfEdge> rotation(int v) const;   // ccw, starting at vertex_half_edge(v)
  std::vector<HalfEdge> face_walk(int f) const;  // phi orbit starting at face_half_edge(f)

  bool has_labels() const { return !labels_.empty(); }
  int label(int v) const { return labels_.at(v); }
  const std::vector<int>& labels() const { return labels_; }
  CombMap with_labels(std::vector<int> labels) const;

  const std::vector<int>& alpha_array() const { return alpha_; }
  const std::vector<int>& sigma_array() const { return sigma_; }

  int genus() const;

 private:
  void build();

  std::vector<int> alpha_, sigma_, sigma_inv_;
  std::vector<int> vertex_of_, vertex_first_;
  std::vector<int> face_of_, face_first_;
  std::vector<int> labels_;
};

int genus(const CombMap& m);
bool is_bipartite(const CombMap& m);
std::vector<int> bfs_distances(const CombMap& m, int origin);

// Root-preserving isomorphism invariant: equal codes iff the rooted (labeled) maps are isomorphic.
std::vector<int> canonical_code(const CombMap& m, HalfEdge root);

}  // namespace torq
