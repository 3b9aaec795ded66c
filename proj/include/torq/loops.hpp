#pragma once

#include "torq/comb_map.hpp"

#include <vector>

namespace torq {

struct HomologyClass {
  int a = 0;
  int b = 0;

  bool is_zero() const { return a == 0 && b == 0; }
  HomologyClass& operator+=(HomologyClass o) {
    a += o.a;
    b += o.b;
    return *this;
  }
  friend HomologyClass operator+(HomologyClass x, HomologyClass y) { return x += y; }
  friend HomologyClass operator-(HomologyClass x) { return {-x.a, -x.b}; }
  friend HomologyClass operator-(HomologyClass x, HomologyClass y) { return x + (-y); }
  friend bool operator==(HomologyClass, HomologyClass) = default;
};

// true when c = k * base for some integer k (k = 0 included)
bool is_multiple_of(HomologyClass c, HomologyClass base);

// Class per half-edge from a tree-cotree decomposition; class(alpha(h)) = -class(h).
// Throws std::invalid_argument unless the genus is 1.
std::vector<HomologyClass> homology_classes(const CombMap& m);

HomologyClass class_of_walk(const std::vector<HomologyClass>& classes, const std::vector<HalfEdge>& walk);
// consecutive half-edges connect and the walk starts and ends at v
bool is_closed_walk_through(const CombMap& m, const std::vector<HalfEdge>& walk, int v);

struct Cycle {
  int length = 0;
  std::vector<HalfEdge> walk;  // oriented half-edges, each leaving the current vertex
  HomologyClass cls;
};

// BFS on the homology cover; ties resolve to the first pair met in BFS order.
Cycle shortest_noncontractible_through(const CombMap& m, int v);
Cycle second_shortest_noncontractible_through(const CombMap& m, int v, const Cycle& first);

}  // namespace torq
