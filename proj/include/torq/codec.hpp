#pragma once

#include "torq/comb_map.hpp"
#include "torq/loops.hpp"

#include <vector>

namespace torq {

// One-face map with positive labels, rooted at the corner K(root): the sector
// at vertex_of(root) from sigma_inv(root) ccw to root.
struct LabeledOneTree {
  CombMap map;
  HalfEdge root = 0;
};

// Throws std::invalid_argument when t is not a labeled one-face map
// (adjacent labels within 1, labels >= 1); well_labeled also demands min label 1.
void validate_one_tree(const LabeledOneTree& t, bool well_labeled);

enum class BackboneKind { generic, degenerate };

struct Backbone {
  BackboneKind kind = BackboneKind::generic;
  int l1 = 0, l2 = 0;                 // l1 >= l2; both equal l for degenerate
  int v1 = -1, v2 = -1;               // branch vertices (v2 = v1 when degenerate)
  std::vector<int> chain_minima;      // sorted descending, endpoints included
  std::vector<std::vector<int>> chains;  // vertex sequences from v1 to v2
  int min_label() const { return chain_minima.back(); }
};

// half-edges that survive recursive removal of degree-1 vertices
std::vector<char> skeleton_half_edges(const CombMap& m);
LabeledOneTree skeleton(const LabeledOneTree& t);
Backbone backbone(const LabeledOneTree& t);
int min_skeleton_label(const LabeledOneTree& t);

struct Decoded {
  CombMap quad;                  // labeled by distance to origin (origin has label 0)
  int origin = -1;
  HalfEdge root_edge = -1;       // successor arc of the root corner
  std::vector<int> corner_of;    // tree half-edge -> corner index in face order from the root
  std::vector<int> succ;         // corner index -> successor corner, -1 for the origin
  std::vector<int> tree_vertex;  // tree vertex -> quad vertex
  // quad half-edge of the arc leaving corner j
  static HalfEdge out_arc(int j) { return 2 * j; }
};

Decoded decode(const LabeledOneTree& t);
// q bipartite; origin a vertex of q; root_edge must leave a vertex other than the origin
// toward a vertex one step closer to it.
LabeledOneTree encode(const CombMap& q, int origin, HalfEdge root_edge);

bool same_rooted(const LabeledOneTree& a, const LabeledOneTree& b);

// Closed walk in decode(t).quad, from v to the origin and back along two
// successor chains started in distinct skeleton sectors at v.
Cycle successor_loop(const LabeledOneTree& t, int v);
Cycle successor_loop(const LabeledOneTree& t, const Decoded& d, int v);

}  // namespace torq
