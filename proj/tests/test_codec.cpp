#include "torq/codec.hpp"
#include "torq/enumerate.hpp"

#include <doctest.h>

using namespace torq;

namespace {

LabeledOneTree figure_eight(int label) { return {CombMap({1, 0, 3, 2}, {2, 3, 1, 0}, {label}), 0}; }

}  // namespace

TEST_CASE("validation") {
  CHECK_NOTHROW(validate_one_tree(figure_eight(1), true));
  CHECK_THROWS(validate_one_tree(figure_eight(2), true));
  CHECK_NOTHROW(validate_one_tree(figure_eight(2), false));
  CHECK_THROWS(decode(figure_eight(2)));
}

TEST_CASE("figure-eight decodes to the smallest toroidal quadrangulation") {
  const auto t = figure_eight(1);
  const Backbone b = backbone(t);
  CHECK(b.kind == BackboneKind::degenerate);
  CHECK(b.l1 == 1);
  const Decoded d = decode(t);
  CHECK(d.quad.faces() == 2);
  CHECK(d.quad.edges() == 4);
  CHECK(d.quad.vertices() == 2);
  CHECK(d.quad.genus() == 1);
  CHECK(is_bipartite(d.quad));
  CHECK(same_rooted(encode(d.quad, d.origin, d.root_edge), t));
}

TEST_CASE("theta-shaped trees have generic backbones") {
  bool seen = false;
  enumerate::for_each_unrooted(3, 1, [&](const LabeledOneTree& t, int) {
    if (t.map.vertices() != 2 || t.map.degree(0) != 3) return;
    std::vector<int> labels = t.map.labels();
    std::sort(labels.begin(), labels.end());
    if (labels != std::vector<int>{1, 2}) return;
    const Backbone b = backbone(t);
    CHECK(b.kind == BackboneKind::generic);
    CHECK(b.l1 == 2);
    CHECK(b.l2 == 1);
    CHECK(b.chain_minima.size() == 3);
    CHECK(b.min_label() == 1);
    seen = true;
  });
  CHECK(seen);
}

TEST_CASE("skeleton removes the hanging trees") {
  enumerate::for_each_unrooted(5, 1, [](const LabeledOneTree& t, int) {
    const LabeledOneTree s = skeleton(t);
    REQUIRE(s.map.genus() == 1);
    for (int v = 0; v < s.map.vertices(); ++v) REQUIRE(s.map.degree(v) >= 2);
    REQUIRE(min_skeleton_label(s) == min_skeleton_label(t));
  });
}

TEST_CASE("successor loops") {
  long long checked = 0;
  enumerate::for_each_unrooted(5, 1, [&](const LabeledOneTree& t, int) {
    const Decoded d = decode(t);
    const int m = min_skeleton_label(t);
    const auto on = skeleton_half_edges(t.map);
    for (HalfEdge h = 0; h < t.map.half_edges(); ++h) {
      if (!on[h]) continue;
      const int v = t.map.vertex_of(h);
      if (t.map.label(v) != m) continue;
      const Cycle c = successor_loop(t, d, v);
      REQUIRE(c.length == 2 * m);
      REQUIRE_FALSE(c.cls.is_zero());
      REQUIRE(is_closed_walk_through(d.quad, c.walk, d.tree_vertex[v]));
      ++checked;
      break;
    }
  });
  CHECK(checked > 0);
}

TEST_CASE("round trip on small sizes") {
  for (int n = 2; n <= 4; ++n)
    enumerate::for_each_rooted(n, 1, [](const LabeledOneTree& t) {
      const Decoded d = decode(t);
      REQUIRE(d.quad.faces() == t.map.edges());
      REQUIRE(d.quad.vertices() == t.map.vertices() + 1);
      REQUIRE(same_rooted(encode(d.quad, d.origin, d.root_edge), t));
    });
}

TEST_CASE("encode rejects bad input") {
  const Decoded d = decode(figure_eight(1));
  CHECK_THROWS(encode(d.quad, d.origin, d.quad.alpha(d.root_edge)));
  CHECK_THROWS(encode(CombMap({1, 0, 3, 2}, {2, 3, 1, 0}), 0, 0));
}
