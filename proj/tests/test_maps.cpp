#include "torq/codec.hpp"
#include "torq/enumerate.hpp"
#include "torq/loops.hpp"

#include <doctest.h>

#include <random>

using namespace torq;

namespace {

// one vertex, two loops with interleaved rotation
CombMap figure_eight() { return CombMap({1, 0, 3, 2}, {2, 3, 1, 0}); }

}  // namespace

TEST_CASE("genus by Euler") {
  const CombMap f8 = figure_eight();
  CHECK(f8.vertices() == 1);
  CHECK(f8.faces() == 1);
  CHECK(genus(f8) == 1);
  // a path with two edges
  const CombMap path({1, 0, 3, 2}, {0, 2, 1, 3});
  CHECK(path.vertices() == 3);
  CHECK(genus(path) == 0);
  CHECK_THROWS(CombMap({1, 0, 2, 3}, {0, 1, 2, 3}));
}

TEST_CASE("bfs distances") {
  const CombMap edge({1, 0}, {0, 1});
  const auto d = bfs_distances(edge, 0);
  CHECK(d[0] == 0);
  CHECK(d[1] == 1);
  enumerate::for_each_rooted(4, 1, [](const LabeledOneTree& t) {
    const Decoded q = decode(t);
    const auto dist = bfs_distances(q.quad, q.origin);
    REQUIRE(is_bipartite(q.quad));
    for (int h = 0; h < q.quad.half_edges(); ++h)
      REQUIRE(std::abs(dist[q.quad.vertex_of(h)] - dist[q.quad.vertex_of(q.quad.alpha(h))]) == 1);
  });
}

TEST_CASE("homology on the figure-eight") {
  const CombMap f8 = figure_eight();
  const auto cls = homology_classes(f8);
  const HomologyClass a = cls[0], b = cls[2];
  CHECK_FALSE(a.is_zero());
  CHECK_FALSE(b.is_zero());
  CHECK_FALSE(is_multiple_of(b, a));
  CHECK((cls[1] + a).is_zero());
  const Cycle c = shortest_noncontractible_through(f8, 0);
  CHECK(c.length == 1);
  const Cycle d = second_shortest_noncontractible_through(f8, 0, c);
  CHECK(d.length == 1);
  CHECK_FALSE(is_multiple_of(d.cls, c.cls));
  CHECK_THROWS(homology_classes(CombMap({1, 0}, {0, 1})));
}

TEST_CASE("homology of decoded quadrangulations") {
  std::mt19937 rng(5);
  enumerate::for_each_rooted(5, 1, [&](const LabeledOneTree& t) {
    if (rng() % 20 != 0) return;
    const CombMap& q = decode(t).quad;
    const auto cls = homology_classes(q);
    for (int f = 0; f < q.faces(); ++f) REQUIRE(class_of_walk(cls, q.face_walk(f)).is_zero());
    // a walk followed by its reverse
    std::vector<HalfEdge> walk;
    HalfEdge h = static_cast<HalfEdge>(rng() % q.half_edges());
    for (int k = 0; k < 6; ++k) {
      walk.push_back(h);
      h = q.sigma(q.alpha(h));
      for (unsigned s = rng() % 3; s > 0; --s) h = q.sigma(h);
    }
    std::vector<HalfEdge> back = walk;
    for (auto it = walk.rbegin(); it != walk.rend(); ++it) back.push_back(q.alpha(*it));
    REQUIRE(class_of_walk(cls, back).is_zero());
  });
}

TEST_CASE("second shortest loop equals twice the second chain minimum") {
  long long checked = 0;
  for (int n = 3; n <= 6; ++n)
    enumerate::for_each_unrooted(n, 1, [&](const LabeledOneTree& t, int) {
      const Backbone b = backbone(t);
      if (b.kind != BackboneKind::generic) return;
      // minimum strictly inside its chain and not shared by another chain
      if (b.chain_minima[2] == b.chain_minima[1]) return;
      if (b.chain_minima[2] >= std::min(b.l1, b.l2)) return;
      const Decoded d = decode(t);
      const Cycle first = shortest_noncontractible_through(d.quad, d.origin);
      const Cycle second = second_shortest_noncontractible_through(d.quad, d.origin, first);
      REQUIRE(first.length == 2 * b.chain_minima[2]);
      REQUIRE(second.length == 2 * b.chain_minima[1]);
      REQUIRE_FALSE(is_multiple_of(second.cls, first.cls));
      ++checked;
    });
  CHECK(checked > 100);
}
