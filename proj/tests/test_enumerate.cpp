#include "torq/enumerate.hpp"
#include "torq/gf_series.hpp"

#include <doctest.h>

#include <cmath>

using namespace torq;

TEST_CASE("planted trees") {
  CHECK(enumerate::enum_planted_trees(1, 1).rows.at({1}) == 2);
  CHECK(enumerate::enum_planted_trees(0, 3).total() == 0);
  const auto r3 = gf::series_R(3, 7);
  const auto t = enumerate::enum_planted_trees(3, 7);
  for (int n = 0; n <= 7; ++n) CHECK(mpq_class(t.rows.at({n})) == r3[n]);
}

TEST_CASE("one-trees") {
  const auto t2 = enumerate::enum_one_trees(2);
  CHECK(t2.total() == 1);
  CHECK(t2.rows.begin()->first == std::vector<int>{1, 1, 1});
  for (int n = 2; n <= 5; ++n) {
    const auto t = enumerate::enum_one_trees(n);
    CHECK(mpq_class(t.total()) == 2 * n * gf::series_Q1(n).pointed[n]);
  }
  CHECK_THROWS(enumerate::enum_one_trees(9));
}

TEST_CASE("independent brute force") {
  for (int n = 1; n <= 4; ++n) {
    mpz_class rooted = 0;
    enumerate::for_each_rooted(n, 1, [&](const LabeledOneTree&) { ++rooted; });
    CHECK(enumerate::brute_force_rooted_count(n, 1) == rooted);
    mpz_class planar = 0;
    enumerate::for_each_rooted(n, 0, [&](const LabeledOneTree&) { ++planar; });
    CHECK(enumerate::brute_force_rooted_count(n, 0) == planar);
  }
}

TEST_CASE("unrooted classes reweight to rooted counts") {
  for (int n = 2; n <= 6; ++n) {
    long long weighted = 0;
    enumerate::for_each_unrooted(n, 1, [&](const LabeledOneTree&, int aut) { weighted += 2 * n / aut; });
    CHECK(mpq_class(static_cast<long>(weighted)) == 2 * n * gf::series_Q1(n).pointed[n]);
  }
}

TEST_CASE("pointed planar count") {
  CHECK(enumerate::count_pointed_planar(1) == mpq_class(3, 2));
  for (int n = 1; n <= 5; ++n) CHECK(enumerate::count_pointed_planar(n) == enumerate::count_pointed_planar_enumerated(n));
  const int n = 1000;
  mpz_class p12;
  mpz_ui_pow_ui(p12.get_mpz_t(), 12, n);
  const double ratio = mpq_class(enumerate::count_pointed_planar(n) / p12).get_d() * std::sqrt(M_PI) * std::pow(n, 2.5);
  // the closed form behaves as 12^n / (2 sqrt(pi) n^{5/2})
  CHECK(ratio == doctest::Approx(0.5).epsilon(0.03));
}

TEST_CASE("marked vertex histogram") {
  const auto h2 = enumerate::marked_vertex_histogram(2);
  CHECK(h2.rows.size() == 1);
  CHECK(h2.rows.begin()->first == std::vector<int>{1});
  for (int n = 3; n <= 5; ++n) {
    const auto h = enumerate::marked_vertex_histogram(n);
    // every one-tree with n edges has n - 1 vertices
    CHECK(h.total() == enumerate::enum_one_trees(n).total() * (n - 1));
    CHECK(h.rows.rbegin()->first[0] <= n);
  }
}
