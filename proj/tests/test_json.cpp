#include "torq/acceptance.hpp"
#include "torq/enumerate.hpp"
#include "torq/gf_series.hpp"
#include "torq/json_io.hpp"

#include <doctest.h>

using namespace torq;

TEST_CASE("series round trip") {
  const auto s = gf::series_Q1(8).pointed;
  const Json j = series_to_json(s);
  CHECK(j["order"] == 8);
  CHECK(j["coeffs"][2] == "1/4");
  CHECK(series_from_json(j) == s);
  CHECK_THROWS(series_from_json(Json{{"order", 3}, {"coeffs", {"1/1"}}}));
}

TEST_CASE("map round trip") {
  enumerate::for_each_rooted(3, 1, [](const LabeledOneTree& t) {
    const LabeledOneTree back = one_tree_from_json(Json::parse(one_tree_to_json(t).dump()));
    REQUIRE(same_rooted(back, t));
  });
  CHECK_THROWS(map_from_json(Json{{"alpha", {0, 1}}, {"sigma", {0, 1}}}));
}

TEST_CASE("negative control: a perturbed constant fails its criterion") {
  acceptance::Options o;
  o.enforce_budgets = false;
  CHECK(acceptance::run_criterion(7, o).pass);
  o.f1_small_l_denominator = 895;
  const auto r = acceptance::run_criterion(7, o);
  CHECK_FALSE(r.pass);
  CHECK(r.name == "differential identities");
  CHECK(acceptance::summary_line(r).find("F1(L) c / L^4") != std::string::npos);
}
