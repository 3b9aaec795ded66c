#include "torq/enumerate.hpp"
#include "torq/gf_series.hpp"
#include "torq/sampler.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <doctest.h>

#include <map>

using namespace torq;
using namespace torq::sampler;

TEST_CASE("planted tree step law") {
  const gf::NumericGF num(0.08);
  const TreeTables t(num, 20);
  for (int l = 1; l <= 5; ++l)
    CHECK(t.leaf_probability(l) ==
          doctest::Approx(1.0 - num.g() * (num.R(l + 1) + num.R(l) + num.R(l - 1))).epsilon(1e-12));
  Rng rng = make_stream(3, 0);
  for (int k = 0; k < 2000; ++k) {
    auto tree = sample_planted_tree(t, 1, rng, 200);
    if (!tree) continue;
    for (int l : tree->label) REQUIRE(l >= 1);
  }
}

TEST_CASE("size-conditioned planted trees are uniform") {
  const gf::NumericGF num(0.08);
  const TreeTables t(num, 20);
  Rng rng = make_stream(11, 0);
  std::map<std::vector<int>, long> seen;
  long kept = 0;
  while (kept < 100000) {
    auto tree = sample_planted_tree(t, 2, rng, 2);
    if (!tree || tree->edges() != 2) continue;
    std::vector<int> key = tree->parent;
    key.insert(key.end(), tree->label.begin(), tree->label.end());
    ++seen[key];
    ++kept;
  }
  const mpq_class classes = gf::series_R(2, 2)[2];
  REQUIRE(mpq_class(static_cast<long>(seen.size())) == classes);
  const double expect = static_cast<double>(kept) / seen.size();
  double chi = 0;
  for (const auto& [k, c] : seen) chi += (c - expect) * (c - expect) / expect;
  CHECK(boost::math::gamma_q((seen.size() - 1) / 2.0, chi / 2.0) > 0.01);
}

TEST_CASE("chains end at the requested label") {
  SamplerConfig cfg;
  cfg.target_size = 200;
  const Sampler s(cfg);
  Rng rng = make_stream(5, 0);
  int done = 0;
  for (int k = 0; k < 500; ++k) {
    auto c = sample_chain(s.trees(), s.K(), s.numeric(), 3, 5, rng, 5000);
    if (!c) continue;
    REQUIRE(c->spine.front() == 3);
    REQUIRE(c->spine.back() == 5);
    for (std::size_t i = 1; i < c->spine.size(); ++i) REQUIRE(std::abs(c->spine[i] - c->spine[i - 1]) <= 1);
    REQUIRE(c->bundles.size() == 2 * c->spine.size() - 2);
    ++done;
  }
  CHECK(done > 400);
}

TEST_CASE("deep-label spine displacement follows x^|p|") {
  // K_{a,a+p} ~ k_p at deep labels, so the first-step law of a long chain
  // started deep inside is set by k_p ratios
  const gf::NumericGF num = gf::NumericGF::from_epsilon(0.3);
  CHECK(num.K(30, 33) / num.K(30, 32) == doctest::Approx(num.x()).epsilon(1e-6));
  CHECK(num.kp(5) / num.kp(4) == doctest::Approx(num.x()).epsilon(1e-12));
}

TEST_CASE("tuned g hits the target mean size") {
  for (int n : {100, 1000, 10000}) {
    const double g = tuned_g(n);
    CHECK(g < 1.0 / 12);
    CHECK(g > 0.08);
  }
}

TEST_CASE("runs are reproducible and thread independent") {
  SamplerConfig cfg;
  cfg.target_size = 60;
  cfg.seed = 99;
  const auto a = Sampler(cfg).run(300);
  const auto b = Sampler(cfg).run(300);
  cfg.threads = 3;
  const auto c = Sampler(cfg).run(300);
  REQUIRE(a.draws.size() == 300);
  for (std::size_t i = 0; i < a.draws.size(); ++i) {
    CHECK(a.draws[i].size == b.draws[i].size);
    CHECK(a.draws[i].weight == c.draws[i].weight);
    CHECK(a.draws[i].marked_label == c.draws[i].marked_label);
  }
  CHECK(a.diag.attempts == c.diag.attempts);
}

TEST_CASE("emitted trees are well-labeled genus-1 one-trees") {
  SamplerConfig cfg;
  cfg.target_size = 80;
  const Sampler s(cfg);
  Rng rng = make_stream(1, 7);
  Diagnostics diag;
  for (int k = 0; k < 20; ++k) {
    const WeightedSample w = s.sample_one_tree(rng, &diag);
    REQUIRE_NOTHROW(validate_one_tree(w.tree, true));
    REQUIRE(w.tree.map.genus() == 1);
    REQUIRE(w.tree.map.edges() == w.size);
    REQUIRE(w.weight >= 1.0);
    REQUIRE(w.size >= 72);
    REQUIRE(w.size <= 88);
  }
}

TEST_CASE("backbone kind frequencies at n = 6") {
  SamplerConfig cfg;
  cfg.target_size = 6;
  cfg.seed = 4;
  const auto run = Sampler(cfg).run(100000);
  double deg = 0, total = 0;
  for (const auto& d : run.draws) {
    total += d.weight;
    if (d.degenerate) deg += d.weight;
  }
  const double p = mpq_class(gf::series_W2(6)[6] / gf::series_Q1(6).pointed[6]).get_d();
  // binomial-scale tolerance, inflated for the weights
  CHECK(deg / total == doctest::Approx(p).epsilon(0.05));
}

TEST_CASE("attempt budget") {
  SamplerConfig cfg;
  cfg.target_size = 500;
  cfg.max_attempts = 5;
  CHECK_THROWS_AS(Sampler(cfg).run(1000), AttemptsExhausted);
}
