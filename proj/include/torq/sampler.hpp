#pragma once

#include "torq/codec.hpp"
#include "torq/numeric_gf.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

namespace torq::sampler {

using Rng = std::mt19937_64;

// One stream per (seed, stream index); block b of attempts always uses stream b.
Rng make_stream(std::uint64_t seed, std::uint64_t stream);

struct SamplerConfig {
  int target_size = 1000;
  double window = 0.1;
  std::optional<double> g;  // tuned when absent
  std::uint64_t seed = 1;
  long long max_attempts = 200'000'000;
  int label_cap = 0;  // 0 selects 8 n^{1/4}
  int threads = 1;
  bool corner_histogram = false;  // keep per-sample corner label counts
};

struct AttemptsExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Label-indexed probability tables for planted Boltzmann trees at a fixed g.
class TreeTables {
 public:
  TreeTables(const gf::NumericGF& gf, int max_label);
  int max_label() const { return static_cast<int>(cont_.size()) - 2; }
  // u uniform in [0,1): -1, 0, +1 for a child label step, or 2 to stop
  int draw(int label, double u) const;
  double leaf_probability(int label) const { return 1.0 - cont_.at(label); }

 private:
  std::vector<double> down_, stay_, cont_;
};

struct PlantedTree {
  std::vector<int> parent;  // preorder, parent[0] = -1
  std::vector<int> label;
  int edges() const { return static_cast<int>(label.size()) - 1; }
};

// Boltzmann planted tree with root label `label`; nothing when it grows past
// max_edges or beyond the table labels.
std::optional<PlantedTree> sample_planted_tree(const TreeTables& t, int label, Rng& rng, int max_edges);

struct Chain {
  std::vector<int> spine;  // labels from l1 to l2, at least one edge
  // trees hanging off the spine, each rooted at a spine vertex: one at each
  // end, two per interior vertex (left then right), in spine order
  std::vector<PlantedTree> bundles;
  int edges() const;
};

// Boltzmann chain counted by K(l1, l2). K indexed [a][b] for 0 <= a, b <= cap + 1;
// spine labels stay <= cap.
std::optional<Chain> sample_chain(const TreeTables& t, const std::vector<std::vector<double>>& K,
                                  const gf::NumericGF& gf, int l1, int l2, Rng& rng, int max_edges);

// g with Boltzmann mean size n for the weighted one-tree series W1 + W2
double tuned_g(int n);

struct Draw {
  int size = 0;
  double weight = 0.0;
  bool degenerate = false;
  int l1 = 0, l2 = 0;
  std::vector<int> chain_minima;  // sorted descending
  int min_skeleton = 0;
  int m2 = 0;
  int marked_label = 0;
  std::vector<int> corner_labels;  // count of corners per label (index = label), optional
};

struct WeightedSample {
  LabeledOneTree tree;
  double weight = 0.0;
  int size = 0;
};

struct Diagnostics {
  long long attempts = 0;
  long long window_rejects = 0;
  long long min_rejects = 0;
  long long overflows = 0;
  long long retained = 0;
  long long degenerate = 0;
};

class Sampler {
 public:
  explicit Sampler(SamplerConfig cfg);

  const SamplerConfig& config() const { return cfg_; }
  double g() const { return gf_.g(); }
  double epsilon() const { return gf_.epsilon(); }
  int label_cap() const { return cap_; }

  // One proposal. Returns a retained draw or nothing; fills `tree` when given.
  std::optional<Draw> attempt(Rng& rng, Diagnostics& diag, WeightedSample* tree = nullptr,
                              int min_size = -1, int max_size = -1) const;

  WeightedSample sample_one_tree(Rng& rng, Diagnostics* diag = nullptr) const;

  struct Run {
    std::vector<Draw> draws;
    Diagnostics diag;
  };
  // First `count` retained draws in stream order; independent of the thread count.
  Run run(long long count) const;

  const std::vector<std::vector<double>>& K() const { return K_; }
  const TreeTables& trees() const { return trees_; }
  const gf::NumericGF& numeric() const { return gf_; }

 private:
  void build_tables();

  SamplerConfig cfg_;
  gf::NumericGF gf_;
  int cap_;
  TreeTables trees_;
  std::vector<std::vector<double>> K_;
  struct BackboneChoice {
    bool degenerate;
    int l1, l2;
  };
  std::vector<BackboneChoice> choices_;
  std::vector<double> choice_weights_;
  std::vector<double> choice_importance_;
  std::vector<double> Rl_;  // R_l for 0 <= l <= cap + 1
};

}  // namespace torq::sampler
