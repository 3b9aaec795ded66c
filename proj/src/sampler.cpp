#include "torq/sampler.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <thread>

namespace torq::sampler {

Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

namespace {

double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Growing rotation system. Half-edges come in pairs (h, h ^ 1).
struct Builder {
  std::vector<int> vlabel, hvert, sigma;

  int vertex(int label) {
    vlabel.push_back(label);
    return static_cast<int>(vlabel.size()) - 1;
  }
  int edge() {
    const int h = static_cast<int>(hvert.size());
    hvert.insert(hvert.end(), {-1, -1});
    sigma.insert(sigma.end(), {-1, -1});
    return h;
  }
  // place h at v right after `after` in ccw order (after < 0: first half-edge at v)
  void attach(int h, int v, int after) {
    hvert[h] = v;
    if (after < 0) {
      sigma[h] = h;
    } else {
      sigma[h] = sigma[after];
      sigma[after] = h;
    }
  }
};

struct Abort {
  enum Why { too_big, overflow } why;
};

// Grows trees and spines for one attempt, counting vertices and corners per label.
struct Grower {
  const TreeTables& t;
  Rng& rng;
  Builder* b;
  int budget;
  int edges = 0;
  std::vector<int> vhist, chist;
  struct Frame {
    int v, label, cursor;
  };
  std::vector<Frame> stack;

  Grower(const TreeTables& tt, Rng& r, Builder* bb, int max_edges) : t(tt), rng(r), b(bb), budget(max_edges) {
    vhist.assign(t.max_label() + 2, 0);
    chist.assign(t.max_label() + 2, 0);
  }

  int new_vertex(int label) {
    ++vhist[label];
    return b ? b->vertex(label) : -1;
  }
  void count_edge(int la, int lb) {
    if (++edges > budget) throw Abort{Abort::too_big};
    ++chist[la];
    ++chist[lb];
  }

  // Boltzmann sequence of planted subtrees at v, placed after cursor; returns the last half-edge placed.
  int bundle(int v, int label, int cursor) {
    stack.clear();
    stack.push_back({v, label, cursor});
    int out = cursor;
    while (!stack.empty()) {
      const std::size_t top = stack.size() - 1;
      const int lab = stack[top].label;
      const int d = t.draw(lab, uniform01(rng));
      if (d == 2) {
        if (top == 0) out = stack[0].cursor;
        stack.pop_back();
        continue;
      }
      const int c = lab + d;
      if (c > t.max_label()) throw Abort{Abort::overflow};
      count_edge(lab, c);
      const int u = new_vertex(c);
      int hu = -1;
      if (b) {
        const int h = b->edge();
        b->attach(h, stack[top].v, stack[top].cursor);
        stack[top].cursor = h;
        b->attach(h ^ 1, u, -1);
        hu = h ^ 1;
      }
      stack.push_back({u, c, hu});
    }
    return out;
  }
};

// Label walk from l1 to l2 drawn with the K recursion weights.
std::vector<int> walk_spine(const std::vector<std::vector<double>>& K, const std::vector<double>& Rl, int cap, int l1,
                            int l2, Rng& rng, int& edges, int budget) {
  std::vector<int> spine{l1};
  int a = l1;
  for (;;) {
    double w[3];
    double tot = 0.0;
    for (int d = -1; d <= 1; ++d) {
      const int ap = a + d;
      double x = 0.0;
      if (ap >= 1 && ap <= cap + 1) x = Rl[ap] * ((ap == l2 ? 1.0 : 0.0) + K[ap][l2]);
      w[d + 1] = x;
      tot += x;
    }
    double u = uniform01(rng) * tot;
    int d = -1;
    while (d < 1 && u >= w[d + 1]) {
      u -= w[d + 1];
      ++d;
    }
    while (w[d + 1] == 0.0) --d;
    a += d;
    if (a > cap) throw Abort{Abort::overflow};
    spine.push_back(a);
    if (++edges > budget) throw Abort{Abort::too_big};
    if (a == l2 && uniform01(rng) * (1.0 + K[l2][l2]) < 1.0) return spine;
  }
}

std::vector<double> R_table(const gf::NumericGF& gf, int n) {
  std::vector<double> r(n + 1);
  for (int l = 0; l <= n; ++l) r[l] = gf.R(l);
  return r;
}

}  // namespace

TreeTables::TreeTables(const gf::NumericGF& gf, int max_label) {
  down_.assign(max_label + 2, 0.0);
  stay_.assign(max_label + 2, 0.0);
  cont_.assign(max_label + 2, 0.0);
  const double g = gf.g();
  for (int l = 1; l <= max_label + 1; ++l) {
    down_[l] = g * gf.R(l - 1);
    stay_[l] = down_[l] + g * gf.R(l);
    cont_[l] = stay_[l] + g * gf.R(l + 1);
  }
}

int TreeTables::draw(int label, double u) const {
  if (u < down_[label]) return -1;
  if (u < stay_[label]) return 0;
  if (u < cont_[label]) return 1;
  return 2;
}

std::optional<PlantedTree> sample_planted_tree(const TreeTables& t, int label, Rng& rng, int max_edges) {
  if (label < 1 || label > t.max_label()) throw std::invalid_argument("root label out of table range");
  PlantedTree p;
  p.parent.push_back(-1);
  p.label.push_back(label);
  std::vector<int> stack{0};
  while (!stack.empty()) {
    const int node = stack.back();
    const int d = t.draw(p.label[node], uniform01(rng));
    if (d == 2) {
      stack.pop_back();
      continue;
    }
    const int c = p.label[node] + d;
    if (c > t.max_label() || p.edges() >= max_edges) return std::nullopt;
    p.parent.push_back(node);
    p.label.push_back(c);
    stack.push_back(static_cast<int>(p.label.size()) - 1);
  }
  return p;
}

int Chain::edges() const {
  int e = static_cast<int>(spine.size()) - 1;
  for (const auto& b : bundles) e += b.edges();
  return e;
}

std::optional<Chain> sample_chain(const TreeTables& t, const std::vector<std::vector<double>>& K,
                                  const gf::NumericGF& gf, int l1, int l2, Rng& rng, int max_edges) {
  const int cap = static_cast<int>(K.size()) - 2;
  if (l1 < 1 || l2 < 1 || l1 > cap || l2 > cap) throw std::invalid_argument("chain labels out of range");
  Chain c;
  int edges = 0;
  try {
    c.spine = walk_spine(K, R_table(gf, cap + 1), cap, l1, l2, rng, edges, max_edges);
  } catch (const Abort&) {
    return std::nullopt;
  }
  const int k = static_cast<int>(c.spine.size()) - 1;
  for (int j = 0; j <= k; ++j) {
    const int reps = (j == 0 || j == k) ? 1 : 2;
    for (int r = 0; r < reps; ++r) {
      auto p = sample_planted_tree(t, c.spine[j], rng, max_edges - edges);
      if (!p) return std::nullopt;
      edges += p->edges();
      c.bundles.push_back(std::move(*p));
    }
  }
  return c;
}

double tuned_g(int n) {
  if (n < 1) throw std::invalid_argument("target size must be >= 1");
  auto logW = [](double eps) {
    const auto gf = gf::NumericGF::from_epsilon(eps);
    return std::log(gf.W1() + gf.W2());
  };
  // mean size = g dlogW/dg with g = (1 - eps^2)/12
  auto mean = [&](double eps) {
    const double h = 1e-5 * eps;
    const double d = (logW(eps + h) - logW(eps - h)) / (2 * h);
    const double g = (1 - eps * eps) / 12;
    return -6.0 * g / eps * d;
  };
  double lo = std::log(1e-7), hi = std::log(0.9);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mean(std::exp(mid)) > n) lo = mid;
    else hi = mid;
  }
  const double eps = std::exp(0.5 * (lo + hi));
  return (1 - eps * eps) / 12;
}

Sampler::Sampler(SamplerConfig cfg)
    : cfg_(std::move(cfg)),
      gf_(cfg_.g ? *cfg_.g : tuned_g(cfg_.target_size)),
      cap_(cfg_.label_cap > 0 ? cfg_.label_cap
                              : std::max(4, static_cast<int>(8.0 * std::pow(static_cast<double>(cfg_.target_size), 0.25)))),
      trees_(gf_, 2 * cap_ + 32) {
  if (cfg_.target_size < 2) throw std::invalid_argument("target size must be >= 2");
  if (cfg_.window < 0 || cfg_.window >= 1) throw std::invalid_argument("window must be in [0, 1)");
  build_tables();
}

void Sampler::build_tables() {
  K_ = gf_.K_table(cap_);
  auto k = [&](int a, int b) { return (a < 1 || b < 1) ? 0.0 : K_[a][b]; };
  choices_.clear();
  choice_weights_.clear();
  choice_importance_.clear();
  for (int l1 = 1; l1 <= cap_; ++l1)
    for (int l2 = 1; l2 <= l1; ++l2) {
      const double full = std::pow(k(l1, l2), 3), shifted = std::pow(k(l1 - 1, l2 - 1), 3);
      const double c = (l1 == l2) ? 1.0 / 6 : 1.0 / 3;
      if (full - shifted <= 0) continue;
      choices_.push_back({false, l1, l2});
      choice_weights_.push_back(c * (full - shifted));
      choice_importance_.push_back(full / (full - shifted));
    }
  for (int l = 1; l <= cap_; ++l) {
    const double full = k(l, l) * k(l, l), shifted = k(l - 1, l - 1) * k(l - 1, l - 1);
    if (full - shifted <= 0) continue;
    choices_.push_back({true, l, l});
    choice_weights_.push_back(0.25 * (full - shifted));
    choice_importance_.push_back(full / (full - shifted));
  }
  double tot = 0.0;
  for (double& w : choice_weights_) {
    tot += w;
    w = tot;
  }
  for (double& w : choice_weights_) w /= tot;
  Rl_ = R_table(gf_, cap_ + 1);
}

std::optional<Draw> Sampler::attempt(Rng& rng, Diagnostics& diag, WeightedSample* tree, int min_size,
                                     int max_size) const {
  ++diag.attempts;
  const double u = uniform01(rng);
  const std::size_t ci = std::min<std::size_t>(
      std::lower_bound(choice_weights_.begin(), choice_weights_.end(), u) - choice_weights_.begin(),
      choices_.size() - 1);
  const BackboneChoice ch = choices_[ci];
  Builder builder;
  Builder* b = tree ? &builder : nullptr;
  Grower gr(trees_, rng, b, max_size < 0 ? std::numeric_limits<int>::max() : max_size);
  const int nchains = ch.degenerate ? 2 : 3;
  std::vector<std::vector<int>> spines(nchains);
  try {
    for (auto& s : spines) {
      s = walk_spine(K_, Rl_, cap_, ch.l1, ch.l2, rng, gr.edges, gr.budget);
      for (std::size_t j = 0; j + 1 < s.size(); ++j) {
        ++gr.chist[s[j]];
        ++gr.chist[s[j + 1]];
      }
    }
    // spine edges and interior vertices
    std::vector<std::vector<int>> e(nchains), sv(nchains);
    for (int i = 0; i < nchains; ++i) {
      const int k = static_cast<int>(spines[i].size()) - 1;
      for (int j = 0; j < k; ++j) e[i].push_back(b ? b->edge() : -1);
      sv[i].assign(k + 1, -1);
    }
    const int u = gr.new_vertex(ch.l1);
    int cu = -1;
    auto place = [&](int h, int v, int label, int& cursor) {
      if (b) {
        b->attach(h, v, cursor);
        cursor = h;
      }
      cursor = gr.bundle(v, label, cursor);
    };
    if (ch.degenerate) {
      place(b ? e[0].front() : -1, u, ch.l1, cu);
      place(b ? e[1].front() : -1, u, ch.l1, cu);
      place(b ? (e[0].back() ^ 1) : -1, u, ch.l1, cu);
      place(b ? (e[1].back() ^ 1) : -1, u, ch.l1, cu);
    } else {
      const int w = gr.new_vertex(ch.l2);
      int cw = -1;
      for (int i = 0; i < 3; ++i) place(b ? e[i].front() : -1, u, ch.l1, cu);
      for (int i = 0; i < 3; ++i) place(b ? (e[i].back() ^ 1) : -1, w, ch.l2, cw);
    }
    for (int i = 0; i < nchains; ++i) {
      const int k = static_cast<int>(spines[i].size()) - 1;
      for (int j = 1; j < k; ++j) {
        const int lab = spines[i][j];
        const int v = gr.new_vertex(lab);
        int c = -1;
        place(b ? (e[i][j - 1] ^ 1) : -1, v, lab, c);
        place(b ? e[i][j] : -1, v, lab, c);
      }
    }
  } catch (const Abort& a) {
    if (a.why == Abort::overflow) ++diag.overflows;
    else ++diag.window_rejects;
    return std::nullopt;
  }
  if (gr.edges < min_size) {
    ++diag.window_rejects;
    return std::nullopt;
  }
  if (gr.vhist[1] == 0) {
    ++diag.min_rejects;
    return std::nullopt;
  }
  Draw d;
  d.size = gr.edges;
  d.weight = choice_importance_[ci];
  d.degenerate = ch.degenerate;
  d.l1 = ch.l1;
  d.l2 = ch.l2;
  for (const auto& s : spines) d.chain_minima.push_back(*std::min_element(s.begin(), s.end()));
  std::sort(d.chain_minima.rbegin(), d.chain_minima.rend());
  d.min_skeleton = d.chain_minima.back();
  d.m2 = d.chain_minima[d.chain_minima.size() - 2];
  {
    long long vertices = 0;
    for (int c : gr.vhist) vertices += c;
    long long pick = static_cast<long long>(uniform01(rng) * static_cast<double>(vertices));
    int l = 0;
    while (pick >= gr.vhist[l]) pick -= gr.vhist[l++];
    d.marked_label = l;
  }
  if (cfg_.corner_histogram) {
    d.corner_labels = gr.chist;
    while (!d.corner_labels.empty() && d.corner_labels.back() == 0) d.corner_labels.pop_back();
  }
  if (tree) {
    const int N = static_cast<int>(builder.hvert.size());
    std::vector<int> alpha(N);
    for (int h = 0; h < N; ++h) alpha[h] = h ^ 1;
    CombMap m(alpha, builder.sigma);
    std::vector<int> labels(m.vertices());
    for (int v = 0; v < m.vertices(); ++v) labels[v] = builder.vlabel[builder.hvert[m.vertex_half_edge(v)]];
    tree->tree = LabeledOneTree{m.with_labels(std::move(labels)), static_cast<HalfEdge>(uniform01(rng) * N)};
    tree->weight = d.weight;
    tree->size = d.size;
  }
  ++diag.retained;
  if (d.degenerate) ++diag.degenerate;
  return d;
}

namespace {
std::pair<int, int> window_bounds(const SamplerConfig& c) {
  const double n = c.target_size;
  return {static_cast<int>(std::ceil(n * (1 - c.window) - 1e-9)), static_cast<int>(std::floor(n * (1 + c.window) + 1e-9))};
}
constexpr long long kBlock = 1024;
}  // namespace

WeightedSample Sampler::sample_one_tree(Rng& rng, Diagnostics* diag) const {
  Diagnostics local;
  Diagnostics& dg = diag ? *diag : local;
  const auto [lo, hi] = window_bounds(cfg_);
  WeightedSample s;
  for (long long i = 0; i < cfg_.max_attempts; ++i)
    if (attempt(rng, dg, &s, lo, hi)) return s;
  throw AttemptsExhausted("no sample retained after " + std::to_string(cfg_.max_attempts) + " attempts");
}

Sampler::Run Sampler::run(long long count) const {
  const auto [lo, hi] = window_bounds(cfg_);
  struct Block {
    std::vector<Draw> draws;
    Diagnostics diag;
  };
  const long long max_blocks = (cfg_.max_attempts + kBlock - 1) / kBlock;
  std::mutex mu;
  std::map<long long, Block> done;
  long long next = 0, prefix = 0, have = 0;
  bool stop = false;
  auto work = [&]() {
    for (;;) {
      long long b;
      {
        std::lock_guard<std::mutex> lock(mu);
        if (stop || next >= max_blocks) return;
        b = next++;
      }
      Block blk;
      Rng rng = make_stream(cfg_.seed, static_cast<std::uint64_t>(b));
      for (long long i = 0; i < kBlock; ++i)
        if (auto d = attempt(rng, blk.diag, nullptr, lo, hi)) blk.draws.push_back(std::move(*d));
      std::lock_guard<std::mutex> lock(mu);
      done.emplace(b, std::move(blk));
      for (auto it = done.find(prefix); it != done.end() && !stop; it = done.find(prefix)) {
        have += static_cast<long long>(it->second.draws.size());
        ++prefix;
        if (have >= count) stop = true;
      }
    }
  };
  const int nt = std::max(1, cfg_.threads);
  if (nt == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < nt; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  Run r;
  for (long long b = 0; b < prefix; ++b) {
    const Block& blk = done.at(b);
    const Diagnostics& d = blk.diag;
    r.diag.attempts += d.attempts;
    r.diag.window_rejects += d.window_rejects;
    r.diag.min_rejects += d.min_rejects;
    r.diag.overflows += d.overflows;
    r.diag.retained += d.retained;
    r.diag.degenerate += d.degenerate;
    for (const Draw& x : blk.draws)
      if (static_cast<long long>(r.draws.size()) < count) r.draws.push_back(x);
  }
  if (static_cast<long long>(r.draws.size()) < count)
    throw AttemptsExhausted("retained " + std::to_string(r.draws.size()) + " of " + std::to_string(count) +
                            " samples within " + std::to_string(r.diag.attempts) + " attempts");
  return r;
}

}  // namespace torq::sampler
