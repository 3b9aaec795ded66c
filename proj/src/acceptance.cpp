#include "torq/acceptance.hpp"

#include "torq/codec.hpp"
#include "torq/distributions.hpp"
#include "torq/enumerate.hpp"
#include "torq/gf_series.hpp"
#include "torq/loops.hpp"
#include "torq/numeric_gf.hpp"
#include "torq/sampler.hpp"
#include "torq/scaling.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <chrono>
#include <cmath>
#include <map>
#include <sstream>

namespace torq::acceptance {

namespace {

// Collects named sub-checks; a criterion passes when every check does.
class Checks {
 public:
  // value <= bound
  void at_most(const std::string& name, double value, double bound) { put(name, value, bound, "<=", value <= bound); }
  void at_least(const std::string& name, double value, double bound) { put(name, value, bound, ">=", value >= bound); }
  void within(const std::string& name, double value, double lo, double hi) {
    Json j = {{"value", value}, {"range", {lo, hi}}, {"ok", value >= lo && value <= hi}};
    add(name, j, value >= lo && value <= hi);
  }
  void equal(const std::string& name, const std::string& got, const std::string& want) {
    add(name, {{"value", got}, {"expected", want}, {"ok", got == want}}, got == want);
  }
  void truth(const std::string& name, bool ok, const std::string& note = "") {
    Json j = {{"ok", ok}};
    if (!note.empty()) j["note"] = note;
    add(name, j, ok);
  }
  void count(const std::string& name, long long failures) {
    add(name, {{"failures", failures}, {"ok", failures == 0}}, failures == 0);
  }
  bool ok() const { return ok_; }
  Json json() const { return j_; }

 private:
  void put(const std::string& name, double value, double bound, const char* rel, bool ok) {
    add(name, {{"value", value}, {"bound", bound}, {"relation", rel}, {"ok", ok}}, ok);
  }
  void add(const std::string& name, Json j, bool ok) {
    j_[name] = std::move(j);
    ok_ = ok_ && ok;
  }
  Json j_ = Json::object();
  bool ok_ = true;
};

double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

void exact_identities(Checks& c) {
  auto put = [&](const char* name, const gf::IdentityCheck& r) { c.truth(name, r.ok, r.where); };
  put("R closed form vs recursion", gf::check_R_recursion(10, 20));
  put("X closed form vs recursion", gf::check_X_recursion(10, 20));
  put("Xtilde product vs closed form", gf::check_Xtilde_forms(10, 20));
  put("K recursion", gf::check_K_recursion(10, 20));
  put("K symmetry", gf::check_K_symmetry(10, 20));
  put("k_p recursion", gf::check_kp_recursion(10, 20));
  const int order = 20;
  c.truth("k_p even", gf::series_kp(3, order) == gf::series_kp(-3, order));
  c.truth("W1 telescoped vs double sum", gf::series_W1(12) == gf::series_W1_double_sum(12));
  c.truth("W2 telescoped vs double sum", gf::series_W2(12) == gf::series_W2_double_sum(12));
}

void counting(Checks& c) {
  const int top = 6;
  const auto q = gf::series_Q1(top);
  const auto closed = gf::series_Q1_closed(top);
  c.truth("pointed series = closed rational form", q.pointed == closed);
  const auto w1 = gf::series_W1(top), w2 = gf::series_W2(top);
  for (int n = 2; n <= top; ++n) {
    const auto table = enumerate::enum_one_trees(n);
    const mpq_class want = 2 * n * q.pointed[n];
    const std::string tag = "n=" + std::to_string(n);
    c.equal(tag + " rooted one-trees", table.total().get_str(), want.get_str());
    const auto kinds = table.marginal(0);
    auto get = [](const std::map<int, mpz_class>& m, int k) { return m.count(k) ? m.at(k) : mpz_class(0); };
    c.equal(tag + " generic backbones", get(kinds, 0).get_str(), mpq_class(2 * n * w1[n]).get_str());
    c.equal(tag + " degenerate backbones", get(kinds, 1).get_str(), mpq_class(2 * n * w2[n]).get_str());
    const auto mins = table.marginal(1);
    bool same = true;
    for (const auto& [m, cnt] : gf::exact_min_skeleton_distribution(n)) same = same && get(mins, m) == cnt;
    c.truth(tag + " min skeleton label partition", same);
  }
  for (int n = 2; n <= 4; ++n)
    c.equal("n=" + std::to_string(n) + " independent brute force", enumerate::brute_force_rooted_count(n, 1).get_str(),
            mpq_class(2 * n * q.pointed[n]).get_str());
}

void asymptotics(Checks& c) {
  const int n = 200;
  const auto rooted = gf::series_Q1_closed(n) * mpq_class(4);
  const auto w2 = gf::series_W2_closed(n);
  mpq_class p12 = 1;
  for (int k = 0; k < n; ++k) p12 *= 12;
  const double a = mpq_class(rooted[n] * 24 / p12).get_d();
  const double b = mpq_class(w2[n] / p12).get_d() * 32.0 * std::sqrt(M_PI * n) / 3.0;
  c.within("rooted [g^200] * 24 / 12^200", a, 0.95, 1.05);
  c.within("W2 [g^200] * 32 sqrt(pi n) / (3 12^200)", b, 0.9, 1.1);
}

void codec(Checks& c) {
  long long round1 = 0, round2 = 0, labels = 0, shape = 0, objects = 0;
  for (int n = 2; n <= 6; ++n) {
    enumerate::for_each_rooted(n, 1, [&](const LabeledOneTree& t) {
      ++objects;
      const Decoded d = decode(t);
      const CombMap& q = d.quad;
      bool quad = q.genus() == 1 && is_bipartite(q) && q.faces() == n && q.vertices() == t.map.vertices() + 1;
      for (int f = 0; quad && f < q.faces(); ++f) quad = q.face_walk(f).size() == 4;
      if (!quad) ++shape;
      const auto dist = bfs_distances(q, d.origin);
      for (int v = 0; v < t.map.vertices(); ++v)
        if (dist[d.tree_vertex[v]] != t.map.label(v)) {
          ++labels;
          break;
        }
      const LabeledOneTree back = encode(q, d.origin, d.root_edge);
      if (!same_rooted(back, t)) ++round1;
      const Decoded again = decode(back);
      if (canonical_code(again.quad, again.root_edge) != canonical_code(q, d.root_edge)) ++round2;
    });
  }
  c.at_least("objects checked", static_cast<double>(objects), 1.0);
  c.count("encode(decode(t)) != t", round1);
  c.count("decode(encode(q)) != q", round2);
  c.count("labels != BFS distances", labels);
  c.count("not a bipartite genus-1 quadrangulation", shape);
}

void loop_theorem(Checks& c) {
  for (int n = 2; n <= 8; ++n) {
    long long bad = 0, weighted = 0;
    enumerate::for_each_unrooted(n, 1, [&](const LabeledOneTree& t, int aut) {
      weighted += 2 * n / aut;
      const Decoded d = decode(t);
      const Cycle cyc = shortest_noncontractible_through(d.quad, d.origin);
      if (cyc.cls.is_zero() || cyc.length != 2 * min_skeleton_label(t)) ++bad;
    });
    const std::string tag = "n=" + std::to_string(n);
    c.count(tag + " systole != 2 min skeleton label", bad);
    // every rooted object is covered by exactly one class
    const mpq_class want = 2 * n * gf::series_Q1(n).pointed[n];
    c.equal(tag + " classes cover all rooted trees", std::to_string(weighted), want.get_str());
  }
}

void scaling_limit(Checks& c) {
  const double eps[2] = {1e-3, 1e-4};
  for (double L : {0.5, 1.0, 2.0}) {
    double eR[2], eX[2], eK[2];
    for (int i = 0; i < 2; ++i) {
      const auto num = gf::NumericGF::from_epsilon(eps[i]);
      const double se = std::sqrt(eps[i]);
      const int l = static_cast<int>(std::lround(L / se)), l2 = static_cast<int>(std::lround(1.5 * L / se));
      const double La = l * se, L2a = l2 * se;
      eR[i] = std::abs(num.R(l) / 2.0 - 1.0 + eps[i] * scaling::F(La).real());
      eX[i] = std::abs(num.X(l) / 3.0 - 1.0 + se * scaling::C(La).real());
      eK[i] = std::abs(se * num.K(l, l2) - scaling::rho(La, L2a));
    }
    const std::string tag = "L=" + std::to_string(L).substr(0, 3);
    c.within(tag + " R error ratio / 10^1.5", eR[0] / eR[1] / std::pow(10.0, 1.5), 0.7, 1.3);
    c.within(tag + " X error ratio / 10", eX[0] / eX[1] / 10.0, 0.7, 1.3);
    c.within(tag + " K error ratio / 10^0.5", eK[0] / eK[1] / std::sqrt(10.0), 0.7, 1.3);
  }
}

void differential(Checks& c, const Options& o) {
  for (const auto& r : scaling::residuals()) c.at_most(r.name + " [" + r.kind + "]", r.max_abs, r.threshold);
  // small-L constant, read off the Taylor table
  for (double L : {0.02, 0.05}) {
    const double ratio = scaling::F1(L).real() * o.f1_small_l_denominator / std::pow(L, 4);
    c.at_most("F1(L) c / L^4 - 1 at L=" + std::to_string(L).substr(0, 4), std::abs(ratio - 1.0), 1e-5);
  }
}

void oracles(Checks& c) {
  for (double L : {0.5, 1.0, 2.0}) {
    const std::string tag = " at L=" + std::to_string(L).substr(0, 3);
    c.at_most("I vs ODE" + tag, std::abs(scaling::I(L).real() - scaling::I_by_ode(L)), 1e-8);
    c.at_most("J vs ODE" + tag, std::abs(scaling::J(L).real() - scaling::J_by_ode(L)), 1e-8);
    c.at_most("H vs quadrature" + tag, std::abs(scaling::H(L).real() - scaling::H_by_quadrature(L)), 1e-8);
    const auto q = scaling::F1_by_quadrature(L);
    c.at_most("F1 vs triple integral" + tag, std::abs(scaling::F1(L).real() - q.value), 1e-4);
  }
}

void expansions(Checks& c) {
  using dist::Law;
  for (double r : {0.05, 0.1})
    c.at_most("sigma vs 9r^6/(4 sqrt pi), r=" + std::to_string(r).substr(0, 4),
              rel_err(dist::sigma(r).value, dist::small_r_expansion(Law::sigma, r, 1)), 0.02);
  {
    const double r = 0.3, s = dist::sigma(r).value;
    const double one = rel_err(s, dist::small_r_expansion(Law::sigma, r, 1));
    const double two = rel_err(s, dist::small_r_expansion(Law::sigma, r, 2));
    c.truth("sigma r^10 correction improves the fit at r=0.3", two < one,
            std::to_string(one) + " -> " + std::to_string(two));
  }
  for (double r : {0.1, 0.15})
    c.at_most("sigma2 vs 11043r^10/(5096 sqrt pi), r=" + std::to_string(r).substr(0, 4),
              rel_err(dist::sigma2(r).value, dist::small_r_expansion(Law::sigma2, r, 1)), 0.03);
  for (double r : {0.1, 0.2}) {
    const std::string tag = ", r=" + std::to_string(r).substr(0, 3);
    const double p = dist::phi1(r).value;
    c.at_most("phi1 vs 3r^4/28" + tag, rel_err(p, dist::small_r_expansion(Law::phi1, r, 1)), 0.02);
    // the integral part alone carries the r^10 and r^14 terms
    const double lead = dist::small_r_expansion(Law::phi1, r, 1);
    const double two = dist::small_r_expansion(Law::phi1, r, 2) - lead;
    const double three = dist::small_r_expansion(Law::phi1, r, 3) - lead;
    c.at_most("phi1 - 3r^4/28 vs -15r^10/(1456 sqrt pi)" + tag, rel_err(p - lead, two), 0.02);
    c.at_most("phi1 - 3r^4/28 vs r^10 + r^14 terms" + tag, rel_err(p - lead, three), 0.02);
  }
  const double r = 0.1;
  c.at_most("sigma density vs 27r^5/(2 sqrt pi), r=0.1",
            rel_err(dist::density(Law::sigma, r).value, 27.0 * std::pow(r, 5) / (2.0 * std::sqrt(M_PI))), 0.02);
  bool dominated = true;
  for (double x = 0.25; x <= 3.0; x += 0.25) dominated = dominated && dist::sigma2(x).value <= dist::sigma(x).value;
  c.truth("sigma2 <= sigma on 0.25..3", dominated);
}

void normalization(Checks& c) {
  using dist::Law;
  c.at_most("|sigma(6) - 1|", std::abs(dist::sigma(6).value - 1.0), 1e-3);
  c.at_most("|sigma2(6) - 1|", std::abs(dist::sigma2(6).value - 1.0), 1e-3);
  c.at_most("|phi1(4) - 1|", std::abs(dist::phi1(4).value - 1.0), 1e-3);
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  const double cuts[] = {0.0, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 6.0, 8.0};
  for (Law law : {Law::sigma, Law::sigma2, Law::phi1}) {
    double total = 0.0;
    for (int i = 0; i + 1 < 9; ++i)
      total += GK::integrate([&](double r) { return dist::density(law, r).value; }, cuts[i], cuts[i + 1], 3, 1e-9);
    c.at_most(std::string("|int_0^8 ") + dist::law_name(law) + "' - 1|", std::abs(total - 1.0), 1e-3);
  }
}

void finite_size(Checks& c) {
  const int n = 60;
  const auto counts = gf::exact_min_skeleton_distribution(n);
  mpz_class total = 0;
  for (const auto& [m, k] : counts) total += k;
  const double s = std::pow(n, 0.25);
  double sup = 0.0, below = 0.0;  // below = P(m < k)
  for (int k = 1; k <= n; ++k) {
    const double r = k / s;
    if (r >= 0.3 && r <= 1.5) sup = std::max(sup, std::abs(below - dist::sigma(r).value));
    if (counts.count(k)) below += mpq_class(counts.at(k), total).get_d();
  }
  c.at_most("sup |P(l_min < k) - sigma(k / 60^(1/4))| on r in [0.3, 1.5]", sup, 0.1);
}

// sup over the label lattice of |P(X < k) - law(k / s)|
double lattice_sup(const std::map<int, double>& hist, double total, double s, dist::Law law) {
  double sup = 0.0, below = 0.0;
  const int kmax = hist.empty() ? 1 : hist.rbegin()->first + 1;
  for (int k = 1; k <= kmax; ++k) {
    sup = std::max(sup, std::abs(below / total - dist::cdf(law, k / s).value));
    if (auto it = hist.find(k); it != hist.end()) below += it->second;
  }
  return sup;
}

// Weighted frequencies against exact cell probabilities. Each draw contributes
// w (f - p) with f the cell indicators; rare cells are pooled and one cell is
// dropped so the covariance is regular. Returns the Hotelling p-value.
struct ChiSquare {
  double statistic = 0.0, p_value = 0.0;
  int dof = 0;
};

ChiSquare weighted_chi_square(const std::vector<std::vector<double>>& f, const std::vector<double>& w,
                              const std::vector<double>& p) {
  const int k = static_cast<int>(p.size()) - 1;
  const long long n = static_cast<long long>(w.size());
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(k);
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(k, k);
  Eigen::VectorXd z(k);
  for (long long i = 0; i < n; ++i) {
    for (int j = 0; j < k; ++j) z[j] = w[i] * (f[i][j] - p[j]);
    mean += z;
    cov.noalias() += z * z.transpose();
  }
  mean /= static_cast<double>(n);
  cov = cov / static_cast<double>(n) - mean * mean.transpose();
  const double t2 = static_cast<double>(n) * mean.dot(cov.ldlt().solve(mean));
  return {t2, boost::math::gamma_q(k / 2.0, t2 / 2.0), k};
}

void statistical(Checks& c, const Options& o) {
  {
    sampler::SamplerConfig cfg;
    cfg.target_size = 10000;
    cfg.seed = o.seed;
    cfg.threads = o.threads;
    const sampler::Sampler s(cfg);
    const auto run = s.run(10000);
    std::map<int, double> sys, marked;
    double total = 0.0, wmin = 1e300;
    for (const auto& d : run.draws) {
      sys[d.min_skeleton] += d.weight;
      marked[d.marked_label] += d.weight;
      total += d.weight;
      wmin = std::min(wmin, d.weight);
    }
    const double sc = std::pow(cfg.target_size, 0.25);
    c.at_most("n=1e4 half-systole CDF vs sigma, sup", lattice_sup(sys, total, sc, dist::Law::sigma), 0.05);
    c.at_most("n=1e4 marked distance CDF vs phi1, sup", lattice_sup(marked, total, sc, dist::Law::phi1), 0.05);
    c.at_least("n=1e4 weights >= 1", wmin, 1.0);
    c.truth("n=1e4 run", true,
            "attempts " + std::to_string(run.diag.attempts) + ", overflows " + std::to_string(run.diag.overflows) +
                ", degenerate " + std::to_string(run.diag.degenerate));
  }
  {
    const int n = 6;
    // cells (kind, min skeleton label, root corner label)
    const auto table = enumerate::enum_one_trees(n);
    const double all = table.total().get_d();
    std::map<std::vector<int>, int> cell;
    std::vector<double> p;
    int other = -1;
    for (const auto& [key, cnt] : table.rows) {
      const double q = cnt.get_d() / all;
      if (q < 1e-3) {
        if (other < 0) {
          other = static_cast<int>(p.size());
          p.push_back(0.0);
        }
        cell[key] = other;
        p[other] += q;
      } else {
        cell[key] = static_cast<int>(p.size());
        p.push_back(q);
      }
    }
    sampler::SamplerConfig cfg;
    cfg.target_size = n;
    cfg.seed = o.seed + 1;
    cfg.threads = o.threads;
    cfg.corner_histogram = true;
    const sampler::Sampler s(cfg);
    const auto run = s.run(1'000'000);
    std::vector<std::vector<double>> f;
    std::vector<double> w;
    f.reserve(run.draws.size());
    for (const auto& d : run.draws) {
      // root corner uniform among the 2n corners
      std::vector<double> row(p.size(), 0.0);
      for (int l = 1; l < static_cast<int>(d.corner_labels.size()); ++l) {
        if (d.corner_labels[l] == 0) continue;
        auto it = cell.find({d.degenerate ? 1 : 0, d.min_skeleton, l});
        if (it == cell.end()) throw std::logic_error("sampled a cell absent from the enumeration");
        row[it->second] += d.corner_labels[l] / (2.0 * n);
      }
      f.push_back(std::move(row));
      w.push_back(d.weight);
    }
    const ChiSquare chi = weighted_chi_square(f, w, p);
    c.at_least("n=6 weighted cell frequencies, Hotelling p-value (dof " + std::to_string(chi.dof) + ")", chi.p_value,
               0.01);
  }
}

double budget(int id) {
  static const double b[] = {0, 10, 60, 30, 60, 300, 30, 10, 300, 60, 60, 300, 900};
  return b[id];
}

}  // namespace

Profile parse_profile(const std::string& name) {
  if (name == "quick") return Profile::quick;
  if (name == "full") return Profile::full;
  throw std::invalid_argument("unknown profile: " + name);
}

std::vector<int> criteria(Profile profile) {
  if (profile == Profile::quick) return {1, 2, 4, 6, 7, 9};
  return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
}

const char* criterion_name(int id) {
  static const char* names[] = {"",
                                "exact series identities",
                                "counting bijection",
                                "asymptotics",
                                "codec round trips",
                                "loop theorem",
                                "scaling-limit convergence",
                                "differential identities",
                                "quadrature oracles",
                                "distribution expansions",
                                "normalization",
                                "exact finite-size law",
                                "statistical"};
  if (id < 1 || id > 12) throw std::out_of_range("criterion id");
  return names[id];
}

const std::vector<int>& known_failures() {
  static const std::vector<int> ids = {3, 10};
  return ids;
}

Result run_criterion(int id, const Options& o) {
  Result r;
  r.id = id;
  r.name = criterion_name(id);
  r.budget = budget(id);
  Checks c;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    switch (id) {
      case 1: exact_identities(c); break;
      case 2: counting(c); break;
      case 3: asymptotics(c); break;
      case 4: codec(c); break;
      case 5: loop_theorem(c); break;
      case 6: scaling_limit(c); break;
      case 7: differential(c, o); break;
      case 8: oracles(c); break;
      case 9: expansions(c); break;
      case 10: normalization(c); break;
      case 11: finite_size(c); break;
      case 12: statistical(c, o); break;
    }
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (o.enforce_budgets) c.at_most("runtime seconds", r.seconds, r.budget);
  r.checks = c.json();
  r.pass = r.error.empty() && c.ok();
  return r;
}

std::vector<Result> run(const Options& o) {
  std::vector<Result> out;
  for (int id : criteria(o.profile)) out.push_back(run_criterion(id, o));
  return out;
}

std::string summary_line(const Result& r) {
  std::ostringstream s;
  s << (r.pass ? "[PASS] " : "[FAIL] ") << "criterion " << r.id << ": " << r.name << " (" << std::fixed;
  s.precision(1);
  s << r.seconds << " s)";
  if (!r.error.empty()) s << " error: " << r.error;
  for (const auto& [name, j] : r.checks.items())
    if (!j.value("ok", true)) s << "\n    failed: " << name << " " << j.dump();
  return s.str();
}

Json report(const std::vector<Result>& results) {
  Json j = Json::array();
  for (const auto& r : results) {
    Json e = {{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"seconds", r.seconds}, {"budget", r.budget},
              {"checks", r.checks}};
    if (!r.error.empty()) e["error"] = r.error;
    j.push_back(e);
  }
  return j;
}

}  // namespace torq::acceptance
