// torq: command line front end. Exit codes: 0 ok, 1 failed check, 2 usage error.
#include "torq/acceptance.hpp"
#include "torq/codec.hpp"
#include "torq/distributions.hpp"
#include "torq/enumerate.hpp"
#include "torq/gf_series.hpp"
#include "torq/json_io.hpp"
#include "torq/numeric_gf.hpp"
#include "torq/sampler.hpp"
#include "torq/scaling.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

using namespace torq;

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// writes to --out when set, stdout otherwise
void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw std::runtime_error("cannot open " + out);
  f << text;
}

Json read_json(const std::string& path) {
  if (path.empty() || path == "-") return Json::parse(std::cin);
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  return Json::parse(f);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

struct Grid {
  double a = 0, b = 0, step = 0;
};

Grid parse_grid(const std::string& s) {
  Grid g;
  char c1 = 0, c2 = 0;
  std::istringstream in(s);
  if (!(in >> g.a >> c1 >> g.b >> c2 >> g.step) || c1 != ':' || c2 != ':' || !(g.step > 0) || g.b < g.a)
    throw UsageError("grid must be a:b:step with step > 0 and a <= b");
  return g;
}

std::string curve_csv(const dist::Curve& c) {
  std::string s = "r,cdf,pdf,err\n";
  for (std::size_t i = 0; i < c.r.size(); ++i)
    s += fmt(c.r[i]) + "," + fmt(c.cdf[i]) + "," + fmt(c.pdf[i]) + "," + fmt(c.err[i]) + "\n";
  return s;
}

FormalSeries gf_series(const std::string& which, int order, int l, int l2, int p) {
  if (which == "x") return gf::solve_x(order);
  if (which == "R") return gf::series_R(l, order);
  if (which == "X") return gf::series_X(l, order);
  if (which == "Xtilde") return gf::series_Xtilde(l, l2, order);
  if (which == "K") return gf::series_K(l, l2, order);
  if (which == "kp") return gf::series_kp(p, order);
  if (which == "W1") return gf::series_W1(order);
  if (which == "W2") return gf::series_W2(order);
  if (which == "Q1") return gf::series_Q1(order).pointed;
  if (which == "Q1rooted") return gf::series_Q1(order).rooted;
  throw UsageError("unknown series " + which);
}

scaling::cplx scaling_fn(const std::string& fn, scaling::cplx L) {
  using namespace scaling;
  if (fn == "F") return F(L);
  if (fn == "Fprime") return Fprime(L);
  if (fn == "C") return C(L);
  if (fn == "H") return H(L);
  if (fn == "I") return I(L);
  if (fn == "J") return J(L);
  if (fn == "F1") return F1(L);
  if (fn == "A0") return A0(L);
  if (fn == "A1") return A1(L);
  if (fn == "A2") return A2(L);
  if (fn == "M") return M(L);
  throw UsageError("unknown function " + fn);
}

int run_figures(const std::string& dir) {
  std::filesystem::create_directories(dir);
  struct Fig {
    const char* file;
    dist::Law law;
    double rmax;
  };
  for (const Fig& f : {Fig{"fig3.csv", dist::Law::sigma, 6.0}, Fig{"fig5.csv", dist::Law::sigma2, 6.0},
                       Fig{"fig7.csv", dist::Law::phi1, 4.0}}) {
    emit((std::filesystem::path(dir) / f.file).string(), curve_csv(dist::curve(f.law, f.rmax, 0.02, true)));
    std::cerr << "wrote " << f.file << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"toroidal quadrangulations: generating functions, bijection, sampler, scaling laws"};
  app.require_subcommand(1);
  std::string out;
  int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  double tol = 1e-10;
  app.add_option("--out", out, "output file (default stdout)")->envname("TORQ_OUT");
  app.add_option("--threads", threads, "worker threads")->envname("TORQ_THREADS")->check(CLI::PositiveNumber);
  app.add_option("--tol", tol, "relative quadrature tolerance")->envname("TORQ_TOL")->check(CLI::PositiveNumber);

  // gf
  auto* gfc = app.add_subcommand("gf", "generating functions as exact series (JSON) or numeric values");
  std::string gf_which = "R";
  int order = 10, l = 1, l2 = 1, p = 0, mins_n = 10;
  double gval = 0.0;
  gfc->add_option("which", gf_which, "x R X Xtilde K kp W1 W2 Q1 Q1rooted, or minskel");
  gfc->add_option("--order", order)->envname("TORQ_ORDER")->check(CLI::NonNegativeNumber);
  gfc->add_option("--l,--lmax", l, "first label")->envname("TORQ_LMAX");
  gfc->add_option("--l2", l2, "second label");
  gfc->add_option("--p", p, "offset for kp");
  gfc->add_option("--g", gval, "evaluate numerically at this g instead");
  gfc->add_option("--n", mins_n, "size for minskel")->envname("TORQ_N");

  // enum
  auto* en = app.add_subcommand("enum", "exhaustive count tables (CSV)");
  std::string en_which = "one-trees";
  int en_n = 4, en_l = 1;
  en->add_option("which", en_which)->check(CLI::IsMember({"one-trees", "planted", "marked", "planar"}));
  en->add_option("--n", en_n)->envname("TORQ_N")->check(CLI::PositiveNumber);
  en->add_option("--l,--lmax", en_l, "root label for planted trees");

  // codec
  auto* co = app.add_subcommand("codec", "bijection: decode, encode, exhaustive round trip");
  std::string co_mode = "roundtrip", co_in;
  int co_n = 4, co_origin = 0, co_root = -1;
  co->add_option("mode", co_mode)->check(CLI::IsMember({"decode", "encode", "roundtrip"}));
  co->add_option("--in", co_in, "JSON input (default stdin)");
  co->add_option("--n", co_n, "size for roundtrip")->envname("TORQ_N")->check(CLI::Range(2, 7));
  co->add_option("--origin", co_origin, "origin vertex for encode (or 'origin' in the JSON)");
  co->add_option("--root", co_root, "root half-edge for encode (or 'root_edge' in the JSON)");

  // sample
  auto* sa = app.add_subcommand("sample", "weighted samples of large toroidal quadrangulations (CSV)");
  sampler::SamplerConfig scfg;
  long long samples = 100;
  std::optional<std::uint64_t> seed;
  sa->add_option("--n", scfg.target_size)->envname("TORQ_N")->check(CLI::Range(2, 10'000'000));
  sa->add_option("--delta", scfg.window)->envname("TORQ_DELTA")->check(CLI::Range(0.0, 0.99));
  sa->add_option("--seed", seed)->envname("TORQ_SEED")->required();
  sa->add_option("--samples", samples)->envname("TORQ_SAMPLES")->check(CLI::PositiveNumber);
  sa->add_option("--max-attempts", scfg.max_attempts)->check(CLI::PositiveNumber);
  sa->add_option("--label-cap", scfg.label_cap)->check(CLI::NonNegativeNumber);

  // scaling
  auto* sc = app.add_subcommand("scaling", "continuum scaling functions");
  sc->require_subcommand(1);
  auto* sce = sc->add_subcommand("eval", "CSV of L, Re, Im on a grid");
  std::string fn = "F1", grid = "0.1:3:0.1";
  bool on_ray = false;
  sce->add_option("--fn", fn);
  sce->add_option("--grid", grid, "a:b:step")->envname("TORQ_GRID");
  sce->add_flag("--ray", on_ray, "evaluate at e^{-i pi/4} times the grid points");
  auto* scr = sc->add_subcommand("residuals", "JSON report of the differential identities");

  // dist
  auto* di = app.add_subcommand("dist", "limit laws as CSV (r, cdf, pdf, err)");
  std::string law = "sigma";
  double rmax = 6.0, step = 0.02;
  bool with_density = false;
  di->add_option("law", law)->check(CLI::IsMember({"sigma", "sigma2", "phi1"}));
  di->add_option("--rmax", rmax)->check(CLI::NonNegativeNumber);
  di->add_option("--step", step)->check(CLI::PositiveNumber);
  di->add_flag("--density", with_density);

  auto* fi = app.add_subcommand("figures", "CSV data for the three distribution plots");
  std::string fig_dir = "figures";
  fi->add_option("--dir", fig_dir);

  auto* ve = app.add_subcommand("verify", "run the acceptance criteria");
  std::string profile = "quick", report_path;
  std::uint64_t vseed = 20261016;
  ve->add_option("--profile", profile)->check(CLI::IsMember({"quick", "full"}));
  ve->add_option("--seed", vseed)->envname("TORQ_SEED");
  ve->add_option("--json", report_path, "write the per-criterion report here");
  double perturb = 896.0;
  ve->add_option("--f1-constant", perturb, "small-L constant of F1 (negative control)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    dist::Options dopt;
    dopt.tol = tol;
    if (*gfc) {
      if (gf_which == "minskel") {
        std::string s = "m,count\n";
        for (const auto& [m, c] : gf::exact_min_skeleton_distribution(mins_n)) s += std::to_string(m) + "," + c.get_str() + "\n";
        emit(out, s);
      } else if (gval > 0) {
        const gf::NumericGF num(gval);
        double v = 0;
        if (gf_which == "R") v = num.R(l);
        else if (gf_which == "X") v = num.X(l);
        else if (gf_which == "Xtilde") v = num.Xtilde(l, l2);
        else if (gf_which == "K") v = num.K(l, l2);
        else if (gf_which == "kp") v = num.kp(p);
        else if (gf_which == "W1") v = num.W1();
        else if (gf_which == "W2") v = num.W2();
        else throw UsageError("no numeric form for " + gf_which);
        emit(out, Json{{"which", gf_which}, {"g", gval}, {"value", v}}.dump() + "\n");
      } else {
        emit(out, series_to_json(gf_series(gf_which, order, l, l2, p)).dump() + "\n");
      }
    } else if (*en) {
      enumerate::CountTable t;
      if (en_which == "one-trees") t = enumerate::enum_one_trees(en_n);
      else if (en_which == "planted") t = enumerate::enum_planted_trees(en_l, en_n);
      else if (en_which == "marked") t = enumerate::marked_vertex_histogram(en_n);
      else {
        emit(out, "n,exact,enumerated\n" + std::to_string(en_n) + "," + enumerate::count_pointed_planar(en_n).get_str() +
                      "," + enumerate::count_pointed_planar_enumerated(en_n).get_str() + "\n");
        return 0;
      }
      emit(out, t.to_csv());
    } else if (*co) {
      if (co_mode == "decode") {
        const Decoded d = decode(one_tree_from_json(read_json(co_in)));
        emit(out, Json{{"map", map_to_json(d.quad)}, {"origin", d.origin}, {"root_edge", d.root_edge}}.dump() + "\n");
      } else if (co_mode == "encode") {
        const Json j = read_json(co_in);
        const CombMap q = map_from_json(j.contains("map") ? j["map"] : j);
        const int origin = j.value("origin", co_origin);
        const int root = co_root >= 0 ? co_root : j.at("root_edge").get<int>();
        emit(out, one_tree_to_json(encode(q, origin, root)).dump() + "\n");
      } else {
        long long objects = 0, failures = 0;
        enumerate::for_each_rooted(co_n, 1, [&](const LabeledOneTree& t) {
          ++objects;
          const Decoded d = decode(t);
          if (!same_rooted(encode(d.quad, d.origin, d.root_edge), t)) ++failures;
        });
        emit(out, Json{{"n", co_n}, {"objects", objects}, {"failures", failures}}.dump(1) + "\n");
        return failures == 0 ? 0 : 1;
      }
    } else if (*sa) {
      scfg.seed = *seed;
      scfg.threads = threads;
      const sampler::Sampler s(scfg);
      const auto run = s.run(samples);
      std::string csv = "size,weight,minskel,m2,marked_distance\n";
      for (const auto& d : run.draws)
        csv += std::to_string(d.size) + "," + fmt(d.weight) + "," + std::to_string(d.min_skeleton) + "," +
               std::to_string(d.m2) + "," + std::to_string(d.marked_label) + "\n";
      emit(out, csv);
      const auto& g = run.diag;
      std::cerr << "g=" << fmt(s.g()) << " eps=" << fmt(s.epsilon()) << " label_cap=" << s.label_cap()
                << " attempts=" << g.attempts << " retained=" << g.retained << " window_rejects=" << g.window_rejects
                << " min_rejects=" << g.min_rejects << " overflows=" << g.overflows << "\n";
    } else if (*sce) {
      const Grid gr = parse_grid(grid);
      const scaling::cplx dir = on_ray ? std::polar(1.0, -M_PI / 4) : scaling::cplx(1.0);
      std::string csv = "L,re,im\n";
      for (int i = 0; gr.a + i * gr.step <= gr.b + 1e-12; ++i) {
        const double x = gr.a + i * gr.step;
        const scaling::cplx v = scaling_fn(fn, dir * x);
        csv += fmt(x) + "," + fmt(v.real()) + "," + fmt(v.imag()) + "\n";
      }
      emit(out, csv);
    } else if (*scr) {
      Json j = Json::array();
      bool ok = true;
      for (const auto& r : scaling::residuals()) {
        j.push_back({{"name", r.name}, {"kind", r.kind}, {"max_abs", r.max_abs}, {"threshold", r.threshold}, {"ok", r.ok()}});
        ok = ok && r.ok();
      }
      emit(out, j.dump(1) + "\n");
      return ok ? 0 : 1;
    } else if (*di) {
      emit(out, curve_csv(dist::curve(dist::parse_law(law), rmax, step, with_density, dopt)));
    } else if (*fi) {
      return run_figures(fig_dir);
    } else if (*ve) {
      acceptance::Options o;
      o.profile = acceptance::parse_profile(profile);
      o.threads = threads;
      o.seed = vseed;
      o.f1_small_l_denominator = perturb;
      bool ok = true;
      std::vector<acceptance::Result> results;
      for (int id : acceptance::criteria(o.profile)) {
        results.push_back(acceptance::run_criterion(id, o));
        std::cout << acceptance::summary_line(results.back()) << std::endl;
        ok = ok && results.back().pass;
      }
      if (!report_path.empty()) emit(report_path, acceptance::report(results).dump(1) + "\n");
      return ok ? 0 : 1;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
