// Runs the acceptance criteria and prints one PASS/FAIL line each.
#include "torq/acceptance.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <thread>

using namespace torq::acceptance;

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::string profile = "full", json;
  bool allow_known = false;
  std::vector<int> only;
  Options o;
  o.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  app.add_option("--profile", profile)->check(CLI::IsMember({"quick", "full"}));
  app.add_option("--only", only, "criterion ids")->check(CLI::Range(1, 12));
  app.add_option("--seed", o.seed);
  app.add_option("--threads", o.threads)->check(CLI::PositiveNumber);
  app.add_option("--json", json, "per-criterion report");
  app.add_flag("--allow-known", allow_known, "exit 0 when only the documented known failures fail");
  CLI11_PARSE(app, argc, argv);
  o.profile = parse_profile(profile);

  const auto ids = only.empty() ? criteria(o.profile) : only;
  std::vector<Result> results;
  int unexpected = 0, known = 0;
  for (int id : ids) {
    results.push_back(run_criterion(id, o));
    const Result& r = results.back();
    const bool is_known = std::count(known_failures().begin(), known_failures().end(), id) > 0;
    std::cout << summary_line(r);
    if (!r.pass && is_known) std::cout << "  (known failure)";
    std::cout << std::endl;
    if (!r.pass) ++(is_known ? known : unexpected);
  }
  std::cout << results.size() - unexpected - known << " passed, " << known << " known failures, " << unexpected
            << " unexpected failures\n";
  if (!json.empty()) std::ofstream(json) << report(results).dump(1) << "\n";
  if (unexpected > 0) return 1;
  return (known > 0 && !allow_known) ? 1 : 0;
}
