#pragma once

#include "torq/json_io.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace torq::acceptance {

enum class Profile { quick, full };
Profile parse_profile(const std::string& name);

struct Options {
  Profile profile = Profile::full;
  int threads = 1;
  std::uint64_t seed = 20261016;
  // small-L constant of F1 (F1 ~ L^4 / c); changing it must fail criterion 7
  double f1_small_l_denominator = 896.0;
  bool enforce_budgets = true;
};

struct Result {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  double budget = 0.0;  // seconds
  Json checks = Json::object();  // per check: value, bound, ok
  std::string error;  // exception text when the criterion threw
};

// criterion ids run by a profile
std::vector<int> criteria(Profile profile);
const char* criterion_name(int id);
Result run_criterion(int id, const Options& o);
std::vector<Result> run(const Options& o);

// criteria that fail on a faithful implementation; see README
const std::vector<int>& known_failures();

std::string summary_line(const Result& r);
Json report(const std::vector<Result>& results);

}  // namespace torq::acceptance
