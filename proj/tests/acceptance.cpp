// Acceptance binary: one PASS/FAIL line per criterion; exit status 1 if any fails.
// Usage: acceptance [criterion-id ...] [--seed N] [--jobs N]

#include <iostream>
#include <string>
#include <thread>

#include "omegalogic/testing/suite.hpp"

int main(int argc, char** argv) {
  using namespace omegalogic::testing;
  SuiteOptions opt;
  opt.jobs = std::max(1u, std::thread::hardware_concurrency());
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--seed" && i + 1 < argc) {
      opt.seed = std::stoull(argv[++i]);
    } else if (a == "--jobs" && i + 1 < argc) {
      opt.jobs = static_cast<unsigned>(std::stoul(argv[++i]));
    } else {
      ids.push_back(std::stoi(a));
    }
  }
  if (ids.empty())
    for (int i = 1; i <= static_cast<int>(criteria().size()); ++i) ids.push_back(i);
  std::cout << "seed " << opt.seed << ", jobs " << opt.jobs << "\n";
  bool all = true;
  for (int id : ids) {
    CriterionResult r = run_criterion(id, opt);
    std::cout << format_line(r) << std::endl;
    all = all && r.pass;
  }
  return all ? 0 : 1;
}
