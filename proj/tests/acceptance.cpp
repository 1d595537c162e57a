#include <iostream>
#include <set>

#include "CLI11.hpp"
#include "varietas/suite.hpp"

using namespace varietas;

int main(int argc, char** argv) {
  CLI::App app{"Runs the reproduction suite and prints one line per criterion"};
  std::vector<int> expect_fail;
  std::vector<int> only;
  unsigned threads = 1;
  bool verbose = false;
  app.add_option("--expect-fail", expect_fail, "Criteria known to fail; exit 0 iff exactly these fail")->delimiter(',');
  app.add_option("--only", only, "Run only these criteria")->delimiter(',');
  app.add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_flag("-v,--verbose", verbose, "Print the full report");
  CLI11_PARSE(app, argc, argv);

  SuiteOptions opt;
  opt.threads = threads;
  opt.only.insert(only.begin(), only.end());
  const RunReport report = reproduction_suite(opt);
  if (verbose) std::cout << report.text(true) << "\n";

  std::set<int> failed;
  for (const auto& [group, ok] : report.groups()) {
    const int id = criterion_of(group);
    if (!ok) failed.insert(id);
    std::cout << (ok ? "PASS " : "FAIL ") << group << "\n";
    if (!ok)
      for (const auto& r : report.records)
        if (r.group == group && r.counted && !r.pass) std::cout << "     " << r.name << ": " << r.verdict << "\n";
  }
  const std::set<int> expected(expect_fail.begin(), expect_fail.end());
  std::set<int> expected_run;
  for (int id : expected)
    if (opt.only.empty() || opt.only.count(id)) expected_run.insert(id);
  if (failed != expected_run) {
    std::cout << "failing criteria differ from the expected set\n";
    return 1;
  }
  return 0;
}
