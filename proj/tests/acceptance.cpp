// Runs every acceptance criterion with its time limit and prints one line
// per criterion.  Exit status is non-zero when any criterion fails.

#include <iostream>

#include "omql/suite.hpp"

int main() {
  omql::SuiteConfig config;
  config.corpus_dir = OMQL_CORPUS_DIR;
  std::cout << "acceptance seed=" << config.seed << "\n";
  auto report = omql::run_suite(config, [](const omql::CriterionResult& r) {
    std::cout << omql::format_result(r, false) << std::endl;
  });
  std::cout << omql::format_summary(report) << "\n";
  return report.all_pass() ? 0 : 1;
}
