#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "omql/foulis.hpp"
#include "omql/kripke.hpp"
#include "omql/modal.hpp"
#include "omql/term.hpp"

namespace omql {

struct SuiteConfig {
  std::vector<NamedModel> library = default_library();
  // Set when the library was chosen by hand; criteria with a fixed lattice
  // list then only use the lattices present in the library.
  bool restricted = false;
  std::uint64_t seed = 7;
  NegationReading negation = NegationReading::Star;
  unsigned var_cap = 3;
  // G(MO2×B2) needs 12.
  std::size_t foulis_cap = 12;
  unsigned jobs = 1;
  std::string corpus_dir;
};

enum class Status { Pass, Fail, Skip };
const char* to_string(Status s);

struct CriterionResult {
  unsigned number = 0;
  std::string title;
  Status status = Status::Pass;
  std::string detail;
  double seconds = 0;
  double limit = 0;
};

struct SuiteReport {
  std::vector<CriterionResult> results;

  bool all_pass() const;
  std::size_t failures() const;
};

inline constexpr unsigned kCriterionCount = 11;

// Criteria are numbered 1..kCriterionCount.  Errors thrown while running a
// criterion turn into a Fail with the message as detail; so does exceeding
// the time limit.
CriterionResult run_criterion(unsigned number, const SuiteConfig& config);
SuiteReport run_suite(const SuiteConfig& config,
                      const std::function<void(const CriterionResult&)>& on_result = {});

// `C6 PASS 4.1s/120s detail`, or with machine set
// `C6 PASS seconds=4.10 limit=120 detail`.
std::string format_result(const CriterionResult& r, bool machine);
std::string format_summary(const SuiteReport& report);

// A random term whose complexity is drawn uniformly from [1, max_comp];
// atoms are x1..x<vars> and, rarely, 0 and 1.
Term random_term(std::mt19937_64& rng, unsigned vars, std::size_t max_comp);

}  // namespace omql
