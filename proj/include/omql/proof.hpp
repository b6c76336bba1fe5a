#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "omql/term.hpp"

namespace omql {

enum class Rule { Premise, Axiom, DS, N };

struct Justification {
  Rule rule = Rule::Premise;
  std::string axiom;                            // Axiom
  std::vector<std::pair<char, Term>> subst;     // Axiom: a/b/c ↦ term
  std::size_t first = 0;                        // DS i j, N i
  std::size_t second = 0;
};

struct ProofLine {
  std::size_t index = 0;
  Term term;
  Justification why;
  std::size_t source_line = 0;
};

// File format (`#` comments, blank lines ignored):
//   theory:
//     <term>                  zero or more premises, one per line
//   goal: <term>              optional; consequence files
//   k. <term> ; premise
//   k. <term> ; axiom A12 a=<term> b=<term> [c=<term>]
//   k. <term> ; DS i j        line j must be ~t_i | t_k
//   k. <term> ; N i           t_k must be []t_i
struct ProofScript {
  std::vector<Term> theory;
  std::vector<ProofLine> lines;
  std::optional<Term> goal;
};

// Throws SyntaxError for unparsable terms and MalformedScript for
// non-increasing indices or references that do not point backward.
ProofScript parse_proof(std::istream& in, const std::string& source = "<input>");
ProofScript read_proof_file(const std::string& path);

struct LineVerdict {
  std::size_t index = 0;
  bool ok = false;
  std::string reason;
};

struct ProofVerdict {
  bool accepted = false;
  std::vector<LineVerdict> lines;
  std::optional<Term> conclusion;
  bool goal_met = true;  // false when a goal is given and the last line differs
};

// With fill, an axiom line without a substitution is completed by matching
// the cited schema against the line's term.
ProofVerdict check_proof(const ProofScript& script, bool fill = false);

std::string format_justification(const Justification& why);

}  // namespace omql
