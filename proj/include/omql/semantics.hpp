#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "omql/modal.hpp"
#include "omql/term.hpp"

namespace omql {

// The library is finite and the variety is not, so a sweep can only refute.
struct SemanticResult {
  bool refuted = false;
  std::size_t model = 0;  // index into the model list when refuted
  std::optional<Valuation> valuation;

  const char* label() const { return refuted ? "REFUTED" : "NOT-REFUTED-ON-LIBRARY"; }
};

// t evaluates to 1 under every valuation in every model.  Models are swept in
// order; with jobs > 1 they are split across threads and the witness of the
// earliest model wins.  Throws VarCapExceeded.
SemanticResult is_tautology(const Term& t, std::span<const NamedModel> models,
                            unsigned var_cap = kDefaultVarCap, unsigned jobs = 1);

// Whenever every premise evaluates to 1, so does t.
SemanticResult semantic_consequence(std::span<const Term> theory, const Term& t,
                                    std::span<const NamedModel> models,
                                    unsigned var_cap = kDefaultVarCap, unsigned jobs = 1);

// ~[]γ | t
Term deduction_transform(const Term& gamma, const Term& t);

// Shortest prefix of theory whose library consequence already yields t.
// Throws NotConsequence if the whole theory does not.
std::vector<Term> compactness_probe(std::span<const Term> theory, const Term& t,
                                    std::span<const NamedModel> models,
                                    unsigned var_cap = kDefaultVarCap);

std::string format_valuation(const ModalOml& m, const Valuation& v);

}  // namespace omql
