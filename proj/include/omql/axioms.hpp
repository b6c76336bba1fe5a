#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "omql/term.hpp"

namespace omql {

// Metavariables: α = meta(0), β = meta(1), γ = meta(2).
struct Schema {
  std::string id;
  Term pattern;
  unsigned arity = 0;  // number of metavariables used (1..3)
};

// A0a, A0b, A1, ..., A24 in that order.  A23 carries □ on β; see
// printed_a23_schema for the unboxed variant, which is not a tautology.
const std::vector<Schema>& axiom_schemas();
const Schema* find_schema(std::string_view id);
Term printed_a23_schema();

// Syntactic unification of the schema against t.  The result has one entry
// per metavariable of the schema.
std::optional<std::vector<Term>> match_schema(const Schema& schema, const Term& t);

struct AxiomMatch {
  std::string id;
  std::vector<Term> subst;
};

// Every schema t instantiates, in schema order.
std::vector<AxiomMatch> match_axiom(const Term& t);

Term instantiate(const Schema& schema, std::span<const Term> subst);

// α, β, γ ↦ x1, x2, x3.
Term fresh_instance(const Schema& schema);

}  // namespace omql
