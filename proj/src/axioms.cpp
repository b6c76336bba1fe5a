#include "omql/axioms.hpp"

#include <algorithm>

#include "omql/error.hpp"

namespace omql {

namespace {

Schema make(std::string id, Term pattern) {
  unsigned arity = 0;
  std::vector<Term> stack{pattern};
  while (!stack.empty()) {
    Term t = stack.back();
    stack.pop_back();
    if (t.op() == Op::Meta) {
      arity = std::max(arity, t.index() + 1);
    } else if (t.is_unary()) {
      stack.push_back(t.arg());
    } else if (t.is_binary()) {
      stack.push_back(t.lhs());
      stack.push_back(t.rhs());
    }
  }
  return {std::move(id), std::move(pattern), arity};
}

std::vector<Schema> build_schemas() {
  Term const a = meta(0);
  Term const b = meta(1);
  Term const c = meta(2);
  auto R = [](Term x, Term y) { return requiv(std::move(x), std::move(y)); };
  auto B = [](Term x) { return box(std::move(x)); };
  auto N = [](Term x) { return neg(std::move(x)); };
  auto A = [](Term x, Term y) { return conj(std::move(x), std::move(y)); };
  auto O = [](Term x, Term y) { return disj(std::move(x), std::move(y)); };

  std::vector<Schema> s;
  s.push_back(make("A0a", R(one(), O(a, N(a)))));
  s.push_back(make("A0b", R(zero(), A(a, N(a)))));
  s.push_back(make("A1", R(a, a)));
  s.push_back(make("A2", O(N(R(a, b)), O(N(R(b, c)), R(a, c)))));
  s.push_back(make("A3", O(N(R(a, b)), R(N(a), N(b)))));
  s.push_back(make("A4", O(N(R(a, b)), R(A(a, c), A(b, c)))));
  s.push_back(make("A5", R(A(a, b), A(b, a))));
  s.push_back(make("A6", R(A(a, A(b, c)), A(A(a, b), c))));
  s.push_back(make("A7", R(A(a, O(a, b)), a)));
  s.push_back(make("A8", R(A(N(a), a), A(A(N(a), a), b))));
  s.push_back(make("A9", R(a, N(N(a)))));
  s.push_back(make("A10", R(N(O(a, b)), A(N(a), N(b)))));
  s.push_back(make("A11", R(O(a, A(N(a), O(a, b))), O(a, b))));
  s.push_back(make("A12", R(R(a, b), R(b, a))));
  s.push_back(make("A13", O(N(R(a, b)), O(N(a), b))));
  s.push_back(make("A14", R(O(B(a), a), a)));
  s.push_back(make("A15", R(B(O(a, N(a))), O(a, N(a)))));
  s.push_back(make("A16", R(B(B(a)), B(a))));
  s.push_back(make("A17", R(B(A(a, b)), A(B(a), B(b)))));
  s.push_back(make("A18", R(O(A(a, B(b)), A(a, N(B(b)))), a)));
  s.push_back(make("A19", R(B(O(a, N(B(b)))), O(B(a), N(B(b))))));
  s.push_back(make("A20", R(B(O(a, B(b))), O(B(a), B(b)))));
  s.push_back(make("A21", R(O(B(O(N(a), A(b, a))), O(N(B(a)), B(b))), O(N(B(a)), B(b)))));
  s.push_back(make("A22", O(N(O(a, N(b))), O(a, N(B(b))))));
  s.push_back(make("A23", O(N(O(c, N(B(b)))), O(N(O(B(b), a)), O(c, a)))));
  s.push_back(make("A24", O(B(O(a, b)), A(N(B(a)), N(B(b))))));
  return s;
}

bool unify(const Term& pattern, const Term& t, std::vector<Term>& subst) {
  if (pattern.op() == Op::Meta) {
    auto& slot = subst[pattern.index()];
    if (!slot) {
      slot = t;
      return true;
    }
    return slot == t;
  }
  if (pattern.op() != t.op() || pattern.index() != t.index()) {
    return false;
  }
  if (pattern.is_unary()) {
    return unify(pattern.arg(), t.arg(), subst);
  }
  if (pattern.is_binary()) {
    return unify(pattern.lhs(), t.lhs(), subst) && unify(pattern.rhs(), t.rhs(), subst);
  }
  return true;
}

}  // namespace

const std::vector<Schema>& axiom_schemas() {
  static const std::vector<Schema> schemas = build_schemas();
  return schemas;
}

const Schema* find_schema(std::string_view id) {
  for (auto const& s : axiom_schemas()) {
    if (s.id == id) {
      return &s;
    }
  }
  return nullptr;
}

Term printed_a23_schema() {
  Term const a = meta(0);
  Term const b = meta(1);
  Term const c = meta(2);
  return disj(neg(disj(c, neg(b))), disj(neg(disj(b, a)), disj(c, a)));
}

std::optional<std::vector<Term>> match_schema(const Schema& schema, const Term& t) {
  std::vector<Term> subst(schema.arity);
  if (!unify(schema.pattern, t, subst)) {
    return std::nullopt;
  }
  return subst;
}

std::vector<AxiomMatch> match_axiom(const Term& t) {
  std::vector<AxiomMatch> result;
  for (auto const& s : axiom_schemas()) {
    if (auto subst = match_schema(s, t)) {
      result.push_back({s.id, std::move(*subst)});
    }
  }
  return result;
}

Term instantiate(const Schema& schema, std::span<const Term> subst) {
  if (subst.size() != schema.arity) {
    throw Error(ErrorCode::MalformedScript,
                schema.id + " takes " + std::to_string(schema.arity) + " metavariable(s)");
  }
  return substitute_meta(schema.pattern, subst);
}

Term fresh_instance(const Schema& schema) {
  std::vector<Term> subst;
  for (unsigned i = 0; i < schema.arity; ++i) {
    subst.push_back(var(i + 1));
  }
  return instantiate(schema, subst);
}

}  // namespace omql
