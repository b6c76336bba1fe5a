#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace omql {

// Primitive signature ⟨∧, ∨, ¬, □, 0, 1⟩.  ◇ and R are folded into these at
// construction time.  Meta nodes are schema metavariables (α, β, γ).
enum class Op : std::uint8_t { Var, Meta, Zero, One, Neg, Box, And, Or };

class Term {
 public:
  // Empty handle; only meaningful as a placeholder before assignment.
  Term() = default;

  Op op() const noexcept;
  // Variable index (x1 has index 1) or metavariable index (α = 0).
  unsigned index() const noexcept;
  const Term& arg() const noexcept;
  const Term& lhs() const noexcept;
  const Term& rhs() const noexcept;

  // Node count.
  std::size_t comp() const noexcept;
  std::size_t hash() const noexcept;
  const void* identity() const noexcept { return node_.get(); }
  explicit operator bool() const noexcept { return node_ != nullptr; }

  bool is_unary() const noexcept { return op() == Op::Neg || op() == Op::Box; }
  bool is_binary() const noexcept { return op() == Op::And || op() == Op::Or; }

  friend bool operator==(const Term& a, const Term& b);

  static Term make(Op op, unsigned index, Term lhs, Term rhs);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

struct Term::Node {
  Op op;
  unsigned index;
  Term lhs;
  Term rhs;
  std::size_t comp;
  std::size_t hash;
};

inline Op Term::op() const noexcept { return node_->op; }
inline unsigned Term::index() const noexcept { return node_->index; }
inline const Term& Term::arg() const noexcept { return node_->lhs; }
inline const Term& Term::lhs() const noexcept { return node_->lhs; }
inline const Term& Term::rhs() const noexcept { return node_->rhs; }
inline std::size_t Term::comp() const noexcept { return node_->comp; }
inline std::size_t Term::hash() const noexcept { return node_->hash; }

Term var(unsigned i);
Term meta(unsigned i);
Term zero();
Term one();
Term neg(Term t);
Term box(Term t);
Term conj(Term a, Term b);
Term disj(Term a, Term b);
// ¬□¬t
Term diamond(Term t);
// (a ∧ b) ∨ (¬a ∧ ¬b)
Term requiv(Term a, Term b);

// Largest variable index occurring in t (0 when there is none).
unsigned max_var(const Term& t);
// Sorted distinct variable indices.
std::vector<unsigned> variables(const Term& t);
std::vector<unsigned> variables(std::span<const Term> terms);
bool has_meta(const Term& t);

// Replace Meta(i) by subst[i].
Term substitute_meta(const Term& t, std::span<const Term> subst);

// Grammar (loosest first):
//   equiv   := disj ('R' disj)*
//   disj    := conj ('|' conj)*
//   conj    := unary ('&' unary)*
//   unary   := '~' unary | '[]' unary | '<>' unary | atom
//   atom    := 'x' digits | '0' | '1' | '(' equiv ')'
// Binary operators associate to the left.  Throws SyntaxError.
Term parse_term(std::string_view text);

// Inverse of parse_term up to whitespace: R-shaped joins and ¬□¬ are folded
// back into R and <>.
std::string print_term(const Term& t);

// Metavariables print as a, b, c.
std::string print_schema(const Term& t);

// Hash-consed DAG over a set of terms; children always precede parents, so
// one forward pass evaluates every node.
class TermDag {
 public:
  struct Node {
    Op op;
    unsigned index;
    std::uint32_t lhs;
    std::uint32_t rhs;
  };

  std::uint32_t intern(const Term& t);
  std::uint32_t add(Op op, unsigned index, std::uint32_t lhs = 0, std::uint32_t rhs = 0);

  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  Term term(std::uint32_t id) const;

 private:
  struct Key {
    Op op;
    unsigned index;
    std::uint32_t lhs;
    std::uint32_t rhs;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };

  std::vector<Node> nodes_;
  std::unordered_map<Key, std::uint32_t, KeyHash> ids_;
};

// All terms over x1..x_vars, 0 and 1 with comp ≤ max_comp.  roots lists the
// dag ids of every such term in order of increasing comp.
struct TermEnumeration {
  TermDag dag;
  std::vector<std::uint32_t> roots;
};

TermEnumeration enumerate_terms(std::size_t max_comp, unsigned vars);

}  // namespace omql

template <>
struct std::hash<omql::Term> {
  std::size_t operator()(const omql::Term& t) const noexcept { return t.hash(); }
};
