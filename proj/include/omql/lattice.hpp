#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "omql/error.hpp"

namespace omql {

// Element ids of a finite lattice are dense integers 0..n-1.
using Elem = std::uint16_t;

inline constexpr std::size_t kDefaultLatticeCap = 64;

// Unvalidated lattice description: the order (any generating set of pairs,
// reflexive-transitive closure is taken) and the negation table.  Meet and
// join are always recomputed from the order.
struct RawLattice {
  std::size_t size = 0;
  std::vector<std::string> names;
  std::vector<std::pair<Elem, Elem>> leq;
  std::vector<Elem> neg;
  Elem bot = 0;
  Elem top = 0;
};

struct Diagnostic {
  ErrorCode code;
  std::vector<Elem> witness;
  std::string message;
};

class FiniteOml;

struct ValidationResult;

// A validated finite orthomodular lattice.  Instances only come out of
// validate_lattice, so every value satisfies the OML axioms.
class FiniteOml {
 public:
  std::size_t size() const noexcept { return n_; }
  Elem bot() const noexcept { return bot_; }
  Elem top() const noexcept { return top_; }

  bool leq(Elem a, Elem b) const { return leq_[a * n_ + b] != 0; }
  Elem meet(Elem a, Elem b) const { return meet_[a * n_ + b]; }
  Elem join(Elem a, Elem b) const { return join_[a * n_ + b]; }
  Elem neg(Elem a) const { return neg_[a]; }

  const std::string& name(Elem a) const { return names_[a]; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<Elem> find(std::string_view name) const;

  // Covering pairs (a, b): a < b with nothing strictly between.
  std::vector<std::pair<Elem, Elem>> covers() const;
  RawLattice to_raw() const;

  bool same_tables(const FiniteOml& other) const;

 private:
  friend ValidationResult validate_lattice(const RawLattice&, std::size_t);

  std::size_t n_ = 0;
  std::vector<std::string> names_;
  std::vector<char> leq_;
  std::vector<Elem> meet_;
  std::vector<Elem> join_;
  std::vector<Elem> neg_;
  Elem bot_ = 0;
  Elem top_ = 0;
};

struct ValidationResult {
  std::optional<FiniteOml> lattice;
  std::vector<Diagnostic> diagnostics;

  bool ok() const noexcept { return lattice.has_value(); }
};

// Checks every invariant exhaustively.  Diagnostics carry the first failing
// witness for each law; a lattice is returned only when there are none.
ValidationResult validate_lattice(const RawLattice& raw,
                                  std::size_t size_cap = kDefaultLatticeCap);

// validate_lattice, throwing the first diagnostic as an Error.
FiniteOml make_lattice(const RawLattice& raw,
                       std::size_t size_cap = kDefaultLatticeCap);

// Center via a = (a∧z) ∨ (a∧¬z) for all a.  With cross_check the
// definitional (a,b,z)T sweep is run as well and a mismatch throws.
std::vector<Elem> center(const FiniteOml& lattice, bool cross_check = false);

// Center straight from the definition: z is central iff (a,b,z)D and
// (a,b,z)D* hold for all permutations of a, b, z.
std::vector<Elem> center_definitional(const FiniteOml& lattice);

bool is_central(const FiniteOml& lattice, Elem z);

struct Congruence {
  std::vector<std::size_t> class_of;
  std::size_t num_classes = 0;
  std::optional<Elem> witness;

  bool related(Elem a, Elem b) const { return class_of[a] == class_of[b]; }
};

// Classes are numbered by first occurrence in element order.
Congruence partition_from_labels(std::span<const std::size_t> labels);

// Θ_z: a ~ b iff a∧z = b∧z.  Throws NotCentral.  Compatibility with the
// operations (and box, when given) is verified before returning.
Congruence theta_congruence(const FiniteOml& lattice, Elem z,
                            std::span<const Elem> box = {});

// Well-definedness of ∧, ∨, ¬ (and box when non-empty) on classes.  On
// failure, returns the offending pair of related elements.
std::optional<std::pair<Elem, Elem>> compatibility_violation(
    const FiniteOml& lattice, const Congruence& congruence,
    std::span<const Elem> box = {});

// Quotient element i is congruence class i.  Throws NotCompatible, and
// Degenerate for the total congruence.
FiniteOml quotient(const FiniteOml& lattice, const Congruence& congruence);

// Element (i, j) gets id i * |rhs| + j.
FiniteOml direct_product(const FiniteOml& lhs, const FiniteOml& rhs);

struct LatticeIso {
  std::vector<Elem> map;
};

bool is_isomorphism(const FiniteOml& lhs, const FiniteOml& rhs,
                    std::span<const Elem> map, std::span<const Elem> lhs_box = {},
                    std::span<const Elem> rhs_box = {});

// Backtracking search over operation-preserving bijections.  Box tables are
// respected when both are non-empty.
std::optional<LatticeIso> find_isomorphism(const FiniteOml& lhs,
                                           const FiniteOml& rhs,
                                           std::span<const Elem> lhs_box = {},
                                           std::span<const Elem> rhs_box = {});

// Model library: boolean(k) = 2^k, mo(n) = horizontal sum of n four-element
// blocks, chain2 = B2, product(A, B).
FiniteOml builtin_boolean(unsigned atoms);
FiniteOml builtin_mo(unsigned blocks);
FiniteOml builtin(std::string_view name, std::span<const std::string> params);

// Short names used by the CLI and the default library: b2, b4, b8, b<2^k>,
// mo<n>, chain2, and products joined by 'x' (e.g. mo2xb2).
FiniteOml builtin_by_name(std::string_view spec);

}  // namespace omql
