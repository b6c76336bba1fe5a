#pragma once

#include <optional>
#include <string>
#include <vector>

#include "omql/lattice.hpp"
#include "omql/term.hpp"

namespace omql {

inline constexpr unsigned kDefaultVarCap = 4;
inline constexpr Elem kUnbound = static_cast<Elem>(-1);

// x_i ↦ values[i - 1]; kUnbound marks a gap.
struct Valuation {
  std::vector<Elem> values;

  Elem get(unsigned var) const {
    return var >= 1 && var <= values.size() ? values[var - 1] : kUnbound;
  }
  void set(unsigned var, Elem e) {
    if (values.size() < var) {
      values.resize(var, kUnbound);
    }
    values[var - 1] = e;
  }
};

// An OML with a box table.  saturate() gives the Boolean-saturated box; the
// with_box constructor accepts any table so that broken boxes can be audited.
class ModalOml {
 public:
  static ModalOml saturate(FiniteOml base);
  // Table entries must be element ids; nothing else is checked.
  static ModalOml with_box(FiniteOml base, std::vector<Elem> box);

  const FiniteOml& base() const noexcept { return base_; }
  std::size_t size() const noexcept { return base_.size(); }
  Elem box(Elem a) const { return box_[a]; }
  Elem diamond(Elem a) const { return base_.neg(box_[base_.neg(a)]); }
  const std::vector<Elem>& box_table() const noexcept { return box_; }
  const std::vector<Elem>& center() const noexcept { return center_; }
  bool is_central(Elem a) const { return central_[a] != 0; }
  // box equals the join of central elements below each argument.
  bool is_saturated() const;

 private:
  ModalOml(FiniteOml base, std::vector<Elem> box);

  FiniteOml base_;
  std::vector<Elem> box_;
  std::vector<Elem> center_;
  std::vector<char> central_;
};

// Per-law outcome; the witness lists (variable, element) in tuple order.
struct CheckResult {
  std::string id;
  bool pass = true;
  std::vector<std::pair<std::string, Elem>> witness;
  std::string detail;
};

struct Report {
  std::vector<CheckResult> items;

  bool all_pass() const;
  const CheckResult* find(std::string_view id) const;
  // `ID PASS` / `ID FAIL x=3 y=5` with element ids.
  std::string machine() const;
  // Same, with element names.
  std::string text(const FiniteOml& lattice) const;
};

Report verify_s_axioms(const ModalOml& m);
// Item 3 is read as ¬(¬z1∨z2) ∨ (¬(z1∨a) ∨ (z2∨a)) = 1 for central z1, z2.
Report verify_derived_laws(const ModalOml& m);

// Throws UnboundVariable; Meta nodes are unbound by definition.
Elem eval_term(const ModalOml& m, const Term& t, const Valuation& v);

struct EquationResult {
  bool holds = true;
  // First countervaluation, x1 most significant, elements in id order.
  std::optional<Valuation> countervaluation;
};

// Decides t = s through the R-form: (t∧s)∨(¬t∧¬s) evaluates to 1.  Throws
// VarCapExceeded when t, s have more than var_cap distinct variables.
EquationResult check_equation(const ModalOml& m, const Term& t, const Term& s,
                              unsigned var_cap = kDefaultVarCap);

// Same sweep, but comparing eval(t) == eval(s) directly.
EquationResult check_equation_direct(const ModalOml& m, const Term& t, const Term& s,
                                     unsigned var_cap = kDefaultVarCap);

// Visits every valuation of vars (lexicographic, first variable most
// significant); stops early when fn returns false.
template <class Fn>
void for_each_valuation(std::size_t size, const std::vector<unsigned>& vars, Fn&& fn) {
  Valuation v;
  for (auto x : vars) {
    v.set(x, 0);
  }
  if (vars.empty()) {
    fn(v);
    return;
  }
  while (true) {
    if (!fn(static_cast<const Valuation&>(v))) {
      return;
    }
    std::size_t pos = vars.size();
    while (pos > 0) {
      --pos;
      auto const x = vars[pos];
      if (v.get(x) + 1u < size) {
        v.set(x, static_cast<Elem>(v.get(x) + 1));
        break;
      }
      v.set(x, 0);
      if (pos == 0) {
        return;
      }
    }
  }
}

bool is_directly_indecomposable(const ModalOml& m);

// (x ∧ ¬□(x R y)) ∨ (z ∧ □(x R y)).  On a directly indecomposable algebra
// throws BadTables if the result violates the discriminator contract.
Elem discriminator_eval(const ModalOml& m, Elem x, Elem y, Elem z);

// Congruence/quotient/product/iso lifted to the modal signature.
Congruence modal_theta(const ModalOml& m, Elem z);
ModalOml modal_quotient(const ModalOml& m, const Congruence& c);
ModalOml modal_product(const ModalOml& lhs, const ModalOml& rhs);
std::optional<LatticeIso> modal_isomorphism(const ModalOml& lhs, const ModalOml& rhs);

struct NamedModel {
  std::string name;
  ModalOml algebra;
};

// b2, b4, b8, mo2, mo3, mo2xb2, saturated.
std::vector<NamedModel> default_library();
// Comma-separated builtin names (see builtin_by_name), saturated.
std::vector<NamedModel> library_from_names(std::string_view names);

}  // namespace omql
