#include "omql/modal.hpp"

#include <array>
#include <sstream>

namespace omql {

ModalOml::ModalOml(FiniteOml base, std::vector<Elem> box)
    : base_(std::move(base)), box_(std::move(box)) {
  if (box_.size() != base_.size()) {
    throw Error(ErrorCode::BadTables, "box table has wrong size");
  }
  for (Elem b : box_) {
    if (b >= base_.size()) {
      throw Error(ErrorCode::BadTables, "box table entry out of range");
    }
  }
  center_ = omql::center(base_);
  central_.assign(base_.size(), 0);
  for (Elem z : center_) {
    central_[z] = 1;
  }
}

namespace {

std::vector<Elem> saturated_box(const FiniteOml& L, const std::vector<Elem>& center) {
  std::vector<Elem> box(L.size());
  for (Elem a = 0; a < L.size(); ++a) {
    Elem acc = L.bot();
    for (Elem z : center) {
      if (L.leq(z, a)) {
        acc = L.join(acc, z);
      }
    }
    // The center is a finite Boolean subalgebra, so the join stays central.
    if (!L.leq(acc, a) || !is_central(L, acc)) {
      throw Error(ErrorCode::BadTables, "join of central elements below " + L.name(a) +
                                            " is not a central lower bound");
    }
    box[a] = acc;
  }
  return box;
}

}  // namespace

ModalOml ModalOml::saturate(FiniteOml base) {
  auto box = saturated_box(base, omql::center(base));
  return ModalOml(std::move(base), std::move(box));
}

ModalOml ModalOml::with_box(FiniteOml base, std::vector<Elem> box) {
  return ModalOml(std::move(base), std::move(box));
}

bool ModalOml::is_saturated() const { return saturated_box(base_, center_) == box_; }

bool Report::all_pass() const {
  for (auto const& item : items) {
    if (!item.pass) {
      return false;
    }
  }
  return true;
}

const CheckResult* Report::find(std::string_view id) const {
  for (auto const& item : items) {
    if (item.id == id) {
      return &item;
    }
  }
  return nullptr;
}

std::string Report::machine() const {
  std::ostringstream out;
  for (auto const& item : items) {
    out << item.id << (item.pass ? " PASS" : " FAIL");
    for (auto const& [name, e] : item.witness) {
      out << ' ' << name << '=' << e;
    }
    out << '\n';
  }
  return out.str();
}

std::string Report::text(const FiniteOml& lattice) const {
  std::ostringstream out;
  for (auto const& item : items) {
    out << item.id << (item.pass ? " PASS" : " FAIL");
    for (auto const& [name, e] : item.witness) {
      out << ' ' << name << '=' << lattice.name(e);
    }
    if (!item.detail.empty()) {
      out << "  (" << item.detail << ')';
    }
    out << '\n';
  }
  return out.str();
}

namespace {

using Witness = std::vector<std::pair<std::string, Elem>>;

// Runs pred over every tuple drawn from domain and records the first failure.
template <std::size_t K, class Pred>
CheckResult sweep(std::string id, std::string detail, const std::vector<Elem>& domain,
                  std::array<const char*, K> names, Pred pred) {
  CheckResult result{std::move(id), true, {}, std::move(detail)};
  std::array<Elem, K> tuple{};
  std::array<std::size_t, K> pos{};
  if (domain.empty()) {
    return result;
  }
  while (true) {
    for (std::size_t i = 0; i < K; ++i) {
      tuple[i] = domain[pos[i]];
    }
    if (!pred(tuple)) {
      result.pass = false;
      for (std::size_t i = 0; i < K; ++i) {
        result.witness.emplace_back(names[i], tuple[i]);
      }
      return result;
    }
    std::size_t i = K;
    while (i > 0) {
      --i;
      if (++pos[i] < domain.size()) {
        break;
      }
      pos[i] = 0;
      if (i == 0) {
        return result;
      }
    }
    if constexpr (K == 0) {
      return result;
    }
  }
}

std::vector<Elem> all_elements(const FiniteOml& L) {
  std::vector<Elem> v(L.size());
  for (Elem a = 0; a < L.size(); ++a) {
    v[a] = a;
  }
  return v;
}

}  // namespace

Report verify_s_axioms(const ModalOml& m) {
  auto const& L = m.base();
  auto const all = all_elements(L);
  auto bx = [&](Elem a) { return m.box(a); };
  Report r;
  r.items.push_back(sweep<1>("S1", "[]x <= x", all, {"x"},
                             [&](auto t) { return L.leq(bx(t[0]), t[0]); }));
  {
    CheckResult s2{"S2", bx(L.top()) == L.top(), {}, "[]1 = 1"};
    r.items.push_back(s2);
  }
  r.items.push_back(sweep<1>("S3", "[][]x = []x", all, {"x"},
                             [&](auto t) { return bx(bx(t[0])) == bx(t[0]); }));
  r.items.push_back(sweep<2>("S4", "[](x & y) = []x & []y", all, {"x", "y"}, [&](auto t) {
    return bx(L.meet(t[0], t[1])) == L.meet(bx(t[0]), bx(t[1]));
  }));
  r.items.push_back(
      sweep<2>("S5", "y = (y & []x) | (y & ~[]x)", all, {"x", "y"}, [&](auto t) {
        Elem const b = bx(t[0]);
        return t[1] == L.join(L.meet(t[1], b), L.meet(t[1], L.neg(b)));
      }));
  r.items.push_back(
      sweep<2>("S6", "[](x | []y) = []x | []y", all, {"x", "y"}, [&](auto t) {
        return bx(L.join(t[0], bx(t[1]))) == L.join(bx(t[0]), bx(t[1]));
      }));
  r.items.push_back(
      sweep<2>("S7", "[](~x | (y & x)) <= ~[]x | []y", all, {"x", "y"}, [&](auto t) {
        Elem const lhs = bx(L.join(L.neg(t[0]), L.meet(t[1], t[0])));
        return L.leq(lhs, L.join(L.neg(bx(t[0])), bx(t[1])));
      }));
  return r;
}

Report verify_derived_laws(const ModalOml& m) {
  auto const& L = m.base();
  auto const all = all_elements(L);
  auto const& center = m.center();
  auto bx = [&](Elem a) { return m.box(a); };
  auto n = [&](Elem a) { return L.neg(a); };
  auto j = [&](Elem a, Elem b) { return L.join(a, b); };
  Elem const top = L.top();
  Report r;
  r.items.push_back(sweep<1>("L1", "~[]a | a = 1", all, {"a"},
                             [&](auto t) { return j(n(bx(t[0])), t[0]) == top; }));
  r.items.push_back(
      sweep<2>("L2", "~(a | ~b) | (a | ~[]b) = 1", all, {"a", "b"}, [&](auto t) {
        return j(n(j(t[0], n(t[1]))), j(t[0], n(bx(t[1])))) == top;
      }));
  {
    auto item = sweep<2>("L3", "~(~z1 | z2) | (~(z1 | a) | (z2 | a)) = 1, z1 z2 central",
                         center, {"z1", "z2"}, [&](auto z) {
                           for (Elem a : all) {
                             Elem const v =
                                 j(n(j(n(z[0]), z[1])), j(n(j(z[0], a)), j(z[1], a)));
                             if (v != top) {
                               return false;
                             }
                           }
                           return true;
                         });
    if (!item.pass) {
      // Pin down the a that failed for the reported (z1, z2).
      Elem const z1 = item.witness[0].second;
      Elem const z2 = item.witness[1].second;
      for (Elem a : all) {
        if (j(n(j(n(z1), z2)), j(n(j(z1, a)), j(z2, a))) != top) {
          item.witness.emplace_back("a", a);
          break;
        }
      }
    }
    r.items.push_back(item);
  }
  r.items.push_back(sweep<2>("L4", "[]a | []b <= [](a | b)", all, {"a", "b"}, [&](auto t) {
    return L.leq(j(bx(t[0]), bx(t[1])), bx(j(t[0], t[1])));
  }));
  r.items.push_back(
      sweep<2>("L5", "(~[]a & ~[]b) | [](a | b) = 1", all, {"a", "b"}, [&](auto t) {
        return j(L.meet(n(bx(t[0])), n(bx(t[1]))), bx(j(t[0], t[1]))) == top;
      }));
  r.items.push_back(sweep<2>("L6", "x <= y implies []x <= []y", all, {"x", "y"},
                             [&](auto t) {
                               return !L.leq(t[0], t[1]) || L.leq(bx(t[0]), bx(t[1]));
                             }));
  return r;
}

Elem eval_term(const ModalOml& m, const Term& t, const Valuation& v) {
  auto const& L = m.base();
  switch (t.op()) {
    case Op::Var: {
      Elem const e = v.get(t.index());
      if (e == kUnbound || e >= L.size()) {
        throw Error(ErrorCode::UnboundVariable,
                    "variable x" + std::to_string(t.index()) + " is not bound");
      }
      return e;
    }
    case Op::Meta:
      throw Error(ErrorCode::UnboundVariable, "schema metavariable in term");
    case Op::Zero:
      return L.bot();
    case Op::One:
      return L.top();
    case Op::Neg:
      return L.neg(eval_term(m, t.arg(), v));
    case Op::Box:
      return m.box(eval_term(m, t.arg(), v));
    case Op::And:
      return L.meet(eval_term(m, t.lhs(), v), eval_term(m, t.rhs(), v));
    case Op::Or:
      return L.join(eval_term(m, t.lhs(), v), eval_term(m, t.rhs(), v));
  }
  return L.bot();
}

namespace {

template <class Holds>
EquationResult equation_sweep(const ModalOml& m, const Term& t, const Term& s,
                              unsigned var_cap, Holds holds) {
  std::vector<Term> const both{t, s};
  auto const vars = variables(both);
  if (vars.size() > var_cap) {
    throw Error(ErrorCode::VarCapExceeded,
                std::to_string(vars.size()) + " variables exceed the cap of " +
                    std::to_string(var_cap));
  }
  EquationResult result;
  for_each_valuation(m.size(), vars, [&](const Valuation& v) {
    if (!holds(v)) {
      result.holds = false;
      result.countervaluation = v;
      return false;
    }
    return true;
  });
  return result;
}

}  // namespace

EquationResult check_equation(const ModalOml& m, const Term& t, const Term& s,
                              unsigned var_cap) {
  Term const r = requiv(t, s);
  return equation_sweep(m, t, s, var_cap, [&](const Valuation& v) {
    return eval_term(m, r, v) == m.base().top();
  });
}

EquationResult check_equation_direct(const ModalOml& m, const Term& t, const Term& s,
                                     unsigned var_cap) {
  return equation_sweep(m, t, s, var_cap, [&](const Valuation& v) {
    return eval_term(m, t, v) == eval_term(m, s, v);
  });
}

bool is_directly_indecomposable(const ModalOml& m) { return m.center().size() == 2; }

Elem discriminator_eval(const ModalOml& m, Elem x, Elem y, Elem z) {
  auto const& L = m.base();
  Elem const r = L.join(L.meet(x, y), L.meet(L.neg(x), L.neg(y)));
  Elem const b = m.box(r);
  Elem const result = L.join(L.meet(x, L.neg(b)), L.meet(z, b));
  if (is_directly_indecomposable(m) && result != (x != y ? x : z)) {
    throw Error(ErrorCode::BadTables, "discriminator contract fails at (" + L.name(x) +
                                          ", " + L.name(y) + ", " + L.name(z) + ")");
  }
  return result;
}

Congruence modal_theta(const ModalOml& m, Elem z) {
  return theta_congruence(m.base(), z, m.box_table());
}

ModalOml modal_quotient(const ModalOml& m, const Congruence& c) {
  if (auto bad = compatibility_violation(m.base(), c, m.box_table())) {
    throw Error(ErrorCode::NotCompatible, "partition is not compatible with box at (" +
                                              m.base().name(bad->first) + ", " +
                                              m.base().name(bad->second) + ")");
  }
  auto q = quotient(m.base(), c);
  std::vector<Elem> box(c.num_classes, kUnbound);
  for (Elem a = 0; a < m.size(); ++a) {
    auto const cls = c.class_of[a];
    if (box[cls] == kUnbound) {
      box[cls] = static_cast<Elem>(c.class_of[m.box(a)]);
    }
  }
  return ModalOml::with_box(std::move(q), std::move(box));
}

ModalOml modal_product(const ModalOml& lhs, const ModalOml& rhs) {
  auto p = direct_product(lhs.base(), rhs.base());
  std::size_t const n2 = rhs.size();
  std::vector<Elem> box(p.size());
  for (Elem i = 0; i < lhs.size(); ++i) {
    for (Elem j = 0; j < n2; ++j) {
      box[i * n2 + j] = static_cast<Elem>(lhs.box(i) * n2 + rhs.box(j));
    }
  }
  return ModalOml::with_box(std::move(p), std::move(box));
}

std::optional<LatticeIso> modal_isomorphism(const ModalOml& lhs, const ModalOml& rhs) {
  return find_isomorphism(lhs.base(), rhs.base(), lhs.box_table(), rhs.box_table());
}

std::vector<NamedModel> default_library() {
  return library_from_names("b2,b4,b8,mo2,mo3,mo2xb2");
}

std::vector<NamedModel> library_from_names(std::string_view names) {
  std::vector<NamedModel> lib;
  while (!names.empty()) {
    auto const cut = names.find(',');
    auto const name = names.substr(0, cut);
    if (!name.empty()) {
      lib.push_back({std::string(name), ModalOml::saturate(builtin_by_name(name))});
    }
    if (cut == std::string_view::npos) {
      break;
    }
    names.remove_prefix(cut + 1);
  }
  return lib;
}

}  // namespace omql
