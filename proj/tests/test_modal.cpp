#include <algorithm>
#include <random>

#include <catch_amalgamated.hpp>

#include "omql/error.hpp"
#include "omql/modal.hpp"
#include "omql/suite.hpp"
#include "omql/term.hpp"

using namespace omql;

namespace {

// Box from scratch: the join of everything below a that commutes with every
// element.
Elem oracle_box(const FiniteOml& L, Elem a) {
  Elem acc = L.bot();
  for (Elem z = 0; z < L.size(); ++z) {
    if (!L.leq(z, a)) {
      continue;
    }
    bool central = true;
    for (Elem b = 0; b < L.size() && central; ++b) {
      central = b == L.join(L.meet(b, z), L.meet(b, L.neg(z)));
    }
    if (central) {
      acc = L.join(acc, z);
    }
  }
  return acc;
}

Elem oracle_eval(const FiniteOml& L, const Term& t, const Valuation& v) {
  switch (t.op()) {
    case Op::Var:
      return v.get(t.index());
    case Op::Zero:
      return L.bot();
    case Op::One:
      return L.top();
    case Op::Neg:
      return L.neg(oracle_eval(L, t.arg(), v));
    case Op::Box:
      return oracle_box(L, oracle_eval(L, t.arg(), v));
    case Op::And:
      return L.meet(oracle_eval(L, t.lhs(), v), oracle_eval(L, t.rhs(), v));
    case Op::Or:
      return L.join(oracle_eval(L, t.lhs(), v), oracle_eval(L, t.rhs(), v));
    default:
      FAIL("unexpected node");
      return 0;
  }
}

}  // namespace

TEST_CASE("saturated box matches the join of central elements below") {
  for (auto const& nm : default_library()) {
    auto const& m = nm.algebra;
    CHECK(m.is_saturated());
    for (Elem a = 0; a < m.size(); ++a) {
      CHECK(m.box(a) == oracle_box(m.base(), a));
      CHECK(m.diamond(a) == m.base().neg(m.box(m.base().neg(a))));
    }
  }
}

TEST_CASE("S-axioms and derived box laws hold on the library") {
  for (auto const& nm : default_library()) {
    INFO(nm.name);
    CHECK(verify_s_axioms(nm.algebra).all_pass());
    CHECK(verify_derived_laws(nm.algebra).all_pass());
  }
}

TEST_CASE("identity box on MO2 is caught") {
  auto L = builtin_by_name("mo2");
  std::vector<Elem> id(L.size());
  for (Elem a = 0; a < L.size(); ++a) {
    id[a] = a;
  }
  auto m = ModalOml::with_box(L, id);
  CHECK_FALSE(m.is_saturated());
  auto r = verify_s_axioms(m);
  CHECK_FALSE(r.all_pass());
  auto fail = std::find_if(r.items.begin(), r.items.end(), [](auto& i) { return !i.pass; });
  REQUIRE(fail != r.items.end());
  CHECK_FALSE(fail->witness.empty());
  CHECK(r.machine().find(fail->id + " FAIL") != std::string::npos);
}

TEST_CASE("box table entries are range-checked") {
  auto L = builtin_by_name("b2");
  CHECK_THROWS_AS(ModalOml::with_box(L, {0, 9}), Error);
}

TEST_CASE("term evaluation agrees with an independent evaluator") {
  std::mt19937_64 rng(21);
  auto library = default_library();
  for (int trial = 0; trial < 400; ++trial) {
    auto const& m = library[trial % library.size()].algebra;
    Term t = random_term(rng, 3, 12);
    Valuation v;
    std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(m.size() - 1));
    for (unsigned x = 1; x <= 3; ++x) {
      v.set(x, pick(rng));
    }
    REQUIRE(eval_term(m, t, v) == oracle_eval(m.base(), t, v));
  }
}

TEST_CASE("unbound variables are reported") {
  auto m = ModalOml::saturate(builtin_by_name("b4"));
  Valuation v;
  v.set(1, 0);
  CHECK_THROWS_AS(eval_term(m, parse_term("x1 & x2"), v), Error);
}

TEST_CASE("R-form and direct equation checks agree") {
  std::mt19937_64 rng(22);
  auto library = library_from_names("b4,mo2,mo3");
  for (int trial = 0; trial < 200; ++trial) {
    auto const& m = library[trial % library.size()].algebra;
    Term t = random_term(rng, 2, 6);
    Term s = random_term(rng, 2, 6);
    auto lhs = check_equation(m, t, s);
    auto rhs = check_equation_direct(m, t, s);
    REQUIRE(lhs.holds == rhs.holds);
    if (!lhs.holds) {
      CHECK(lhs.countervaluation->values == rhs.countervaluation->values);
    }
  }
}

TEST_CASE("equation sweep order and var cap") {
  auto m = ModalOml::saturate(builtin_by_name("mo2"));
  auto r = check_equation(m, parse_term("[](x1 | x2)"), parse_term("[]x1 | []x2"));
  REQUIRE_FALSE(r.holds);
  CHECK(m.base().name(r.countervaluation->get(1)) == "a");
  CHECK(m.base().name(r.countervaluation->get(2)) == "~a");
  CHECK(check_equation(m, parse_term("[](x1 & x2)"), parse_term("[]x1 & []x2")).holds);
  CHECK_THROWS_AS(check_equation(m, parse_term("x1 & x2 & x3"), parse_term("x1"), 2), Error);
}

TEST_CASE("discriminator on indecomposable algebras") {
  for (auto name : {"mo2", "mo3", "b2"}) {
    auto m = library_from_names(name).front().algebra;
    REQUIRE(is_directly_indecomposable(m));
    for (Elem x = 0; x < m.size(); ++x) {
      for (Elem y = 0; y < m.size(); ++y) {
        for (Elem z = 0; z < m.size(); ++z) {
          REQUIRE(discriminator_eval(m, x, y, z) == (x == y ? z : x));
        }
      }
    }
  }
  CHECK_FALSE(is_directly_indecomposable(library_from_names("b4").front().algebra));
}

TEST_CASE("modal quotient and product keep the box") {
  auto m = library_from_names("mo2xb2").front().algebra;
  for (Elem z : m.center()) {
    if (z == m.base().bot() || z == m.base().top()) {
      continue;
    }
    auto lhs = modal_quotient(m, modal_theta(m, z));
    auto rhs = modal_quotient(m, modal_theta(m, m.base().neg(z)));
    CHECK(lhs.is_saturated());
    CHECK(rhs.is_saturated());
    auto prod = modal_product(lhs, rhs);
    auto iso = modal_isomorphism(m, prod);
    REQUIRE(iso);
    for (Elem a = 0; a < m.size(); ++a) {
      CHECK(iso->map[m.box(a)] == prod.box(iso->map[a]));
    }
  }
}

TEST_CASE("library names") {
  auto lib = default_library();
  REQUIRE(lib.size() == 6);
  CHECK(lib[0].name == "b2");
  CHECK(lib[5].name == "mo2xb2");
  CHECK(lib[5].algebra.size() == 12);
  CHECK_THROWS_AS(library_from_names("b2,qq"), Error);
}
