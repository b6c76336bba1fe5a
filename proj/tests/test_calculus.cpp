#include <filesystem>
#include <random>
#include <sstream>

#include <catch_amalgamated.hpp>

#include "omql/axioms.hpp"
#include "omql/error.hpp"
#include "omql/proof.hpp"
#include "omql/semantics.hpp"
#include "omql/suite.hpp"
#include "omql/term.hpp"

using namespace omql;

namespace {

ProofScript script(const std::string& text) {
  std::stringstream ss(text);
  return parse_proof(ss);
}

std::vector<NamedModel> small_library() { return library_from_names("b2,b4,mo2,mo3"); }

}  // namespace

TEST_CASE("parser precedence and sugar") {
  CHECK(parse_term("x1 | x2 & x3") == disj(var(1), conj(var(2), var(3))));
  CHECK(parse_term("x1 & x2 & x3") == conj(conj(var(1), var(2)), var(3)));
  CHECK(parse_term("~[]x1") == neg(box(var(1))));
  CHECK(parse_term("<>x1") == neg(box(neg(var(1)))));
  CHECK(parse_term("x1 R x2") ==
        disj(conj(var(1), var(2)), conj(neg(var(1)), neg(var(2)))));
  CHECK(parse_term("x1 R x2 | x3") == requiv(var(1), disj(var(2), var(3))));
  CHECK(parse_term(" ( 0 | 1 ) ") == disj(zero(), one()));
}

TEST_CASE("parse errors carry a position") {
  for (auto bad : {"x1 &", "x0", "(x1", "x1 x2", "y1", ""}) {
    INFO(bad);
    try {
      parse_term(bad);
      FAIL("accepted");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::SyntaxError);
      CHECK(std::string(e.what()).find("position") != std::string::npos);
    }
  }
}

TEST_CASE("printing folds R and diamond and round-trips") {
  CHECK(print_term(parse_term("x1 R x2")) == "x1 R x2");
  CHECK(print_term(parse_term("<>x1")) == "<>x1");
  CHECK(print_term(parse_term("(x1 | x2) & x3")) == "(x1 | x2) & x3");
  std::mt19937_64 rng(31);
  for (int i = 0; i < 2000; ++i) {
    Term t = random_term(rng, 4, 30);
    REQUIRE(parse_term(print_term(t)) == t);
  }
}

TEST_CASE("term enumeration counts match the recurrence") {
  // T(1) = 4 atoms; T(n) = 2 T(n-1) + 2 Σ_{i+j=n-1} T(i) T(j)
  std::vector<std::size_t> want(8, 0);
  want[1] = 4;
  for (std::size_t n = 2; n <= 7; ++n) {
    want[n] = 2 * want[n - 1];
    for (std::size_t i = 1; i + 1 < n; ++i) {
      want[n] += 2 * want[i] * want[n - 1 - i];
    }
  }
  auto e = enumerate_terms(7, 2);
  std::vector<std::size_t> got(8, 0);
  for (auto id : e.roots) {
    ++got[e.dag.term(id).comp()];
  }
  CHECK(got == want);
  CHECK(e.roots.size() == 58332);
}

TEST_CASE("dag interning shares subterms") {
  TermDag dag;
  auto a = dag.intern(parse_term("(x1 & x2) | ~(x1 & x2)"));
  auto b = dag.intern(parse_term("x1 & x2"));
  CHECK(dag.size() == 5);
  CHECK(dag.term(a) == parse_term("(x1 & x2) | ~(x1 & x2)"));
  CHECK(dag.term(b) == parse_term("x1 & x2"));
}

TEST_CASE("schemas") {
  auto const& s = axiom_schemas();
  REQUIRE(s.size() == 26);
  CHECK(s.front().id == "A0a");
  CHECK(s.back().id == "A24");
  REQUIRE(find_schema("A13"));
  CHECK(find_schema("A13")->arity == 2);
  CHECK(find_schema("A99") == nullptr);
}

TEST_CASE("matching recovers substitutions of random instances") {
  std::mt19937_64 rng(32);
  for (auto const& schema : axiom_schemas()) {
    for (int i = 0; i < 25; ++i) {
      std::vector<Term> subst;
      for (unsigned k = 0; k < schema.arity; ++k) {
        subst.push_back(random_term(rng, 3, 5));
      }
      Term const t = instantiate(schema, subst);
      auto m = match_schema(schema, t);
      REQUIRE(m);
      REQUIRE(instantiate(schema, *m) == t);
      bool found = false;
      for (auto const& hit : match_axiom(t)) {
        found = found || hit.id == schema.id;
      }
      CHECK(found);
    }
  }
  CHECK_FALSE(match_schema(*find_schema("A1"), parse_term("x1 R x2")));
  CHECK(match_schema(*find_schema("A1"), parse_term("x1 R x1")));
}

TEST_CASE("schema instances are tautologies on the library, printed A23 is not") {
  auto lib = default_library();
  for (auto const& schema : axiom_schemas()) {
    INFO(schema.id);
    CHECK_FALSE(is_tautology(fresh_instance(schema), lib, 3).refuted);
  }
  auto printed = is_tautology(fresh_instance(Schema{"A23", printed_a23_schema(), 3}), lib, 3);
  REQUIRE(printed.refuted);
  CHECK(lib[printed.model].name == "mo2");
}

TEST_CASE("a hand-written proof is accepted") {
  auto s = script(R"(
theory:
  x1
goal: []x1
1. x1 ; premise
2. []x1 ; N 1
)");
  auto v = check_proof(s);
  CHECK(v.accepted);
  CHECK(*v.conclusion == box(var(1)));
}

TEST_CASE("proof checker rejects bad steps") {
  SECTION("premise outside the theory") {
    auto v = check_proof(script("1. x1 ; premise\n"));
    CHECK_FALSE(v.accepted);
    CHECK_FALSE(v.lines[0].ok);
  }
  SECTION("DS with the premises swapped") {
    auto v = check_proof(script(R"(
theory:
  x1
  ~x1 | x2
1. x1 ; premise
2. ~x1 | x2 ; premise
3. x2 ; DS 2 1
)"));
    CHECK_FALSE(v.accepted);
    CHECK_FALSE(v.lines[2].ok);
  }
  SECTION("necessitation to the wrong term") {
    auto v = check_proof(script("theory:\n  x1\n1. x1 ; premise\n2. ~x1 ; N 1\n"));
    CHECK_FALSE(v.accepted);
  }
  SECTION("axiom line that is not the stated instance") {
    auto v = check_proof(script("1. x1 R x2 ; axiom A1 a=x1\n"));
    CHECK_FALSE(v.accepted);
  }
  SECTION("arity mismatch") {
    auto v = check_proof(script("1. x1 R x1 ; axiom A1 a=x1 b=x2\n"));
    CHECK_FALSE(v.accepted);
  }
  SECTION("goal not reached") {
    auto v = check_proof(script("goal: x2 R x2\n1. x1 R x1 ; axiom A1 a=x1\n"));
    CHECK_FALSE(v.accepted);
    CHECK_FALSE(v.goal_met);
  }
}

TEST_CASE("fill infers axiom substitutions") {
  auto s = script("1. (x1 & x2) R (x2 & x1) ; axiom A5\n");
  CHECK_FALSE(check_proof(s).accepted);
  CHECK(check_proof(s, true).accepted);
}

TEST_CASE("structural errors in scripts") {
  CHECK_THROWS_AS(script("2. x1 R x1 ; axiom A1 a=x1\n1. x1 R x1 ; axiom A1 a=x1\n"), Error);
  CHECK_THROWS_AS(script("1. x1 ; N 1\n"), Error);
  CHECK_THROWS_AS(script("1. x1 ; frobnicate\n"), Error);
  CHECK_THROWS_AS(script("1. x1 &  ; premise\n"), Error);
}

TEST_CASE("corpus scripts are accepted and sound on the library") {
  namespace fs = std::filesystem;
  auto lib = default_library();
  std::size_t n = 0;
  for (auto const& entry : fs::directory_iterator(OMQL_CORPUS_DIR)) {
    INFO(entry.path().string());
    auto s = read_proof_file(entry.path().string());
    auto v = check_proof(s);
    REQUIRE(v.accepted);
    CHECK_FALSE(semantic_consequence(s.theory, *v.conclusion, lib, 3).refuted);
    ++n;
  }
  CHECK(n == 9);
}

TEST_CASE("every corpus line is a consequence of the theory") {
  namespace fs = std::filesystem;
  auto lib = small_library();
  for (auto const& entry : fs::directory_iterator(OMQL_CORPUS_DIR)) {
    auto s = read_proof_file(entry.path().string());
    for (auto const& line : s.lines) {
      INFO(entry.path().filename().string() << " line " << line.index);
      REQUIRE_FALSE(semantic_consequence(s.theory, line.term, lib, 3).refuted);
    }
  }
}

TEST_CASE("semantic consequence") {
  auto lib = default_library();
  std::vector<Term> t1{var(1)};
  CHECK_FALSE(semantic_consequence(t1, box(var(1)), lib).refuted);
  CHECK(semantic_consequence({}, var(1), lib).refuted);
  auto r = is_tautology(parse_term("[](x1 | x2) R ([]x1 | []x2)"), lib);
  REQUIRE(r.refuted);
  CHECK(lib[r.model].name == "mo2");
  CHECK(format_valuation(lib[r.model].algebra, *r.valuation) == "x1=a x2=~a");
  CHECK_THROWS_AS(is_tautology(parse_term("x1 | x2 | x3 | x4"), lib, 3), Error);
}

TEST_CASE("parallel sweeps report the same witness") {
  std::mt19937_64 rng(33);
  auto lib = default_library();
  for (int i = 0; i < 30; ++i) {
    Term t = random_term(rng, 2, 6);
    auto a = is_tautology(t, lib, 3, 1);
    auto b = is_tautology(t, lib, 3, 3);
    REQUIRE(a.refuted == b.refuted);
    if (a.refuted) {
      CHECK(a.model == b.model);
      CHECK(a.valuation->values == b.valuation->values);
    }
  }
}

TEST_CASE("deduction transform agrees with the extended theory") {
  std::mt19937_64 rng(34);
  auto lib = small_library();
  for (int i = 0; i < 60; ++i) {
    Term gamma = random_term(rng, 2, 4);
    Term t = i % 2 ? random_term(rng, 2, 4) : disj(box(gamma), random_term(rng, 2, 2));
    std::vector<Term> ext{gamma};
    CHECK(semantic_consequence(ext, t, lib).refuted ==
          semantic_consequence({}, deduction_transform(gamma, t), lib).refuted);
  }
}

TEST_CASE("compactness probe") {
  auto lib = small_library();
  std::vector<Term> theory{var(2), var(1), conj(var(1), var(2))};
  auto prefix = compactness_probe(theory, var(1), lib);
  CHECK(prefix.size() == 2);
  CHECK_THROWS_AS(compactness_probe(theory, var(3), lib), Error);
}
