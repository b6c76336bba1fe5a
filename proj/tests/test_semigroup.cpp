#include <random>
#include <sstream>

#include <catch_amalgamated.hpp>

#include "omql/error.hpp"
#include "omql/foulis.hpp"
#include "omql/semigroup.hpp"

using namespace omql;

namespace {

// {0, 1, n} with n·n = 0: a commutative *-monoid with trivial star.
RawStarSemigroup nilpotent() {
  RawStarSemigroup raw;
  raw.size = 3;
  raw.mul = {0, 0, 0,
             0, 1, 2,
             0, 2, 0};
  raw.star = {0, 1, 2};
  raw.zero = 0;
  return raw;
}

bool has(const SemigroupValidation& v, ErrorCode c) {
  for (auto const& d : v.diagnostics) {
    if (d.code == c) {
      return true;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("star semigroup validation") {
  CHECK(validate_star_semigroup(nilpotent()).ok());

  SECTION("associativity") {
    auto raw = nilpotent();
    raw.mul[1 * 3 + 2] = 1;  // 1·n = 1, so (1·n)·n = 1 but 1·(n·n) = 0
    auto v = validate_star_semigroup(raw);
    CHECK_FALSE(v.ok());
    CHECK(has(v, ErrorCode::NotAssociative));
  }
  SECTION("zero law") {
    auto raw = nilpotent();
    raw.mul[0 * 3 + 1] = 1;
    CHECK(has(validate_star_semigroup(raw), ErrorCode::ZeroLaw));
  }
  SECTION("star law") {
    auto raw = nilpotent();
    raw.star = {0, 2, 1};
    CHECK(has(validate_star_semigroup(raw), ErrorCode::StarLaw));
  }
  SECTION("shape") {
    auto raw = nilpotent();
    raw.mul.pop_back();
    CHECK(has(validate_star_semigroup(raw), ErrorCode::BadTables));
  }
}

TEST_CASE("a nilpotent element breaks the Baer property") {
  auto g = make_star_semigroup(nilpotent());
  CHECK(projections(g) == std::vector<SgElem>{0, 1});
  auto ann = right_annihilator(g, 2);
  CHECK(ann.count() == 2);
  try {
    closed_projections(g);
    FAIL("expected NotBaer");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotBaer);
    CHECK(std::string(e.what()).find("x = 2") != std::string::npos);
  }
}

TEST_CASE("Foulis semigroup sizes") {
  CHECK(foulis_semigroup(builtin_by_name("b2")).maps.size() == 2);
  CHECK(foulis_semigroup(builtin_by_name("b4")).maps.size() == 16);
  CHECK(foulis_semigroup(builtin_by_name("mo2")).maps.size() == 234);
  CHECK(foulis_semigroup(builtin_by_name("b8")).maps.size() == 512);
}

TEST_CASE("fast enumeration equals the definitional oracle") {
  for (auto name : {"b2", "b4", "mo2"}) {
    INFO(name);
    auto L = builtin_by_name(name);
    CHECK(residuated_endomaps(L) == residuated_endomaps_oracle(L));
  }
  CHECK_THROWS_AS(residuated_endomaps_oracle(builtin_by_name("b8")), Error);
  CHECK_THROWS_AS(residuated_endomaps(builtin_by_name("mo2xb2")), Error);
}

TEST_CASE("residuals satisfy the Galois inequalities") {
  auto L = builtin_by_name("mo2");
  for (auto const& phi : residuated_endomaps(L)) {
    for (Elem x = 0; x < L.size(); ++x) {
      REQUIRE(L.leq(phi.graph[phi.residual[x]], x));
      REQUIRE(L.leq(x, phi.residual[phi.graph[x]]));
    }
  }
  // A monotone map that does not preserve joins has no residual.
  auto b4 = builtin_by_name("b4");
  std::vector<Elem> collapse{0, 0, 0, 3};
  CHECK_FALSE(residual_of(b4, collapse));
}

TEST_CASE("products in G(L) are composition, star is the adjoint") {
  auto L = builtin_by_name("mo2");
  auto fg = foulis_semigroup(L);
  auto const& g = fg.semigroup;
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<SgElem> pick(0, static_cast<SgElem>(g.size() - 1));
  for (int i = 0; i < 2000; ++i) {
    SgElem x = pick(rng), y = pick(rng), z = pick(rng);
    auto const& fx = fg.maps[x].graph;
    auto const& fy = fg.maps[y].graph;
    auto const& fxy = fg.maps[g.mul(x, y)].graph;
    for (Elem a = 0; a < L.size(); ++a) {
      REQUIRE(fxy[a] == fx[fy[a]]);
      // x*(a) = ¬x♮(¬a)
      REQUIRE(fg.maps[g.star(x)].graph[a] == L.neg(fg.maps[x].residual[L.neg(a)]));
    }
    REQUIRE(g.mul(g.mul(x, y), z) == g.mul(x, g.mul(y, z)));
    REQUIRE(g.star(g.mul(x, y)) == g.mul(g.star(y), g.star(x)));
  }
  CHECK(fg.maps[fg.identity].graph == std::vector<Elem>{0, 1, 2, 3, 4, 5});
}

TEST_CASE("Sasaki maps are closed projections below their index") {
  auto L = builtin_by_name("mo3");
  auto fg = foulis_semigroup(L);
  auto const& g = fg.semigroup;
  auto pc = closed_projections(g);
  for (Elem a = 0; a < L.size(); ++a) {
    auto mu = sasaki_hom(L, a);
    auto id = fg.find(mu.graph);
    REQUIRE(id);
    CHECK(g.star(*id) == *id);
    CHECK(g.mul(*id, *id) == *id);
    CHECK(pc.lattice_id(*id).has_value());
    CHECK(mu.graph[L.top()] == a);
  }
}

TEST_CASE("closed projections of G(B4) and the meet and join formulas") {
  auto fg = foulis_semigroup(builtin_by_name("b4"));
  auto const& g = fg.semigroup;
  auto pc = closed_projections(g);
  REQUIRE(pc.carrier.size() == 4);
  auto const& P = pc.lattice;
  for (Elem i = 0; i < P.size(); ++i) {
    for (Elem j = 0; j < P.size(); ++j) {
      SgElem e = pc.carrier[i], f = pc.carrier[j];
      SgElem meet = g.mul(e, pc.prime[g.mul(pc.prime[f], e)]);
      CHECK(meet == pc.carrier[P.meet(i, j)]);
      // join via (e′ ∧ f′)′ in the lattice
      CHECK(pc.carrier[P.join(i, j)] ==
            pc.prime[pc.carrier[P.meet(*pc.lattice_id(pc.prime[e]), *pc.lattice_id(pc.prime[f]))]]);
      // order by e·f = e equals inclusion of right ideals
      bool const below = g.mul(e, f) == e;
      CHECK(below == pc.ideals[i].is_subset_of(pc.ideals[j]));
      CHECK(below == P.leq(i, j));
    }
  }
  // top is 0′ and bottom is 0
  CHECK(pc.carrier[P.top()] == pc.prime[g.zero()]);
  CHECK(pc.carrier[P.bot()] == g.zero());
}

TEST_CASE("semigroup files round-trip") {
  auto fg = foulis_semigroup(builtin_by_name("b4"));
  std::stringstream ss;
  write_semigroup(ss, fg.semigroup);
  auto raw = parse_semigroup(ss);
  auto v = validate_star_semigroup(raw);
  REQUIRE(v.ok());
  CHECK(v.semigroup->to_raw().mul == fg.semigroup.to_raw().mul);
  std::stringstream bad("bsg 2\nmul 0 0 5\n");
  CHECK_THROWS_AS(parse_semigroup(bad), Error);
}

TEST_CASE("representation a -> mu_a") {
  for (auto name : {"b2", "b4", "mo2", "b8"}) {
    INFO(name);
    auto m = ModalOml::saturate(builtin_by_name(name));
    auto rep = verify_representation(m);
    REQUIRE(rep.modal_pc);
    auto iso = find_isomorphism(m.base(), rep.pc.lattice, m.box_table(), rep.modal_pc->box_table());
    CHECK(iso);
    CHECK(rep.pc.lattice.name(rep.iso.map[m.base().top()]) == "mu_1");
  }
}
