#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include <catch_amalgamated.hpp>

#include "omql/error.hpp"
#include "omql/lattice.hpp"
#include "omql/lattice_io.hpp"

using namespace omql;

namespace {

std::string data(const char* name) { return std::string(OMQL_TEST_DATA) + "/" + name; }

// Relabels element i as perm[i].
RawLattice permuted(const RawLattice& raw, const std::vector<Elem>& perm) {
  RawLattice out = raw;
  for (Elem i = 0; i < raw.size; ++i) {
    out.names[perm[i]] = raw.names[i];
    out.neg[perm[i]] = perm[raw.neg[i]];
  }
  for (auto& [a, b] : out.leq) {
    a = perm[a];
    b = perm[b];
  }
  out.bot = perm[raw.bot];
  out.top = perm[raw.top];
  return out;
}

FiniteOml random_lattice(std::mt19937_64& rng) {
  static const char* const parts[] = {"b2", "b4", "mo2", "mo3", "b8"};
  std::uniform_int_distribution<int> pick(0, 4);
  std::uniform_int_distribution<int> factors(1, 2);
  std::string spec = parts[pick(rng)];
  if (factors(rng) == 2) {
    std::string other = parts[pick(rng)];
    if (other != "mo3" || spec == "b2") {
      spec += "x" + other;
    }
  }
  return builtin_by_name(spec);
}

Elem naive_meet(const FiniteOml& L, Elem a, Elem b) {
  std::optional<Elem> best;
  for (Elem c = 0; c < L.size(); ++c) {
    if (L.leq(c, a) && L.leq(c, b) && (!best || L.leq(*best, c))) {
      best = c;
    }
  }
  return *best;
}

bool commutes(const FiniteOml& L, Elem a, Elem b) {
  return a == L.join(L.meet(a, b), L.meet(a, L.neg(b)));
}

}  // namespace

TEST_CASE("mo2 file validates with trivial center") {
  auto lf = read_lattice_file(data("mo2.oml"));
  auto v = validate_lattice(lf.raw);
  REQUIRE(v.ok());
  auto z = center(*v.lattice, true);
  REQUIRE(z.size() == 2);
  CHECK(v.lattice->name(z[0]) == "0");
  CHECK(v.lattice->name(z[1]) == "1");
}

TEST_CASE("benzene ring is rejected as non-orthomodular") {
  auto lf = read_lattice_file(data("o6.oml"));
  auto v = validate_lattice(lf.raw);
  REQUIRE_FALSE(v.ok());
  auto const& d = v.diagnostics.front();
  CHECK(d.code == ErrorCode::NotOrthomodular);
  REQUIRE(d.witness.size() == 2);
  CHECK(lf.raw.names[d.witness[0]] == "a");
  CHECK(lf.raw.names[d.witness[1]] == "b");
  // a <= b, yet b ∧ (a ∨ ¬b) = b
  auto const& raw = lf.raw;
  CHECK(std::find(raw.leq.begin(), raw.leq.end(), std::pair<Elem, Elem>{1, 2}) != raw.leq.end());
}

TEST_CASE("validator diagnostics") {
  auto raw = builtin_by_name("mo2").to_raw();

  SECTION("missing greatest lower bound") {
    // p and q are both maximal lower bounds of r and s.
    RawLattice bad;
    bad.size = 6;
    bad.names = {"0", "p", "q", "r", "s", "1"};
    bad.leq = {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 5}, {4, 5}};
    bad.neg = {5, 4, 3, 2, 1, 0};
    bad.bot = 0;
    bad.top = 5;
    auto v = validate_lattice(bad);
    REQUIRE_FALSE(v.ok());
    CHECK(v.diagnostics.front().code == ErrorCode::NotALattice);
  }
  SECTION("negation that is not an involution") {
    raw.neg[1] = 3;
    auto v = validate_lattice(raw);
    REQUIRE_FALSE(v.ok());
    CHECK(v.diagnostics.front().code == ErrorCode::NotInvolutive);
  }
  SECTION("complement that is not orthogonal") {
    // On the chain 0 < p < q < 1 the order-reversing involution gives
    // p ∧ ¬p = p.
    RawLattice chain;
    chain.size = 4;
    chain.names = {"0", "p", "q", "1"};
    chain.leq = {{0, 1}, {1, 2}, {2, 3}};
    chain.neg = {3, 2, 1, 0};
    chain.bot = 0;
    chain.top = 3;
    auto v = validate_lattice(chain);
    REQUIRE_FALSE(v.ok());
    CHECK(v.diagnostics.front().code == ErrorCode::NotOrtho);
  }
  SECTION("single element") {
    RawLattice one;
    one.size = 1;
    one.names = {"0"};
    one.neg = {0};
    auto v = validate_lattice(one);
    REQUIRE_FALSE(v.ok());
    CHECK(v.diagnostics.front().code == ErrorCode::Degenerate);
  }
  SECTION("size cap") {
    auto big = builtin_by_name("b8xb8").to_raw();
    auto v = validate_lattice(big, 32);
    REQUIRE_FALSE(v.ok());
    CHECK(v.diagnostics.front().code == ErrorCode::SizeCapExceeded);
  }
  SECTION("duplicate names") {
    raw.names[2] = "a";
    auto v = validate_lattice(raw);
    REQUIRE_FALSE(v.ok());
    CHECK(v.diagnostics.front().code == ErrorCode::BadTables);
  }
}

TEST_CASE("builtins") {
  CHECK(builtin_boolean(1).size() == 2);
  CHECK(builtin_boolean(3).size() == 8);
  CHECK(builtin_mo(3).size() == 8);
  CHECK(builtin_by_name("mo2xb2").size() == 12);
  CHECK(center(builtin_boolean(3)).size() == 8);
  CHECK(center(builtin_mo(3)).size() == 2);
  CHECK(center(builtin_by_name("mo2xb2")).size() == 4);
  CHECK_THROWS_AS(builtin_by_name("nope"), Error);
  std::vector<std::string> zero{"0"};
  CHECK_THROWS_AS(builtin("mo", zero), Error);
}

TEST_CASE("meet and join agree with the order on random lattices") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    auto L = random_lattice(rng);
    for (Elem a = 0; a < L.size(); ++a) {
      for (Elem b = 0; b < L.size(); ++b) {
        REQUIRE(L.meet(a, b) == naive_meet(L, a, b));
        REQUIRE(L.join(a, b) == L.neg(naive_meet(L, L.neg(a), L.neg(b))));
      }
    }
  }
}

TEST_CASE("center: fast path, definitional route and commutation agree") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    auto L = random_lattice(rng);
    auto fast = center(L);
    CHECK(fast == center_definitional(L));
    std::vector<Elem> oracle;
    for (Elem z = 0; z < L.size(); ++z) {
      bool all = true;
      for (Elem a = 0; a < L.size() && all; ++a) {
        all = commutes(L, a, z) && commutes(L, z, a);
      }
      if (all) {
        oracle.push_back(z);
      }
    }
    CHECK(fast == oracle);
  }
}

TEST_CASE("center of a product is the product of centers") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    auto L = builtin_by_name(trial % 2 ? "mo2" : "b4");
    auto M = builtin_by_name(trial % 3 ? "mo3" : "b2");
    auto P = direct_product(L, M);
    CHECK(center(P).size() == center(L).size() * center(M).size());
  }
}

TEST_CASE("theta congruence and quotient") {
  auto L = builtin_by_name("b4");
  Elem const p = *L.find("p");
  auto c = theta_congruence(L, p);
  CHECK(c.num_classes == 2);
  CHECK(c.related(L.bot(), *L.find("q")));
  CHECK(c.related(p, L.top()));
  auto q = quotient(L, c);
  CHECK(q.size() == 2);

  auto mo2 = builtin_by_name("mo2");
  CHECK_THROWS_AS(theta_congruence(mo2, *mo2.find("a")), Error);
  auto total = theta_congruence(L, L.bot());
  CHECK(total.num_classes == 1);
  CHECK_THROWS_AS(quotient(L, total), Error);
}

TEST_CASE("a partition that is not compatible is reported") {
  auto L = builtin_by_name("mo2");
  // {0, a} merged, rest singletons
  std::vector<std::size_t> labels{0, 0, 1, 2, 3, 4};
  auto c = partition_from_labels(labels);
  CHECK(compatibility_violation(L, c).has_value());
  CHECK_THROWS_AS(quotient(L, c), Error);
}

TEST_CASE("product decomposition at a central element") {
  auto L = builtin_by_name("mo2xb2");
  for (Elem z : center(L)) {
    if (z == L.bot() || z == L.top()) {
      continue;
    }
    auto lhs = quotient(L, theta_congruence(L, z));
    auto rhs = quotient(L, theta_congruence(L, L.neg(z)));
    auto iso = find_isomorphism(L, direct_product(lhs, rhs));
    REQUIRE(iso);
    CHECK(is_isomorphism(L, direct_product(lhs, rhs), iso->map));
  }
}

TEST_CASE("isomorphism search finds relabelings and rejects non-isomorphic pairs") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 15; ++trial) {
    auto L = random_lattice(rng);
    std::vector<Elem> perm(L.size());
    std::iota(perm.begin(), perm.end(), Elem{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    auto M = make_lattice(permuted(L.to_raw(), perm), L.size());
    auto iso = find_isomorphism(L, M);
    REQUIRE(iso);
    CHECK(is_isomorphism(L, M, iso->map));
  }
  CHECK_FALSE(find_isomorphism(builtin_by_name("mo3"), builtin_by_name("b8")));
  CHECK(find_isomorphism(direct_product(builtin_boolean(1), builtin_boolean(1)), builtin_boolean(2)));
}

TEST_CASE("lattice files round-trip") {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 10; ++trial) {
    auto L = random_lattice(rng);
    std::stringstream ss;
    write_lattice(ss, L);
    auto back = parse_lattice_file(ss);
    auto M = make_lattice(back.raw, L.size());
    CHECK(M.same_tables(L));
    CHECK(M.names() == L.names());
  }
}

TEST_CASE("lattice file errors cite the line") {
  std::stringstream ss("oml 2\nelem 0 0\nelem 1 1\nleq 0 1\nneg 0 1\nneg 1 0\nbot 0\ntop 7\n");
  try {
    parse_lattice_file(ss, "t.oml");
    FAIL("expected LoadError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::LoadError);
    CHECK(std::string(e.what()).find("t.oml:8") != std::string::npos);
  }
  std::stringstream unknown("oml 2\nfrob 1\n");
  CHECK_THROWS_AS(parse_lattice_file(unknown), Error);
}
