#include "omql/semigroup.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace omql {

namespace {

std::string ids(std::initializer_list<SgElem> xs) {
  std::string out;
  for (auto x : xs) {
    out += out.empty() ? "" : ", ";
    out += std::to_string(x);
  }
  return "(" + out + ")";
}

// Zero and star laws shared by both construction paths.
void check_zero_and_star(const StarSemigroup& g, std::vector<SemigroupDiagnostic>& diags) {
  std::size_t const n = g.size();
  SgElem const z = g.zero();
  for (SgElem x = 0; x < n; ++x) {
    if (g.mul(z, x) != z || g.mul(x, z) != z) {
      diags.push_back({ErrorCode::ZeroLaw, {x}, "0·x = x·0 = 0 fails at x = " + std::to_string(x)});
      break;
    }
  }
  for (SgElem x = 0; x < n; ++x) {
    if (g.star(g.star(x)) != x) {
      diags.push_back({ErrorCode::StarLaw, {x}, "x** = x fails at x = " + std::to_string(x)});
      return;
    }
  }
  for (SgElem x = 0; x < n; ++x) {
    for (SgElem y = 0; y < n; ++y) {
      if (g.star(g.mul(x, y)) != g.mul(g.star(y), g.star(x))) {
        diags.push_back({ErrorCode::StarLaw, {x, y},
                         "(x·y)* = y*·x* fails at " + ids({x, y})});
        return;
      }
    }
  }
}

}  // namespace

ElemSet StarSemigroup::right_ideal(SgElem x) const {
  ElemSet s(n_);
  for (SgElem g = 0; g < n_; ++g) {
    s.set(mul(x, g));
  }
  return s;
}

RawStarSemigroup StarSemigroup::to_raw() const {
  RawStarSemigroup raw;
  raw.size = n_;
  raw.mul.assign(table_.begin(), table_.end());
  raw.star = star_;
  raw.zero = zero_;
  return raw;
}

SemigroupValidation validate_star_semigroup(const RawStarSemigroup& raw) {
  SemigroupValidation result;
  auto& diags = result.diagnostics;
  std::size_t const n = raw.size;
  if (n == 0 || n > 65535) {
    diags.push_back({ErrorCode::CapExceeded, {}, "semigroup size must be in 1..65535"});
    return result;
  }
  if (raw.mul.size() != n * n || raw.star.size() != n || raw.zero >= n ||
      std::any_of(raw.mul.begin(), raw.mul.end(), [n](SgElem e) { return e >= n; }) ||
      std::any_of(raw.star.begin(), raw.star.end(), [n](SgElem e) { return e >= n; })) {
    diags.push_back({ErrorCode::BadTables, {}, "tables are not square over a common set"});
    return result;
  }
  StarSemigroup g;
  g.n_ = n;
  g.table_.assign(raw.mul.begin(), raw.mul.end());
  g.star_ = raw.star;
  g.zero_ = raw.zero;

  bool assoc = true;
  for (SgElem x = 0; x < n && assoc; ++x) {
    for (SgElem y = 0; y < n && assoc; ++y) {
      SgElem const xy = g.mul(x, y);
      for (SgElem z = 0; z < n; ++z) {
        if (g.mul(xy, z) != g.mul(x, g.mul(y, z))) {
          diags.push_back({ErrorCode::NotAssociative, {x, y, z},
                           "(x·y)·z = x·(y·z) fails at " + ids({x, y, z})});
          assoc = false;
          break;
        }
      }
    }
  }
  check_zero_and_star(g, diags);
  if (diags.empty()) {
    result.semigroup = std::move(g);
  }
  return result;
}

StarSemigroup make_star_semigroup(const RawStarSemigroup& raw) {
  auto result = validate_star_semigroup(raw);
  if (!result.ok()) {
    auto const& d = result.diagnostics.front();
    throw Error(d.code, d.message);
  }
  return std::move(*result.semigroup);
}

StarSemigroup SemigroupBuilder::certified(std::size_t n, std::vector<std::uint16_t> table,
                                          std::vector<SgElem> star, SgElem zero) {
  if (table.size() != n * n || star.size() != n || zero >= n) {
    throw Error(ErrorCode::BadTables, "tables are not square over a common set");
  }
  StarSemigroup g;
  g.n_ = n;
  g.table_ = std::move(table);
  g.star_ = std::move(star);
  g.zero_ = zero;
  std::vector<SemigroupDiagnostic> diags;
  check_zero_and_star(g, diags);
  if (!diags.empty()) {
    throw Error(diags.front().code, diags.front().message);
  }
  return g;
}

std::vector<SgElem> projections(const StarSemigroup& g) {
  std::vector<SgElem> result;
  for (SgElem e = 0; e < g.size(); ++e) {
    if (g.star(e) == e && g.mul(e, e) == e) {
      result.push_back(e);
    }
  }
  return result;
}

ElemSet right_annihilator(const StarSemigroup& g, SgElem x) {
  ElemSet s(g.size());
  for (SgElem y = 0; y < g.size(); ++y) {
    if (g.mul(x, y) == g.zero()) {
      s.set(y);
    }
  }
  return s;
}

ClosedProjectionLattice closed_projections(const StarSemigroup& g) {
  std::size_t const n = g.size();
  std::unordered_map<ElemSet, SgElem> by_ideal;
  for (SgElem e : projections(g)) {
    auto [it, inserted] = by_ideal.emplace(g.right_ideal(e), e);
    if (!inserted) {
      throw Error(ErrorCode::NonUniqueProjection,
                  "projections " + std::to_string(it->second) + " and " + std::to_string(e) +
                      " generate the same right ideal");
    }
  }

  ClosedProjectionLattice pc;
  pc.prime.resize(n);
  for (SgElem x = 0; x < n; ++x) {
    auto it = by_ideal.find(right_annihilator(g, x));
    if (it == by_ideal.end()) {
      throw Error(ErrorCode::NotBaer, "no projection e with {x}^r = e·G, witness x = " +
                                          std::to_string(x));
    }
    pc.prime[x] = it->second;
  }

  pc.carrier = pc.prime;
  std::sort(pc.carrier.begin(), pc.carrier.end());
  pc.carrier.erase(std::unique(pc.carrier.begin(), pc.carrier.end()), pc.carrier.end());
  std::size_t const k = pc.carrier.size();
  pc.index.assign(n, -1);
  for (std::size_t i = 0; i < k; ++i) {
    pc.index[pc.carrier[i]] = static_cast<std::int32_t>(i);
  }
  pc.witness.assign(k, 0);
  std::vector<char> seen(k, 0);
  for (SgElem x = 0; x < n; ++x) {
    auto const i = static_cast<std::size_t>(pc.index[pc.prime[x]]);
    if (!seen[i]) {
      seen[i] = 1;
      pc.witness[i] = x;
    }
  }
  for (SgElem e : pc.carrier) {
    pc.ideals.push_back(g.right_ideal(e));
  }

  RawLattice raw;
  raw.size = k;
  for (std::size_t i = 0; i < k; ++i) {
    SgElem const e = pc.carrier[i];
    raw.names.push_back("e" + std::to_string(e));
    raw.neg.push_back(static_cast<Elem>(pc.index[pc.prime[e]]));
    for (std::size_t j = 0; j < k; ++j) {
      SgElem const f = pc.carrier[j];
      bool const by_product = g.mul(e, f) == e;
      bool const by_ideal_order = pc.ideals[i].is_subset_of(pc.ideals[j]);
      if (by_product != by_ideal_order) {
        throw Error(ErrorCode::BadTables, "order e·f = e disagrees with e·G ⊆ f·G at " +
                                              ids({e, f}));
      }
      if (by_product) {
        raw.leq.emplace_back(static_cast<Elem>(i), static_cast<Elem>(j));
      }
    }
  }
  SgElem const one = pc.prime[g.zero()];
  SgElem const zero = pc.prime[one];
  raw.top = static_cast<Elem>(pc.index[one]);
  raw.bot = static_cast<Elem>(pc.index[zero]);
  pc.lattice = make_lattice(raw, std::max(k, kDefaultLatticeCap));

  auto const& L = pc.lattice;
  auto meet_formula = [&](SgElem e1, SgElem e2) {
    return g.mul(e1, pc.prime[g.mul(pc.prime[e2], e1)]);
  };
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      SgElem const e1 = pc.carrier[i];
      SgElem const e2 = pc.carrier[j];
      SgElem const m = meet_formula(e1, e2);
      SgElem const jn = pc.prime[meet_formula(pc.prime[e1], pc.prime[e2])];
      if (pc.index[m] != L.meet(static_cast<Elem>(i), static_cast<Elem>(j))) {
        throw Error(ErrorCode::BadTables, "e1·(e2′·e1)′ is not the meet at " + ids({e1, e2}));
      }
      if (pc.index[jn] != L.join(static_cast<Elem>(i), static_cast<Elem>(j))) {
        throw Error(ErrorCode::BadTables, "(e1′∧e2′)′ is not the join at " + ids({e1, e2}));
      }
    }
  }
  return pc;
}

void write_semigroup(std::ostream& out, const StarSemigroup& g) {
  out << "bsg " << g.size() << '\n';
  out << "zero " << g.zero() << '\n';
  for (SgElem x = 0; x < g.size(); ++x) {
    out << "star " << x << ' ' << g.star(x) << '\n';
  }
  for (SgElem x = 0; x < g.size(); ++x) {
    for (SgElem y = 0; y < g.size(); ++y) {
      out << "mul " << x << ' ' << y << ' ' << g.mul(x, y) << '\n';
    }
  }
}

RawStarSemigroup parse_semigroup(std::istream& in, const std::string& source) {
  RawStarSemigroup raw;
  bool have_header = false;
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& what) {
    throw Error(ErrorCode::LoadError, source + ":" + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream words(line);
    std::string key;
    if (!(words >> key)) {
      continue;
    }
    if (key == "pc") {
      break;  // closed-projection listing written by the CLI, not table data
    }
    if (key == "bsg") {
      std::size_t n = 0;
      if (have_header || !(words >> n) || n == 0 || n > 65535) {
        fail("bad or repeated header");
      }
      have_header = true;
      raw.size = n;
      raw.mul.assign(n * n, 0);
      raw.star.assign(n, 0);
      continue;
    }
    if (!have_header) {
      fail("missing 'bsg <n>' header");
    }
    std::vector<std::size_t> args;
    std::size_t v = 0;
    while (words >> v) {
      if (v >= raw.size) {
        fail("element id out of range");
      }
      args.push_back(v);
    }
    if (!words.eof()) {
      fail("expected element ids");
    }
    auto want = [&](std::size_t count) {
      if (args.size() != count) {
        fail("'" + key + "' takes " + std::to_string(count) + " ids");
      }
    };
    if (key == "zero") {
      want(1);
      raw.zero = static_cast<SgElem>(args[0]);
    } else if (key == "star") {
      want(2);
      raw.star[args[0]] = static_cast<SgElem>(args[1]);
    } else if (key == "mul") {
      want(3);
      raw.mul[args[0] * raw.size + args[1]] = static_cast<SgElem>(args[2]);
    } else {
      fail("unknown directive '" + key + "'");
    }
  }
  if (!have_header) {
    fail("missing 'bsg <n>' header");
  }
  return raw;
}

}  // namespace omql
