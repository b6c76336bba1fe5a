#include "omql/lattice.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <set>
#include <sstream>

namespace omql {

namespace {

std::string pair_message(const char* what, const std::vector<std::string>& names,
                         Elem a, Elem b) {
  std::ostringstream out;
  out << what << " at (" << names[a] << ", " << names[b] << ")";
  return out.str();
}

bool valid_name(const std::string& name) {
  return !name.empty() &&
         std::none_of(name.begin(), name.end(), [](char c) {
           return c == ' ' || c == '\t' || c == '\n' || c == '\r';
         });
}

}  // namespace

std::optional<Elem> FiniteOml::find(std::string_view name) const {
  for (std::size_t i = 0; i < n_; ++i) {
    if (names_[i] == name) {
      return static_cast<Elem>(i);
    }
  }
  return std::nullopt;
}

std::vector<std::pair<Elem, Elem>> FiniteOml::covers() const {
  std::vector<std::pair<Elem, Elem>> result;
  for (Elem a = 0; a < n_; ++a) {
    for (Elem b = 0; b < n_; ++b) {
      if (a == b || !leq(a, b)) {
        continue;
      }
      bool covering = true;
      for (Elem c = 0; c < n_ && covering; ++c) {
        if (c != a && c != b && leq(a, c) && leq(c, b)) {
          covering = false;
        }
      }
      if (covering) {
        result.emplace_back(a, b);
      }
    }
  }
  return result;
}

RawLattice FiniteOml::to_raw() const {
  RawLattice raw;
  raw.size = n_;
  raw.names = names_;
  raw.leq = covers();
  raw.neg = neg_;
  raw.bot = bot_;
  raw.top = top_;
  return raw;
}

bool FiniteOml::same_tables(const FiniteOml& other) const {
  return n_ == other.n_ && leq_ == other.leq_ && meet_ == other.meet_ &&
         join_ == other.join_ && neg_ == other.neg_ && bot_ == other.bot_ &&
         top_ == other.top_;
}

ValidationResult validate_lattice(const RawLattice& raw, std::size_t size_cap) {
  ValidationResult result;
  auto& diags = result.diagnostics;
  std::size_t const n = raw.size;

  if (n > size_cap) {
    diags.push_back({ErrorCode::SizeCapExceeded, {},
                     "lattice has " + std::to_string(n) +
                         " elements, cap is " + std::to_string(size_cap)});
    return result;
  }
  if (n < 2) {
    diags.push_back({ErrorCode::Degenerate, {},
                     "degenerate lattice: fewer than two elements"});
    return result;
  }
  if (!raw.names.empty() && raw.names.size() != n) {
    diags.push_back({ErrorCode::BadTables, {}, "name table has wrong size"});
    return result;
  }
  if (raw.neg.size() != n) {
    diags.push_back({ErrorCode::BadTables, {}, "negation table has wrong size"});
    return result;
  }
  auto in_range = [n](Elem e) { return e < n; };
  if (!in_range(raw.bot) || !in_range(raw.top) ||
      !std::all_of(raw.neg.begin(), raw.neg.end(), in_range) ||
      !std::all_of(raw.leq.begin(), raw.leq.end(), [&](auto const& p) {
        return in_range(p.first) && in_range(p.second);
      })) {
    diags.push_back({ErrorCode::BadTables, {}, "element id out of range"});
    return result;
  }

  std::vector<std::string> names(n);
  for (std::size_t i = 0; i < n; ++i) {
    names[i] = raw.names.empty() ? std::to_string(i) : raw.names[i];
    if (!valid_name(names[i])) {
      diags.push_back({ErrorCode::BadTables, {static_cast<Elem>(i)},
                       "element names must be non-empty without whitespace"});
      return result;
    }
  }
  {
    std::set<std::string> seen(names.begin(), names.end());
    if (seen.size() != n) {
      diags.push_back({ErrorCode::BadTables, {}, "element names are not unique"});
      return result;
    }
  }

  // Reflexive-transitive closure of the supplied pairs.
  std::vector<char> leq(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    leq[i * n + i] = 1;
  }
  for (auto const& [a, b] : raw.leq) {
    leq[a * n + b] = 1;
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!leq[i * n + k]) {
        continue;
      }
      for (std::size_t j = 0; j < n; ++j) {
        if (leq[k * n + j]) {
          leq[i * n + j] = 1;
        }
      }
    }
  }
  auto le = [&](std::size_t a, std::size_t b) { return leq[a * n + b] != 0; };

  for (Elem a = 0; a < n; ++a) {
    for (Elem b = a + 1; b < n; ++b) {
      if (le(a, b) && le(b, a)) {
        diags.push_back({ErrorCode::NotALattice, {a, b},
                         pair_message("order is not antisymmetric", names, a, b)});
        return result;
      }
    }
  }
  if (raw.bot == raw.top) {
    diags.push_back({ErrorCode::Degenerate, {raw.bot}, "bottom equals top"});
    return result;
  }
  for (Elem a = 0; a < n; ++a) {
    if (!le(raw.bot, a) || !le(a, raw.top)) {
      diags.push_back({ErrorCode::NotALattice, {a},
                       "element " + names[a] + " is not between bot and top"});
      return result;
    }
  }

  std::vector<Elem> meet(n * n);
  std::vector<Elem> join(n * n);
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      std::optional<Elem> glb;
      std::optional<Elem> lub;
      for (Elem c = 0; c < n; ++c) {
        if (le(c, a) && le(c, b) && (!glb || le(*glb, c))) {
          glb = c;
        }
        if (le(a, c) && le(b, c) && (!lub || le(c, *lub))) {
          lub = c;
        }
      }
      // The candidate picked above must dominate every lower bound.
      for (Elem c = 0; c < n && glb; ++c) {
        if (le(c, a) && le(c, b) && !le(c, *glb)) {
          glb.reset();
        }
      }
      for (Elem c = 0; c < n && lub; ++c) {
        if (le(a, c) && le(b, c) && !le(*lub, c)) {
          lub.reset();
        }
      }
      if (!glb) {
        diags.push_back({ErrorCode::NotALattice, {a, b},
                         pair_message("no greatest lower bound", names, a, b)});
        return result;
      }
      if (!lub) {
        diags.push_back({ErrorCode::NotALattice, {a, b},
                         pair_message("no least upper bound", names, a, b)});
        return result;
      }
      meet[a * n + b] = *glb;
      join[a * n + b] = *lub;
    }
  }

  auto const& neg = raw.neg;
  for (Elem a = 0; a < n; ++a) {
    if (neg[neg[a]] != a) {
      diags.push_back({ErrorCode::NotInvolutive, {a},
                       "negation is not an involution at " + names[a]});
      break;
    }
  }
  if (diags.empty()) {
    bool found = false;
    for (Elem a = 0; a < n && !found; ++a) {
      for (Elem b = 0; b < n && !found; ++b) {
        if (neg[join[a * n + b]] != meet[neg[a] * n + neg[b]]) {
          diags.push_back({ErrorCode::NotInvolutive, {a, b},
                           pair_message("De Morgan law fails", names, a, b)});
          found = true;
        }
      }
    }
  }
  if (!diags.empty()) {
    return result;
  }
  for (Elem a = 0; a < n; ++a) {
    if (meet[a * n + neg[a]] != raw.bot) {
      diags.push_back({ErrorCode::NotOrtho, {a},
                       "x ∧ ¬x is not bottom at " + names[a]});
      return result;
    }
  }
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      Elem const ab = join[a * n + b];
      if (join[a * n + meet[neg[a] * n + ab]] != ab) {
        diags.push_back({ErrorCode::NotOrthomodular, {a, b},
                         pair_message("orthomodular law fails", names, a, b)});
        return result;
      }
    }
  }

  FiniteOml lattice;
  lattice.n_ = n;
  lattice.names_ = std::move(names);
  lattice.leq_ = std::move(leq);
  lattice.meet_ = std::move(meet);
  lattice.join_ = std::move(join);
  lattice.neg_ = raw.neg;
  lattice.bot_ = raw.bot;
  lattice.top_ = raw.top;
  result.lattice = std::move(lattice);
  return result;
}

FiniteOml make_lattice(const RawLattice& raw, std::size_t size_cap) {
  auto result = validate_lattice(raw, size_cap);
  if (!result.ok()) {
    auto const& d = result.diagnostics.front();
    throw Error(d.code, d.message);
  }
  return std::move(*result.lattice);
}

bool is_central(const FiniteOml& lattice, Elem z) {
  Elem const nz = lattice.neg(z);
  for (Elem a = 0; a < lattice.size(); ++a) {
    if (lattice.join(lattice.meet(a, z), lattice.meet(a, nz)) != a) {
      return false;
    }
  }
  return true;
}

std::vector<Elem> center(const FiniteOml& lattice, bool cross_check) {
  std::vector<Elem> result;
  for (Elem z = 0; z < lattice.size(); ++z) {
    if (is_central(lattice, z)) {
      result.push_back(z);
    }
  }
  if (cross_check && result != center_definitional(lattice)) {
    throw Error(ErrorCode::BadTables,
                "center characterization disagrees with the definition");
  }
  return result;
}

std::vector<Elem> center_definitional(const FiniteOml& lattice) {
  auto const& L = lattice;
  auto distributive = [&](Elem x, Elem y, Elem w) {
    return L.meet(L.join(x, y), w) == L.join(L.meet(x, w), L.meet(y, w));
  };
  auto dual_distributive = [&](Elem x, Elem y, Elem w) {
    return L.join(L.meet(x, y), w) == L.meet(L.join(x, w), L.join(y, w));
  };
  std::vector<Elem> result;
  for (Elem z = 0; z < L.size(); ++z) {
    bool central = true;
    for (Elem a = 0; a < L.size() && central; ++a) {
      for (Elem b = 0; b < L.size() && central; ++b) {
        std::array<Elem, 3> triple{a, b, z};
        std::sort(triple.begin(), triple.end());
        do {
          if (!distributive(triple[0], triple[1], triple[2]) ||
              !dual_distributive(triple[0], triple[1], triple[2])) {
            central = false;
            break;
          }
        } while (std::next_permutation(triple.begin(), triple.end()));
      }
    }
    if (central) {
      result.push_back(z);
    }
  }
  return result;
}

Congruence partition_from_labels(std::span<const std::size_t> labels) {
  Congruence result;
  result.class_of.resize(labels.size());
  std::vector<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto it = std::find_if(seen.begin(), seen.end(),
                           [&](auto const& p) { return p.first == labels[i]; });
    if (it == seen.end()) {
      seen.emplace_back(labels[i], seen.size());
      result.class_of[i] = seen.size() - 1;
    } else {
      result.class_of[i] = it->second;
    }
  }
  result.num_classes = seen.size();
  return result;
}

std::optional<std::pair<Elem, Elem>> compatibility_violation(
    const FiniteOml& lattice, const Congruence& congruence,
    std::span<const Elem> box) {
  auto const& L = lattice;
  auto const& c = congruence;
  if (c.class_of.size() != L.size()) {
    throw Error(ErrorCode::NotCompatible, "partition has wrong size");
  }
  for (Elem a = 0; a < L.size(); ++a) {
    for (Elem b = a + 1; b < L.size(); ++b) {
      if (!c.related(a, b)) {
        continue;
      }
      if (!c.related(L.neg(a), L.neg(b)) ||
          (!box.empty() && !c.related(box[a], box[b]))) {
        return std::pair{a, b};
      }
      for (Elem x = 0; x < L.size(); ++x) {
        if (!c.related(L.meet(a, x), L.meet(b, x)) ||
            !c.related(L.join(a, x), L.join(b, x))) {
          return std::pair{a, b};
        }
      }
    }
  }
  return std::nullopt;
}

Congruence theta_congruence(const FiniteOml& lattice, Elem z,
                            std::span<const Elem> box) {
  if (z >= lattice.size() || !is_central(lattice, z)) {
    throw Error(ErrorCode::NotCentral,
                "element " + (z < lattice.size() ? lattice.name(z) : std::to_string(z)) +
                    " is not central");
  }
  std::vector<std::size_t> labels(lattice.size());
  for (Elem a = 0; a < lattice.size(); ++a) {
    labels[a] = lattice.meet(a, z);
  }
  auto result = partition_from_labels(labels);
  result.witness = z;
  if (auto bad = compatibility_violation(lattice, result, box)) {
    throw Error(ErrorCode::NotCompatible,
                pair_message("Θ_z is not compatible", lattice.names(), bad->first,
                             bad->second));
  }
  return result;
}

FiniteOml quotient(const FiniteOml& lattice, const Congruence& congruence) {
  if (auto bad = compatibility_violation(lattice, congruence)) {
    throw Error(ErrorCode::NotCompatible,
                pair_message("partition is not a congruence", lattice.names(),
                             bad->first, bad->second));
  }
  std::size_t const k = congruence.num_classes;
  if (k < 2) {
    throw Error(ErrorCode::Degenerate, "quotient by the total congruence is trivial");
  }
  std::vector<Elem> rep(k, 0);
  std::vector<char> have(k, 0);
  for (Elem a = 0; a < lattice.size(); ++a) {
    auto cls = congruence.class_of[a];
    if (!have[cls]) {
      have[cls] = 1;
      rep[cls] = a;
    }
  }
  auto cls = [&](Elem a) { return static_cast<Elem>(congruence.class_of[a]); };

  RawLattice raw;
  raw.size = k;
  for (std::size_t i = 0; i < k; ++i) {
    raw.names.push_back(lattice.name(rep[i]));
    raw.neg.push_back(cls(lattice.neg(rep[i])));
    for (std::size_t j = 0; j < k; ++j) {
      if (cls(lattice.meet(rep[i], rep[j])) == i) {
        raw.leq.emplace_back(static_cast<Elem>(i), static_cast<Elem>(j));
      }
    }
  }
  raw.bot = cls(lattice.bot());
  raw.top = cls(lattice.top());
  return make_lattice(raw, std::max(k, kDefaultLatticeCap));
}

FiniteOml direct_product(const FiniteOml& lhs, const FiniteOml& rhs) {
  std::size_t const n1 = lhs.size();
  std::size_t const n2 = rhs.size();
  auto id = [n2](std::size_t i, std::size_t j) {
    return static_cast<Elem>(i * n2 + j);
  };
  RawLattice raw;
  raw.size = n1 * n2;
  raw.neg.resize(raw.size);
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < n2; ++j) {
      raw.names.push_back("(" + lhs.name(i) + "," + rhs.name(j) + ")");
      raw.neg[id(i, j)] = id(lhs.neg(i), rhs.neg(j));
    }
  }
  for (auto const& [a, b] : lhs.covers()) {
    for (std::size_t j = 0; j < n2; ++j) {
      raw.leq.emplace_back(id(a, j), id(b, j));
    }
  }
  for (auto const& [a, b] : rhs.covers()) {
    for (std::size_t i = 0; i < n1; ++i) {
      raw.leq.emplace_back(id(i, a), id(i, b));
    }
  }
  raw.bot = id(lhs.bot(), rhs.bot());
  raw.top = id(lhs.top(), rhs.top());
  return make_lattice(raw, std::max(raw.size, kDefaultLatticeCap));
}

bool is_isomorphism(const FiniteOml& lhs, const FiniteOml& rhs,
                    std::span<const Elem> map, std::span<const Elem> lhs_box,
                    std::span<const Elem> rhs_box) {
  std::size_t const n = lhs.size();
  if (rhs.size() != n || map.size() != n) {
    return false;
  }
  std::vector<char> hit(n, 0);
  for (Elem a : map) {
    if (a >= n || hit[a]) {
      return false;
    }
    hit[a] = 1;
  }
  bool const with_box = !lhs_box.empty() && !rhs_box.empty();
  if (map[lhs.bot()] != rhs.bot() || map[lhs.top()] != rhs.top()) {
    return false;
  }
  for (Elem a = 0; a < n; ++a) {
    if (map[lhs.neg(a)] != rhs.neg(map[a])) {
      return false;
    }
    if (with_box && map[lhs_box[a]] != rhs_box[map[a]]) {
      return false;
    }
    for (Elem b = 0; b < n; ++b) {
      if (map[lhs.meet(a, b)] != rhs.meet(map[a], map[b]) ||
          map[lhs.join(a, b)] != rhs.join(map[a], map[b])) {
        return false;
      }
    }
  }
  return true;
}

namespace {

struct Signature {
  std::size_t below = 0;
  std::size_t above = 0;
  bool central = false;
  bool box_fixed = false;

  auto operator<=>(const Signature&) const = default;
};

std::vector<Signature> signatures(const FiniteOml& L, std::span<const Elem> box) {
  std::vector<Signature> sig(L.size());
  for (Elem a = 0; a < L.size(); ++a) {
    for (Elem b = 0; b < L.size(); ++b) {
      sig[a].below += L.leq(b, a) ? 1 : 0;
      sig[a].above += L.leq(a, b) ? 1 : 0;
    }
    sig[a].central = is_central(L, a);
    sig[a].box_fixed = !box.empty() && box[a] == a;
  }
  return sig;
}

class IsoSearch {
 public:
  IsoSearch(const FiniteOml& lhs, const FiniteOml& rhs,
            std::span<const Elem> lhs_box, std::span<const Elem> rhs_box)
      : lhs_(lhs), rhs_(rhs), lbox_(lhs_box), rbox_(rhs_box),
        with_box_(!lhs_box.empty() && !rhs_box.empty()),
        lsig_(signatures(lhs, with_box_ ? lhs_box : std::span<const Elem>{})),
        rsig_(signatures(rhs, with_box_ ? rhs_box : std::span<const Elem>{})),
        map_(lhs.size(), kUnset), inverse_(rhs.size(), kUnset) {
    order_.resize(lhs.size());
    std::iota(order_.begin(), order_.end(), Elem{0});
    std::stable_sort(order_.begin(), order_.end(), [&](Elem a, Elem b) {
      return lsig_[a] < lsig_[b];
    });
  }

  std::optional<LatticeIso> run() {
    auto ls = lsig_;
    auto rs = rsig_;
    std::sort(ls.begin(), ls.end());
    std::sort(rs.begin(), rs.end());
    if (ls != rs) {
      return std::nullopt;
    }
    if (!search(0)) {
      return std::nullopt;
    }
    return LatticeIso{map_};
  }

 private:
  static constexpr Elem kUnset = static_cast<Elem>(-1);

  bool consistent(Elem a, Elem b) const {
    if (lsig_[a] != rsig_[b]) {
      return false;
    }
    for (Elem x = 0; x < lhs_.size(); ++x) {
      Elem const y = map_[x];
      if (y == kUnset) {
        continue;
      }
      if (lhs_.leq(a, x) != rhs_.leq(b, y) || lhs_.leq(x, a) != rhs_.leq(y, b)) {
        return false;
      }
    }
    Elem const na = map_[lhs_.neg(a)];
    if (na != kUnset && na != rhs_.neg(b)) {
      return false;
    }
    if (with_box_) {
      Elem const ba = map_[lbox_[a]];
      if (ba != kUnset && ba != rbox_[b]) {
        return false;
      }
    }
    return true;
  }

  bool assign(Elem a, Elem b, std::vector<Elem>& trail) {
    if (map_[a] != kUnset) {
      return map_[a] == b;
    }
    if (inverse_[b] != kUnset || !consistent(a, b)) {
      return false;
    }
    map_[a] = b;
    inverse_[b] = a;
    trail.push_back(a);
    return assign(lhs_.neg(a), rhs_.neg(b), trail);
  }

  void undo(std::vector<Elem> const& trail) {
    for (Elem a : trail) {
      inverse_[map_[a]] = kUnset;
      map_[a] = kUnset;
    }
  }

  bool search(std::size_t pos) {
    while (pos < order_.size() && map_[order_[pos]] != kUnset) {
      ++pos;
    }
    if (pos == order_.size()) {
      return is_isomorphism(lhs_, rhs_, map_, with_box_ ? lbox_ : std::span<const Elem>{},
                            with_box_ ? rbox_ : std::span<const Elem>{});
    }
    Elem const a = order_[pos];
    for (Elem b = 0; b < rhs_.size(); ++b) {
      std::vector<Elem> trail;
      if (assign(a, b, trail) && search(pos + 1)) {
        return true;
      }
      undo(trail);
    }
    return false;
  }

  const FiniteOml& lhs_;
  const FiniteOml& rhs_;
  std::span<const Elem> lbox_;
  std::span<const Elem> rbox_;
  bool with_box_;
  std::vector<Signature> lsig_;
  std::vector<Signature> rsig_;
  std::vector<Elem> map_;
  std::vector<Elem> inverse_;
  std::vector<Elem> order_;
};

}  // namespace

std::optional<LatticeIso> find_isomorphism(const FiniteOml& lhs, const FiniteOml& rhs,
                                           std::span<const Elem> lhs_box,
                                           std::span<const Elem> rhs_box) {
  if (lhs.size() != rhs.size()) {
    return std::nullopt;
  }
  return IsoSearch(lhs, rhs, lhs_box, rhs_box).run();
}

}  // namespace omql
