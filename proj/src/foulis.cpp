#include "omql/foulis.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

namespace omql {

std::optional<std::vector<Elem>> residual_of(const FiniteOml& L, const std::vector<Elem>& graph) {
  std::size_t const n = L.size();
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      if (L.leq(a, b) && !L.leq(graph[a], graph[b])) {
        return std::nullopt;
      }
    }
  }
  std::vector<Elem> r(n);
  for (Elem y = 0; y < n; ++y) {
    Elem acc = L.bot();
    for (Elem x = 0; x < n; ++x) {
      if (L.leq(graph[x], y)) {
        acc = L.join(acc, x);
      }
    }
    r[y] = acc;
  }
  for (Elem x = 0; x < n; ++x) {
    if (!L.leq(graph[r[x]], x) || !L.leq(x, r[graph[x]])) {
      return std::nullopt;
    }
    for (Elem y = 0; y < n; ++y) {
      if (L.leq(x, y) && !L.leq(r[x], r[y])) {
        return std::nullopt;
      }
    }
  }
  return r;
}

namespace {

bool graph_less(const ResiduatedMap& a, const ResiduatedMap& b) { return a.graph < b.graph; }

}  // namespace

std::vector<ResiduatedMap> residuated_endomaps(const FiniteOml& L, std::size_t cap) {
  std::size_t const n = L.size();
  if (n > cap) {
    throw Error(ErrorCode::CapExceeded, "residuated map enumeration: |L| = " +
                                            std::to_string(n) + " exceeds the cap " +
                                            std::to_string(cap));
  }
  // Join-irreducibles are the elements with exactly one lower cover.
  std::vector<std::size_t> lower_covers(n, 0);
  for (auto const& [a, b] : L.covers()) {
    ++lower_covers[b];
  }
  std::vector<Elem> irreducible;
  for (Elem a = 0; a < n; ++a) {
    if (lower_covers[a] == 1) {
      irreducible.push_back(a);
    }
  }
  auto height = [&](Elem a) {
    std::size_t h = 0;
    for (Elem b = 0; b < n; ++b) {
      h += L.leq(b, a) ? 1 : 0;
    }
    return h;
  };
  std::stable_sort(irreducible.begin(), irreducible.end(),
                   [&](Elem a, Elem b) { return height(a) < height(b); });
  std::size_t const k = irreducible.size();

  std::vector<ResiduatedMap> result;
  std::vector<Elem> value(k, 0);
  std::vector<Elem> graph(n);

  auto leaf = [&]() {
    for (Elem x = 0; x < n; ++x) {
      Elem acc = L.bot();
      for (std::size_t i = 0; i < k; ++i) {
        if (L.leq(irreducible[i], x)) {
          acc = L.join(acc, value[i]);
        }
      }
      graph[x] = acc;
    }
    for (Elem a = 0; a < n; ++a) {
      for (Elem b = a; b < n; ++b) {
        if (graph[L.join(a, b)] != L.join(graph[a], graph[b])) {
          return;
        }
      }
    }
    auto r = residual_of(L, graph);
    if (!r) {
      throw Error(ErrorCode::BadTables, "join-preserving map without a residual");
    }
    result.push_back({graph, std::move(*r)});
  };

  // Depth-first over values on the irreducibles, monotone on them.
  auto rec = [&](auto& self, std::size_t pos) -> void {
    if (pos == k) {
      leaf();
      return;
    }
    for (Elem v = 0; v < n; ++v) {
      bool ok = true;
      for (std::size_t i = 0; i < pos && ok; ++i) {
        if (L.leq(irreducible[i], irreducible[pos]) && !L.leq(value[i], v)) {
          ok = false;
        }
      }
      if (ok) {
        value[pos] = v;
        self(self, pos + 1);
      }
    }
  };
  rec(rec, 0);
  std::sort(result.begin(), result.end(), graph_less);
  return result;
}

std::vector<ResiduatedMap> residuated_endomaps_oracle(const FiniteOml& L) {
  std::size_t const n = L.size();
  if (n > 6) {
    throw Error(ErrorCode::CapExceeded, "oracle enumeration is limited to |L| <= 6");
  }
  std::vector<ResiduatedMap> result;
  std::vector<Elem> phi(n, 0);
  std::vector<Elem> psi(n, 0);

  auto monotone = [&](const std::vector<Elem>& f) {
    for (Elem a = 0; a < n; ++a) {
      for (Elem b = 0; b < n; ++b) {
        if (L.leq(a, b) && !L.leq(f[a], f[b])) {
          return false;
        }
      }
    }
    return true;
  };

  // Search for a monotone ψ with φ∘ψ ≤ id ≤ ψ∘φ, one argument at a time.
  auto find_psi = [&](auto& self, Elem y) -> bool {
    if (y == n) {
      return true;
    }
    for (Elem c = 0; c < n; ++c) {
      if (!L.leq(phi[c], y)) {
        continue;
      }
      bool ok = true;
      for (Elem x = 0; x < n && ok; ++x) {
        if (phi[x] == y && !L.leq(x, c)) {
          ok = false;
        }
      }
      for (Elem w = 0; w < y && ok; ++w) {
        if ((L.leq(w, y) && !L.leq(psi[w], c)) || (L.leq(y, w) && !L.leq(c, psi[w]))) {
          ok = false;
        }
      }
      if (ok) {
        psi[y] = c;
        if (self(self, static_cast<Elem>(y + 1))) {
          return true;
        }
      }
    }
    return false;
  };

  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    total *= n;
  }
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (std::size_t i = 0; i < n; ++i) {
      phi[i] = static_cast<Elem>(c % n);
      c /= n;
    }
    if (!monotone(phi)) {
      continue;
    }
    if (find_psi(find_psi, 0)) {
      result.push_back({phi, psi});
    }
  }
  std::sort(result.begin(), result.end(), graph_less);
  return result;
}

std::optional<SgElem> FoulisSemigroup::find(const std::vector<Elem>& graph) const {
  ResiduatedMap probe{graph, {}};
  auto it = std::lower_bound(maps.begin(), maps.end(), probe, graph_less);
  if (it == maps.end() || it->graph != graph) {
    return std::nullopt;
  }
  return static_cast<SgElem>(it - maps.begin());
}

namespace {

// Graph ↦ map index.  Dense when n^n is small enough, hashed otherwise.
class GraphIndex {
 public:
  GraphIndex(std::size_t n, const std::vector<ResiduatedMap>& maps) : n_(n) {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n && total <= kDenseLimit; ++i) {
      total *= n;
    }
    weight_.resize(n);
    std::uint64_t w = 1;
    for (std::size_t i = 0; i < n; ++i) {
      weight_[i] = w;
      w *= n;
    }
    if (total <= kDenseLimit) {
      dense_.assign(total, kMissing);
    }
    for (std::size_t i = 0; i < maps.size(); ++i) {
      insert(key(maps[i].graph), static_cast<std::uint16_t>(i));
    }
  }

  std::uint64_t key(const std::vector<Elem>& graph) const {
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      k += weight_[i] * graph[i];
    }
    return k;
  }

  std::uint64_t weight(std::size_t i) const { return weight_[i]; }

  std::optional<std::uint16_t> lookup(std::uint64_t k) const {
    if (!dense_.empty()) {
      auto v = dense_[k];
      return v == kMissing ? std::nullopt : std::optional<std::uint16_t>(v);
    }
    auto it = sparse_.find(k);
    return it == sparse_.end() ? std::nullopt : std::optional<std::uint16_t>(it->second);
  }

 private:
  static constexpr std::uint64_t kDenseLimit = std::uint64_t{1} << 25;
  static constexpr std::uint16_t kMissing = std::numeric_limits<std::uint16_t>::max();

  void insert(std::uint64_t k, std::uint16_t v) {
    if (!dense_.empty()) {
      dense_[k] = v;
    } else {
      sparse_[k] = v;
    }
  }

  std::size_t n_;
  std::vector<std::uint64_t> weight_;
  std::vector<std::uint16_t> dense_;
  std::unordered_map<std::uint64_t, std::uint16_t> sparse_;
};

}  // namespace

FoulisSemigroup foulis_semigroup(const FiniteOml& L, std::size_t cap) {
  FoulisSemigroup fs{L, residuated_endomaps(L, cap), {}, 0};
  auto const& maps = fs.maps;
  std::size_t const n = L.size();
  std::size_t const m = maps.size();
  if (m >= 65535) {
    throw Error(ErrorCode::CapExceeded, "G(L) has too many elements for a 16-bit table");
  }
  GraphIndex index(n, maps);
  auto id_of = [&](std::uint64_t key, const char* what) {
    auto found = index.lookup(key);
    if (!found) {
      throw Error(ErrorCode::BadTables, std::string("G(L) is not closed under ") + what);
    }
    return *found;
  };

  // Table entry x·y is the map a ↦ x(y(a)); since the maps are pairwise
  // distinct, the table is the composition table and hence associative.
  std::vector<std::uint16_t> table(m * m);
  std::vector<std::uint64_t> partial(n);
  for (std::size_t x = 0; x < m; ++x) {
    auto const& gx = maps[x].graph;
    for (std::size_t y = 0; y < m; ++y) {
      auto const& gy = maps[y].graph;
      std::uint64_t k = 0;
      for (std::size_t a = 0; a < n; ++a) {
        k += index.weight(a) * gx[gy[a]];
      }
      table[x * m + y] = id_of(k, "composition");
    }
  }

  std::vector<SgElem> star(m);
  std::vector<Elem> img(n);
  for (std::size_t x = 0; x < m; ++x) {
    for (Elem a = 0; a < n; ++a) {
      img[a] = L.neg(maps[x].residual[L.neg(a)]);
    }
    star[x] = id_of(index.key(img), "star");
  }

  std::vector<Elem> graph(n, L.bot());
  SgElem const zero = id_of(index.key(graph), "the zero map");
  for (Elem a = 0; a < n; ++a) {
    graph[a] = a;
  }
  fs.identity = id_of(index.key(graph), "the identity");
  fs.semigroup = SemigroupBuilder::certified(m, std::move(table), std::move(star), zero);
  return fs;
}

ResiduatedMap sasaki_hom(const FiniteOml& L, Elem a) {
  std::vector<Elem> graph(L.size());
  for (Elem x = 0; x < L.size(); ++x) {
    graph[x] = L.meet(L.join(x, L.neg(a)), a);
  }
  auto r = residual_of(L, graph);
  if (!r) {
    throw Error(ErrorCode::RepresentationFailure,
                "Sasaki projection onto " + L.name(a) + " has no residual");
  }
  return {std::move(graph), std::move(*r)};
}

Representation verify_representation(const FoulisSemigroup& g, const ModalOml* modal) {
  auto const& L = g.host;
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::RepresentationFailure, what);
  };
  Representation rep;
  rep.pc = closed_projections(g.semigroup);
  auto const& pc = rep.pc;
  if (pc.carrier.size() != L.size()) {
    fail("P_c(G) has " + std::to_string(pc.carrier.size()) + " elements, L has " +
         std::to_string(L.size()));
  }
  rep.iso.map.resize(L.size());
  for (Elem a = 0; a < L.size(); ++a) {
    auto id = g.find(sasaki_hom(L, a).graph);
    if (!id) {
      fail("μ_" + L.name(a) + " is not in G(L)");
    }
    auto lid = pc.lattice_id(*id);
    if (!lid) {
      fail("μ_" + L.name(a) + " is not a closed projection");
    }
    rep.mu.push_back(*id);
    rep.iso.map[a] = *lid;
  }
  if (!is_isomorphism(L, pc.lattice, rep.iso.map)) {
    fail("a ↦ μ_a is not an orthomodular lattice isomorphism onto P_c(G)");
  }

  // Relabel P_c by the lattice elements it represents.
  RawLattice raw = pc.lattice.to_raw();
  for (Elem a = 0; a < L.size(); ++a) {
    raw.names[rep.iso.map[a]] = "mu_" + L.name(a);
  }
  rep.pc.lattice = make_lattice(raw, std::max(raw.size, kDefaultLatticeCap));

  if (modal) {
    rep.modal_pc = ModalOml::saturate(rep.pc.lattice);
    for (Elem a = 0; a < L.size(); ++a) {
      if (rep.iso.map[modal->box(a)] != rep.modal_pc->box(rep.iso.map[a])) {
        fail("box is not preserved at " + L.name(a));
      }
    }
  }
  return rep;
}

Representation verify_representation(const FiniteOml& L, std::size_t cap) {
  return verify_representation(foulis_semigroup(L, cap));
}

Representation verify_representation(const ModalOml& m, std::size_t cap) {
  return verify_representation(foulis_semigroup(m.base(), cap), &m);
}

}  // namespace omql
