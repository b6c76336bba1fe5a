#pragma once

#include <optional>
#include <vector>

#include "omql/lattice.hpp"
#include "omql/modal.hpp"
#include "omql/semigroup.hpp"

namespace omql {

inline constexpr std::size_t kDefaultFoulisCap = 8;

// An order endomap given by its graph, with residual φ♮.
struct ResiduatedMap {
  std::vector<Elem> graph;
  std::vector<Elem> residual;

  bool operator==(const ResiduatedMap&) const = default;
};

// φ♮(y) = ⋁{x : φ(x) ≤ y}, or nullopt when φ has no residual.  Checks that
// both maps are monotone and φ∘φ♮ ≤ id ≤ φ♮∘φ.
std::optional<std::vector<Elem>> residual_of(const FiniteOml& L, const std::vector<Elem>& graph);

// Join-preserving maps with φ(0) = 0, enumerated through their values on the
// join-irreducibles.  Sorted by graph.  Throws CapExceeded when |L| > cap.
std::vector<ResiduatedMap> residuated_endomaps(const FiniteOml& L,
                                               std::size_t cap = kDefaultFoulisCap);

// Every monotone self-map, kept when a monotone ψ with φ∘ψ ≤ id ≤ ψ∘φ
// exists (found by search).  Sorted by graph.  Throws CapExceeded for |L| > 6.
std::vector<ResiduatedMap> residuated_endomaps_oracle(const FiniteOml& L);

// G(L): semigroup element i is maps[i]; x·y = x∘y (y applied first),
// x*(a) = ¬x♮(¬a), zero is the constant-0 map.
struct FoulisSemigroup {
  FiniteOml host;
  std::vector<ResiduatedMap> maps;
  StarSemigroup semigroup;
  SgElem identity = 0;

  std::optional<SgElem> find(const std::vector<Elem>& graph) const;
};

FoulisSemigroup foulis_semigroup(const FiniteOml& L, std::size_t cap = kDefaultFoulisCap);

// μ_a(x) = (x ∨ ¬a) ∧ a
ResiduatedMap sasaki_hom(const FiniteOml& L, Elem a);

struct Representation {
  std::vector<SgElem> mu;    // a ↦ semigroup id of μ_a
  LatticeIso iso;            // a ↦ P_c lattice id
  ClosedProjectionLattice pc;
  std::optional<ModalOml> modal_pc;  // saturated P_c when the source has a box
};

// f(a) = μ_a onto P_c(G(L)): bijective, preserves ∧ ∨ ¬ 0 1, and □ when a
// box is given.  Throws RepresentationFailure.
Representation verify_representation(const FoulisSemigroup& g, const ModalOml* modal = nullptr);
Representation verify_representation(const FiniteOml& L, std::size_t cap = kDefaultFoulisCap);
Representation verify_representation(const ModalOml& m, std::size_t cap = kDefaultFoulisCap);

}  // namespace omql
