#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "omql/foulis.hpp"
#include "omql/modal.hpp"
#include "omql/term.hpp"

namespace omql {

// Negation clause: Star reads "g forces α ⟹ g*·x = 0", Prime reads
// "g forces α ⟹ g′·x = 0".
enum class NegationReading { Star, Prime };
// Box clause: Central requires the witness z to lie in the center of P_c;
// AnyClosed drops that requirement (negative control only).
enum class BoxClause { Central, AnyClosed };

struct ForcingOptions {
  NegationReading negation = NegationReading::Star;
  BoxClause box = BoxClause::Central;
};

// G(L) together with the P_c data forcing needs.  Shared by every frame
// over the same semigroup.
class FrameStructure {
 public:
  explicit FrameStructure(const ModalOml& source, std::size_t cap = kDefaultFoulisCap);

  const ModalOml& source() const noexcept { return source_; }
  const FoulisSemigroup& foulis() const noexcept { return foulis_; }
  const StarSemigroup& semigroup() const noexcept { return foulis_.semigroup; }
  const Representation& representation() const noexcept { return rep_; }
  // Saturated P_c(G); element i is the closed projection carrier()[i].
  const ModalOml& pc() const noexcept { return *rep_.modal_pc; }
  const std::vector<SgElem>& carrier() const noexcept { return rep_.pc.carrier; }
  std::size_t size() const noexcept { return semigroup().size(); }

  // e·G for the closed projection with P_c id i.
  const ElemSet& ideal(Elem i) const { return rep_.pc.ideals[i]; }
  // P_c id of the projection whose ideal is the annihilator used by the
  // negation clause for g: (g*)′ or (g′)′.
  Elem negation_class(SgElem g, NegationReading reading) const {
    return reading == NegationReading::Star ? star_class_[g] : prime_class_[g];
  }
  // Elements g with negation_class(g, reading) == i.
  const ElemSet& class_members(Elem i, NegationReading reading) const {
    return reading == NegationReading::Star ? star_members_[i] : prime_members_[i];
  }
  // P_c ids admissible as box witnesses under the clause.
  const std::vector<Elem>& box_witnesses(BoxClause clause) const {
    return clause == BoxClause::Central ? central_ : all_closed_;
  }

 private:
  ModalOml source_;
  FoulisSemigroup foulis_;
  Representation rep_;
  std::vector<Elem> star_class_;
  std::vector<Elem> prime_class_;
  std::vector<ElemSet> star_members_;
  std::vector<ElemSet> prime_members_;
  std::vector<Elem> central_;
  std::vector<Elem> all_closed_;
};

// ⟨G, u⟩ with u(x_i) = u[i - 1], a P_c id.
struct ModalFrame {
  std::shared_ptr<const FrameStructure> structure;
  std::vector<Elem> u;

  // Throws UnknownVariable.
  Elem assignment(unsigned var) const;
};

// u = f ∘ v with f(a) = μ_a.
ModalFrame frame_from_lattice(std::shared_ptr<const FrameStructure> structure,
                              const Valuation& v);
ModalFrame frame_from_lattice(const ModalOml& lattice, const Valuation& v,
                              std::size_t cap = kDefaultFoulisCap);

// Forcing straight from the clauses: products are read off the Cayley table
// and the quantifiers run over all of G.  Meant for small frames and tests.
bool forces(const ModalFrame& frame, SgElem x, const Term& t, ForcingOptions options = {});

// |t| computed with right-ideal bitsets: negation intersects the ideals
// {g*}^r = (g*)′·G over g in |α|, box unions z·G over admissible z in |α|.
ElemSet truth_set(const ModalFrame& frame, const Term& t, ForcingOptions options = {});

// Truth sets of every node of the dag, children first.
std::vector<ElemSet> truth_sets(const ModalFrame& frame, const TermDag& dag,
                                ForcingOptions options = {});

// Values u(node) in P_c for every node of the dag.
std::vector<Elem> pc_values(const ModalFrame& frame, const TermDag& dag);

// Items P1 (u(t∧s)·G = u(t)·G ∩ u(s)·G), P2 (u(¬t)·G = {x : ∀y ∈ u(t)·G,
// y*·x = 0}), P3 (u(□t)·G = ⋃{z·G : z central, z ≤ u(t)}).
Report verify_truth_set_clauses(const ModalFrame& frame, const Term& t, const Term& s);

struct IdentityResult {
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::optional<Term> first_failure;

  bool pass() const noexcept { return failures == 0; }
};

// |α| = u(α)·G for every given term.
IdentityResult verify_truth_set_identity(const ModalFrame& frame, std::span<const Term> terms,
                           ForcingOptions options = {});
IdentityResult verify_truth_set_identity(const ModalFrame& frame, const TermEnumeration& terms,
                           ForcingOptions options = {});

// Every valuation of vars into P_c when there are at most max_frames of
// them, otherwise max_frames valuations drawn with the seed.
std::vector<ModalFrame> generate_frames(std::shared_ptr<const FrameStructure> structure,
                                        const std::vector<unsigned>& vars, std::uint64_t seed,
                                        std::size_t max_frames = 4096);

struct FrameConsequenceResult {
  bool holds = true;
  std::optional<std::size_t> counterframe;
};

// ⊨_F T means every premise has truth set G.
FrameConsequenceResult frame_consequence(std::span<const Term> theory, const Term& t,
                                         std::span<const ModalFrame> frames,
                                         ForcingOptions options = {});

}  // namespace omql
