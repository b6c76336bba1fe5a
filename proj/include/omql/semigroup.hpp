#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "omql/error.hpp"
#include "omql/lattice.hpp"

namespace omql {

using SgElem = std::uint32_t;
using ElemSet = boost::dynamic_bitset<>;

struct RawStarSemigroup {
  std::size_t size = 0;
  std::vector<SgElem> mul;  // row-major, mul[x * size + y] = x·y
  std::vector<SgElem> star;
  SgElem zero = 0;
};

class StarSemigroup;
class SemigroupValidation;

struct SemigroupDiagnostic {
  ErrorCode code;
  std::vector<SgElem> witness;
  std::string message;
};

class StarSemigroup {
 public:
  std::size_t size() const noexcept { return n_; }
  SgElem mul(SgElem x, SgElem y) const { return table_[std::size_t{x} * n_ + y]; }
  SgElem star(SgElem x) const { return star_[x]; }
  SgElem zero() const noexcept { return zero_; }

  // x·G as a set.
  ElemSet right_ideal(SgElem x) const;
  RawStarSemigroup to_raw() const;

 private:
  friend struct SemigroupBuilder;
  friend SemigroupValidation validate_star_semigroup(const RawStarSemigroup& raw);

  std::size_t n_ = 0;
  std::vector<std::uint16_t> table_;
  std::vector<SgElem> star_;
  SgElem zero_ = 0;
};

class SemigroupValidation {
 public:
  std::optional<StarSemigroup> semigroup;
  std::vector<SemigroupDiagnostic> diagnostics;

  bool ok() const noexcept { return semigroup.has_value(); }
};

// Exhaustive check of associativity, 0·x = x·0 = 0, x** = x and
// (x·y)* = y*·x*.  The first failing tuple is reported per law.
SemigroupValidation validate_star_semigroup(const RawStarSemigroup& raw);
StarSemigroup make_star_semigroup(const RawStarSemigroup& raw);

// Construction path for tables whose associativity is certified elsewhere
// (Foulis semigroups: the table is composition of distinct maps).  The zero
// and star laws are still checked exhaustively.
struct SemigroupBuilder {
  static StarSemigroup certified(std::size_t n, std::vector<std::uint16_t> table,
                                 std::vector<SgElem> star, SgElem zero);
};

// e = e* = e·e
std::vector<SgElem> projections(const StarSemigroup& g);
// {y : x·y = 0}
ElemSet right_annihilator(const StarSemigroup& g, SgElem x);

// P_c(G): element i of `lattice` is closed projection carrier[i].
struct ClosedProjectionLattice {
  std::vector<SgElem> carrier;
  FiniteOml lattice;
  std::vector<SgElem> prime;       // x ↦ x′ for every x in G
  std::vector<SgElem> witness;     // carrier[i] = witness[i]′
  std::vector<std::int32_t> index;  // G element ↦ lattice id, -1 off the carrier
  std::vector<ElemSet> ideals;     // carrier[i]·G

  std::optional<Elem> lattice_id(SgElem e) const {
    return index[e] < 0 ? std::nullopt : std::optional<Elem>(static_cast<Elem>(index[e]));
  }
};

// Finds x′ for every x by comparing {x}^r with the ideals e·G of the
// projections.  Orders by e·f = e and cross-checks against e·G ⊆ f·G; meet
// e1·(e2′·e1)′ and join (e1′∧e2′)′ are compared with the order-derived
// operations.  Throws NotBaer (with the witness x in the message),
// NonUniqueProjection, or BadTables when a cross-check disagrees.
ClosedProjectionLattice closed_projections(const StarSemigroup& g);

// Text dump: `bsg n`, `zero i`, `star i j` lines, `mul i j k` lines.
void write_semigroup(std::ostream& out, const StarSemigroup& g);
RawStarSemigroup parse_semigroup(std::istream& in, const std::string& source = "<input>");

}  // namespace omql
