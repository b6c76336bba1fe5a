#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "omql/lattice.hpp"

namespace omql {

// Text format, one directive per line, `#` starts a comment:
//   oml <n>
//   elem <id> <name>        (every element, names without whitespace)
//   leq <i> <j>             (generating pairs; closure is taken)
//   neg <i> <j>             (exactly one per element)
//   bot <i>
//   top <i>
//   box <i> <j>             (optional; when present, one per element)
struct LatticeFile {
  RawLattice raw;
  std::vector<Elem> box;  // empty when the file has no box lines
};

// Throws LoadError citing the line number.  The tables are not validated.
LatticeFile parse_lattice_file(std::istream& in, const std::string& source = "<input>");
LatticeFile read_lattice_file(const std::string& path);

// Emits the covering pairs of the order.
void write_lattice(std::ostream& out, const FiniteOml& lattice,
                   const std::vector<Elem>& box = {});

}  // namespace omql
