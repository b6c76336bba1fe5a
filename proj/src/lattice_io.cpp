#include "omql/lattice_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace omql {

namespace {

[[noreturn]] void load_error(const std::string& source, std::size_t line,
                             const std::string& what) {
  throw Error(ErrorCode::LoadError, source + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

LatticeFile parse_lattice_file(std::istream& in, const std::string& source) {
  LatticeFile file;
  auto& raw = file.raw;
  std::optional<std::size_t> size;
  std::vector<char> named;
  std::vector<char> negated;
  std::vector<char> boxed;
  bool have_bot = false;
  bool have_top = false;
  std::string line;
  std::size_t lineno = 0;

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
    auto read_id = [&]() -> Elem {
      long long value = -1;
      if (!(words >> value)) {
        load_error(source, lineno, "expected an element id after '" + key + "'");
      }
      if (value < 0 || static_cast<std::size_t>(value) >= *size) {
        load_error(source, lineno, "element id " + std::to_string(value) + " out of range");
      }
      return static_cast<Elem>(value);
    };
    auto finish = [&]() {
      std::string extra;
      if (words >> extra) {
        load_error(source, lineno, "unexpected '" + extra + "'");
      }
    };

    if (key == "oml") {
      long long n = 0;
      if (size || !(words >> n) || n < 0 || n > 65535) {
        load_error(source, lineno, "bad or repeated header");
      }
      finish();
      size = static_cast<std::size_t>(n);
      raw.size = *size;
      raw.names.assign(*size, "");
      raw.neg.assign(*size, 0);
      named.assign(*size, 0);
      negated.assign(*size, 0);
      continue;
    }
    if (!size) {
      load_error(source, lineno, "missing 'oml <n>' header");
    }
    if (key == "elem") {
      Elem const id = read_id();
      std::string name;
      if (!(words >> name)) {
        load_error(source, lineno, "elem needs a name");
      }
      finish();
      if (named[id]) {
        load_error(source, lineno, "element " + std::to_string(id) + " declared twice");
      }
      named[id] = 1;
      raw.names[id] = name;
    } else if (key == "leq") {
      Elem const a = read_id();
      Elem const b = read_id();
      finish();
      raw.leq.emplace_back(a, b);
    } else if (key == "neg") {
      Elem const a = read_id();
      Elem const b = read_id();
      finish();
      if (negated[a]) {
        load_error(source, lineno, "negation of " + std::to_string(a) + " given twice");
      }
      negated[a] = 1;
      raw.neg[a] = b;
    } else if (key == "box") {
      Elem const a = read_id();
      Elem const b = read_id();
      finish();
      if (boxed.empty()) {
        boxed.assign(*size, 0);
        file.box.assign(*size, 0);
      }
      if (boxed[a]) {
        load_error(source, lineno, "box of " + std::to_string(a) + " given twice");
      }
      boxed[a] = 1;
      file.box[a] = b;
    } else if (key == "bot" || key == "top") {
      Elem const a = read_id();
      finish();
      bool& seen = key == "bot" ? have_bot : have_top;
      if (seen) {
        load_error(source, lineno, key + " given twice");
      }
      seen = true;
      (key == "bot" ? raw.bot : raw.top) = a;
    } else {
      load_error(source, lineno, "unknown directive '" + key + "'");
    }
  }
  ++lineno;
  if (!size) {
    load_error(source, lineno, "missing 'oml <n>' header");
  }
  for (std::size_t i = 0; i < *size; ++i) {
    if (!named[i]) {
      load_error(source, lineno, "element " + std::to_string(i) + " has no elem line");
    }
    if (!negated[i]) {
      load_error(source, lineno, "element " + std::to_string(i) + " has no neg line");
    }
    if (!boxed.empty() && !boxed[i]) {
      load_error(source, lineno, "element " + std::to_string(i) + " has no box line");
    }
  }
  if (!have_bot || !have_top) {
    load_error(source, lineno, "bot and top are required");
  }
  return file;
}

LatticeFile read_lattice_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::LoadError, path + ": cannot open");
  }
  return parse_lattice_file(in, path);
}

void write_lattice(std::ostream& out, const FiniteOml& lattice, const std::vector<Elem>& box) {
  out << "oml " << lattice.size() << '\n';
  for (Elem a = 0; a < lattice.size(); ++a) {
    out << "elem " << a << ' ' << lattice.name(a) << '\n';
  }
  for (auto const& [a, b] : lattice.covers()) {
    out << "leq " << a << ' ' << b << '\n';
  }
  for (Elem a = 0; a < lattice.size(); ++a) {
    out << "neg " << a << ' ' << lattice.neg(a) << '\n';
  }
  out << "bot " << lattice.bot() << '\n';
  out << "top " << lattice.top() << '\n';
  for (Elem a = 0; a < box.size(); ++a) {
    out << "box " << a << ' ' << box[a] << '\n';
  }
}

}  // namespace omql
