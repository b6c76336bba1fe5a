#include <charconv>

#include "omql/lattice.hpp"

namespace omql {

namespace {

std::string atom_name(unsigned i) {
  if (i < 26) {
    return std::string(1, static_cast<char>('a' + i));
  }
  return "a" + std::to_string(i);
}

unsigned parse_unsigned(std::string_view text, const char* what) {
  unsigned value = 0;
  auto const* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc{} || ptr != end) {
    throw Error(ErrorCode::BadParam,
                std::string(what) + ": expected a number, got '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

FiniteOml builtin_boolean(unsigned atoms) {
  if (atoms == 0) {
    throw Error(ErrorCode::BadParam, "boolean(0) is the degenerate one-element lattice");
  }
  if (atoms > 6) {
    throw Error(ErrorCode::BadParam, "boolean(k) needs k <= 6 (64 elements)");
  }
  static constexpr char kLetters[] = "pqrstu";
  std::size_t const n = std::size_t{1} << atoms;
  RawLattice raw;
  raw.size = n;
  for (std::size_t mask = 0; mask < n; ++mask) {
    std::string name;
    if (mask == 0) {
      name = "0";
    } else if (mask == n - 1) {
      name = "1";
    } else {
      for (unsigned i = 0; i < atoms; ++i) {
        if (mask & (std::size_t{1} << i)) {
          name += kLetters[i];
        }
      }
    }
    raw.names.push_back(name);
    raw.neg.push_back(static_cast<Elem>((n - 1) ^ mask));
    for (unsigned i = 0; i < atoms; ++i) {
      auto const bit = std::size_t{1} << i;
      if (!(mask & bit)) {
        raw.leq.emplace_back(static_cast<Elem>(mask), static_cast<Elem>(mask | bit));
      }
    }
  }
  raw.bot = 0;
  raw.top = static_cast<Elem>(n - 1);
  return make_lattice(raw);
}

FiniteOml builtin_mo(unsigned blocks) {
  if (blocks == 0) {
    throw Error(ErrorCode::BadParam, "mo(0) has no blocks");
  }
  if (2 * std::size_t{blocks} + 2 > kDefaultLatticeCap) {
    throw Error(ErrorCode::BadParam, "mo(n) needs 2n+2 <= 64");
  }
  RawLattice raw;
  raw.size = 2 * blocks + 2;
  Elem const top = static_cast<Elem>(raw.size - 1);
  raw.names.push_back("0");
  raw.neg.push_back(top);
  for (unsigned i = 0; i < blocks; ++i) {
    Elem const x = static_cast<Elem>(2 * i + 1);
    raw.names.push_back(atom_name(i));
    raw.names.push_back("~" + atom_name(i));
    raw.neg.push_back(x + 1);
    raw.neg.push_back(x);
    for (Elem e : {x, static_cast<Elem>(x + 1)}) {
      raw.leq.emplace_back(0, e);
      raw.leq.emplace_back(e, top);
    }
  }
  raw.names.push_back("1");
  raw.neg.push_back(0);
  raw.bot = 0;
  raw.top = top;
  return make_lattice(raw);
}

FiniteOml builtin(std::string_view name, std::span<const std::string> params) {
  auto want = [&](std::size_t count) {
    if (params.size() != count) {
      throw Error(ErrorCode::BadParam, std::string(name) + " takes " +
                                           std::to_string(count) + " parameter(s)");
    }
  };
  if (name == "boolean") {
    want(1);
    return builtin_boolean(parse_unsigned(params[0], "boolean"));
  }
  if (name == "mo") {
    want(1);
    return builtin_mo(parse_unsigned(params[0], "mo"));
  }
  if (name == "chain2") {
    want(0);
    return builtin_boolean(1);
  }
  if (name == "product") {
    want(2);
    return direct_product(builtin_by_name(params[0]), builtin_by_name(params[1]));
  }
  throw Error(ErrorCode::UnknownBuiltin, "unknown builtin '" + std::string(name) + "'");
}

namespace {

FiniteOml single_builtin(std::string_view token) {
  if (token == "chain2") {
    return builtin_boolean(1);
  }
  if (token.starts_with("mo") && token.size() > 2) {
    return builtin_mo(parse_unsigned(token.substr(2), "mo"));
  }
  if (token.starts_with("b") && token.size() > 1) {
    unsigned const size = parse_unsigned(token.substr(1), "boolean");
    unsigned atoms = 0;
    while ((1u << atoms) < size && atoms < 31) {
      ++atoms;
    }
    if ((1u << atoms) != size) {
      throw Error(ErrorCode::BadParam, "b<n> needs n to be a power of two");
    }
    return builtin_boolean(atoms);
  }
  throw Error(ErrorCode::UnknownBuiltin, "unknown builtin '" + std::string(token) + "'");
}

}  // namespace

FiniteOml builtin_by_name(std::string_view spec) {
  std::optional<FiniteOml> result;
  while (true) {
    auto const cut = spec.find('x');
    auto const token = spec.substr(0, cut);
    auto factor = single_builtin(token);
    result = result ? direct_product(*result, factor) : std::move(factor);
    if (cut == std::string_view::npos) {
      break;
    }
    spec.remove_prefix(cut + 1);
  }
  return std::move(*result);
}

}  // namespace omql
