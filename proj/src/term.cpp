#include "omql/term.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "omql/error.hpp"

namespace omql {

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Term Term::make(Op op, unsigned index, Term lhs, Term rhs) {
  std::size_t comp = 1;
  std::size_t h = mix(static_cast<std::size_t>(op), index);
  if (lhs) {
    comp += lhs.comp();
    h = mix(h, lhs.hash());
  }
  if (rhs) {
    comp += rhs.comp();
    h = mix(h, rhs.hash());
  }
  return Term(std::make_shared<const Node>(
      Node{op, index, std::move(lhs), std::move(rhs), comp, h}));
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) {
    return true;
  }
  if (!a.node_ || !b.node_ || a.hash() != b.hash() || a.comp() != b.comp() ||
      a.op() != b.op() || a.index() != b.index()) {
    return false;
  }
  return a.lhs() == b.lhs() && a.rhs() == b.rhs();
}

Term var(unsigned i) { return Term::make(Op::Var, i, {}, {}); }
Term meta(unsigned i) { return Term::make(Op::Meta, i, {}, {}); }
Term zero() { return Term::make(Op::Zero, 0, {}, {}); }
Term one() { return Term::make(Op::One, 0, {}, {}); }
Term neg(Term t) { return Term::make(Op::Neg, 0, std::move(t), {}); }
Term box(Term t) { return Term::make(Op::Box, 0, std::move(t), {}); }
Term conj(Term a, Term b) { return Term::make(Op::And, 0, std::move(a), std::move(b)); }
Term disj(Term a, Term b) { return Term::make(Op::Or, 0, std::move(a), std::move(b)); }
Term diamond(Term t) { return neg(box(neg(std::move(t)))); }
Term requiv(Term a, Term b) { return disj(conj(a, b), conj(neg(a), neg(b))); }

namespace {

void collect_vars(const Term& t, std::set<unsigned>& out) {
  switch (t.op()) {
    case Op::Var:
      out.insert(t.index());
      return;
    case Op::Meta:
    case Op::Zero:
    case Op::One:
      return;
    case Op::Neg:
    case Op::Box:
      collect_vars(t.arg(), out);
      return;
    case Op::And:
    case Op::Or:
      collect_vars(t.lhs(), out);
      collect_vars(t.rhs(), out);
      return;
  }
}

}  // namespace

unsigned max_var(const Term& t) {
  auto vars = variables(t);
  return vars.empty() ? 0 : vars.back();
}

std::vector<unsigned> variables(const Term& t) {
  std::set<unsigned> out;
  collect_vars(t, out);
  return {out.begin(), out.end()};
}

std::vector<unsigned> variables(std::span<const Term> terms) {
  std::set<unsigned> out;
  for (auto const& t : terms) {
    collect_vars(t, out);
  }
  return {out.begin(), out.end()};
}

bool has_meta(const Term& t) {
  switch (t.op()) {
    case Op::Meta:
      return true;
    case Op::Var:
    case Op::Zero:
    case Op::One:
      return false;
    case Op::Neg:
    case Op::Box:
      return has_meta(t.arg());
    case Op::And:
    case Op::Or:
      return has_meta(t.lhs()) || has_meta(t.rhs());
  }
  return false;
}

Term substitute_meta(const Term& t, std::span<const Term> subst) {
  switch (t.op()) {
    case Op::Meta:
      if (t.index() >= subst.size() || !subst[t.index()]) {
        throw Error(ErrorCode::MalformedScript, "substitution is missing a metavariable");
      }
      return subst[t.index()];
    case Op::Var:
    case Op::Zero:
    case Op::One:
      return t;
    case Op::Neg:
    case Op::Box:
      return Term::make(t.op(), 0, substitute_meta(t.arg(), subst), {});
    case Op::And:
    case Op::Or:
      return Term::make(t.op(), 0, substitute_meta(t.lhs(), subst),
                        substitute_meta(t.rhs(), subst));
  }
  return t;
}

// --- parser ---------------------------------------------------------------

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Term parse() {
    Term t = equiv();
    skip_space();
    if (pos_ != text_.size()) {
      fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    }
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::SyntaxError,
                "syntax error at position " + std::to_string(pos_ + 1) + ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  Term equiv() {
    Term t = disjunction();
    while (accept("R")) {
      t = requiv(t, disjunction());
    }
    return t;
  }

  Term disjunction() {
    Term t = conjunction();
    while (accept("|")) {
      t = disj(t, conjunction());
    }
    return t;
  }

  Term conjunction() {
    Term t = unary();
    while (accept("&")) {
      t = conj(t, unary());
    }
    return t;
  }

  Term unary() {
    if (accept("~")) {
      return neg(unary());
    }
    if (accept("[]")) {
      return box(unary());
    }
    if (accept("<>")) {
      return diamond(unary());
    }
    return atom();
  }

  Term atom() {
    skip_space();
    if (pos_ == text_.size()) {
      fail("unexpected end of input");
    }
    char const c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Term t = equiv();
      if (!accept(")")) {
        fail("expected ')'");
      }
      return t;
    }
    if (c == '0' || c == '1') {
      ++pos_;
      return c == '0' ? zero() : one();
    }
    if (c == 'x') {
      std::size_t const start = pos_;
      ++pos_;
      unsigned index = 0;
      std::size_t digits = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        index = index * 10 + static_cast<unsigned>(text_[pos_] - '0');
        ++pos_;
        ++digits;
        if (index > 100000) {
          pos_ = start;
          fail("variable index too large");
        }
      }
      if (digits == 0 || index == 0) {
        pos_ = start;
        fail("variables are x1, x2, ...");
      }
      return var(index);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Term parse_term(std::string_view text) { return Parser(text).parse(); }

// --- printer --------------------------------------------------------------

namespace {

// Precedence levels: R 0, | 1, & 2, prefix and atoms 3.
struct Printer {
  std::string out;

  static bool r_form(const Term& t) {
    if (t.op() != Op::Or || t.lhs().op() != Op::And || t.rhs().op() != Op::And) {
      return false;
    }
    auto const& l = t.lhs();
    auto const& r = t.rhs();
    return r.lhs().op() == Op::Neg && r.rhs().op() == Op::Neg &&
           r.lhs().arg() == l.lhs() && r.rhs().arg() == l.rhs();
  }

  static bool diamond_form(const Term& t) {
    return t.op() == Op::Neg && t.arg().op() == Op::Box && t.arg().arg().op() == Op::Neg;
  }

  static int level(const Term& t) {
    if (r_form(t)) {
      return 0;
    }
    switch (t.op()) {
      case Op::Or:
        return 1;
      case Op::And:
        return 2;
      default:
        return 3;
    }
  }

  void binary(const Term& a, const char* op, const Term& b, int lvl) {
    print(a, lvl);
    out += op;
    print(b, lvl + 1);
  }

  void print(const Term& t, int min_level) {
    bool const paren = level(t) < min_level;
    if (paren) {
      out += '(';
    }
    if (r_form(t)) {
      binary(t.lhs().lhs(), " R ", t.lhs().rhs(), 0);
    } else if (diamond_form(t)) {
      out += "<>";
      print(t.arg().arg().arg(), 3);
    } else {
      switch (t.op()) {
        case Op::Var:
          out += 'x';
          out += std::to_string(t.index());
          break;
        case Op::Meta:
          out += static_cast<char>('a' + t.index());
          break;
        case Op::Zero:
          out += '0';
          break;
        case Op::One:
          out += '1';
          break;
        case Op::Neg:
          out += '~';
          print(t.arg(), 3);
          break;
        case Op::Box:
          out += "[]";
          print(t.arg(), 3);
          break;
        case Op::And:
          binary(t.lhs(), " & ", t.rhs(), 2);
          break;
        case Op::Or:
          binary(t.lhs(), " | ", t.rhs(), 1);
          break;
      }
    }
    if (paren) {
      out += ')';
    }
  }
};

}  // namespace

std::string print_term(const Term& t) {
  Printer p;
  p.print(t, 0);
  return std::move(p.out);
}

std::string print_schema(const Term& t) { return print_term(t); }

// --- DAG ------------------------------------------------------------------

std::size_t TermDag::KeyHash::operator()(const Key& k) const noexcept {
  std::size_t h = mix(static_cast<std::size_t>(k.op), k.index);
  h = mix(h, k.lhs);
  return mix(h, k.rhs);
}

std::uint32_t TermDag::add(Op op, unsigned index, std::uint32_t lhs, std::uint32_t rhs) {
  Key const key{op, index, lhs, rhs};
  auto [it, inserted] = ids_.try_emplace(key, static_cast<std::uint32_t>(nodes_.size()));
  if (inserted) {
    nodes_.push_back({op, index, lhs, rhs});
  }
  return it->second;
}

std::uint32_t TermDag::intern(const Term& t) {
  switch (t.op()) {
    case Op::Var:
    case Op::Meta:
      return add(t.op(), t.index());
    case Op::Zero:
    case Op::One:
      return add(t.op(), 0);
    case Op::Neg:
    case Op::Box:
      return add(t.op(), 0, intern(t.arg()));
    case Op::And:
    case Op::Or: {
      auto const l = intern(t.lhs());
      auto const r = intern(t.rhs());
      return add(t.op(), 0, l, r);
    }
  }
  return 0;
}

Term TermDag::term(std::uint32_t id) const {
  auto const& n = nodes_[id];
  switch (n.op) {
    case Op::Var:
    case Op::Meta:
    case Op::Zero:
    case Op::One:
      return Term::make(n.op, n.index, {}, {});
    case Op::Neg:
    case Op::Box:
      return Term::make(n.op, 0, term(n.lhs), {});
    case Op::And:
    case Op::Or:
      return Term::make(n.op, 0, term(n.lhs), term(n.rhs));
  }
  return {};
}

TermEnumeration enumerate_terms(std::size_t max_comp, unsigned vars) {
  TermEnumeration result;
  auto& dag = result.dag;
  std::vector<std::vector<std::uint32_t>> by_comp(max_comp + 1);
  if (max_comp == 0) {
    return result;
  }
  for (unsigned i = 1; i <= vars; ++i) {
    by_comp[1].push_back(dag.add(Op::Var, i));
  }
  by_comp[1].push_back(dag.add(Op::Zero, 0));
  by_comp[1].push_back(dag.add(Op::One, 0));
  for (std::size_t c = 2; c <= max_comp; ++c) {
    for (Op op : {Op::Neg, Op::Box}) {
      for (auto child : by_comp[c - 1]) {
        by_comp[c].push_back(dag.add(op, 0, child));
      }
    }
    for (Op op : {Op::And, Op::Or}) {
      for (std::size_t lc = 1; lc + 1 < c; ++lc) {
        std::size_t const rc = c - 1 - lc;
        for (auto l : by_comp[lc]) {
          for (auto r : by_comp[rc]) {
            by_comp[c].push_back(dag.add(op, 0, l, r));
          }
        }
      }
    }
  }
  for (auto const& level : by_comp) {
    result.roots.insert(result.roots.end(), level.begin(), level.end());
  }
  return result;
}

}  // namespace omql
