#include "omql/proof.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <map>
#include <regex>
#include <sstream>

#include "omql/axioms.hpp"
#include "omql/error.hpp"

namespace omql {

namespace {

std::string trim(std::string_view s) {
  auto const first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  auto const last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

[[noreturn]] void malformed(const std::string& source, std::size_t line, const std::string& what) {
  throw Error(ErrorCode::MalformedScript, source + ":" + std::to_string(line) + ": " + what);
}

Term parse_at(const std::string& text, const std::string& source, std::size_t line) {
  try {
    return parse_term(text);
  } catch (const Error& e) {
    throw Error(e.code(), source + ":" + std::to_string(line) + ": " + e.what());
  }
}

std::size_t parse_index(const std::string& word, const std::string& source, std::size_t line) {
  if (word.empty() || !std::all_of(word.begin(), word.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c));
      })) {
    malformed(source, line, "expected a line number, got '" + word + "'");
  }
  return std::stoul(word);
}

Justification parse_justification(const std::string& text, const std::string& source,
                                  std::size_t line) {
  std::istringstream words(text);
  std::string kind;
  words >> kind;
  Justification why;
  if (kind == "premise") {
    why.rule = Rule::Premise;
  } else if (kind == "DS" || kind == "N") {
    why.rule = kind == "DS" ? Rule::DS : Rule::N;
    std::string i;
    std::string j;
    words >> i;
    why.first = parse_index(i, source, line);
    if (why.rule == Rule::DS) {
      words >> j;
      why.second = parse_index(j, source, line);
    }
  } else if (kind == "axiom") {
    why.rule = Rule::Axiom;
    if (!(words >> why.axiom)) {
      malformed(source, line, "axiom needs a schema id");
    }
    std::string rest;
    std::getline(words, rest);
    // Terms never contain '=', so the keys split the remainder cleanly.
    static const std::regex key(R"((^|\s)([abc])=)");
    std::vector<std::pair<char, std::size_t>> keys;
    std::vector<std::pair<std::size_t, std::size_t>> spans;
    for (auto it = std::sregex_iterator(rest.begin(), rest.end(), key);
         it != std::sregex_iterator(); ++it) {
      keys.emplace_back((*it)[2].str()[0], static_cast<std::size_t>(it->position(2)));
      spans.emplace_back(static_cast<std::size_t>(it->position(0)),
                         static_cast<std::size_t>(it->position(0) + it->length(0)));
    }
    if (keys.empty() && !trim(rest).empty()) {
      malformed(source, line, "substitution entries look like a=<term>");
    }
    if (!keys.empty() && !trim(rest.substr(0, spans[0].first)).empty()) {
      malformed(source, line, "unexpected text before substitution");
    }
    for (std::size_t k = 0; k < keys.size(); ++k) {
      std::size_t const begin = spans[k].second;
      std::size_t const end = k + 1 < keys.size() ? spans[k + 1].first : rest.size();
      char const name = keys[k].first;
      if (std::any_of(why.subst.begin(), why.subst.end(),
                      [&](auto const& p) { return p.first == name; })) {
        malformed(source, line, std::string("metavariable ") + name + " given twice");
      }
      why.subst.emplace_back(name, parse_at(rest.substr(begin, end - begin), source, line));
    }
    return why;
  } else {
    malformed(source, line, "unknown justification '" + kind + "'");
  }
  std::string extra;
  if (words >> extra) {
    malformed(source, line, "unexpected '" + extra + "'");
  }
  return why;
}

void check_structure(const ProofScript& script, const std::string& source) {
  std::map<std::size_t, std::size_t> position;
  for (auto const& line : script.lines) {
    if (!position.empty() && line.index <= position.rbegin()->first) {
      malformed(source, line.source_line, "line numbers must increase strictly");
    }
    auto refers = [&](std::size_t target) {
      if (target >= line.index) {
        malformed(source, line.source_line,
                  "reference to line " + std::to_string(target) + " does not point backward");
      }
      if (!position.count(target)) {
        malformed(source, line.source_line,
                  "reference to missing line " + std::to_string(target));
      }
    };
    if (line.why.rule == Rule::DS) {
      refers(line.why.first);
      refers(line.why.second);
    } else if (line.why.rule == Rule::N) {
      refers(line.why.first);
    }
    position[line.index] = position.size();
  }
}

}  // namespace

ProofScript parse_proof(std::istream& in, const std::string& source) {
  ProofScript script;
  static const std::regex numbered(R"(^\s*(\d+)\s*\.\s*(.*)$)");
  bool in_theory = false;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) {
      raw.erase(hash);
    }
    std::string const line = trim(raw);
    if (line.empty()) {
      continue;
    }
    std::smatch m;
    if (line == "theory:") {
      if (!script.lines.empty()) {
        malformed(source, lineno, "theory block must precede the proof");
      }
      in_theory = true;
    } else if (line.rfind("goal:", 0) == 0) {
      in_theory = false;
      script.goal = parse_at(line.substr(5), source, lineno);
    } else if (std::regex_match(line, m, numbered)) {
      in_theory = false;
      std::string const body = m[2].str();
      auto const semi = body.rfind(';');
      if (semi == std::string::npos) {
        malformed(source, lineno, "missing '; <justification>'");
      }
      ProofLine pl;
      pl.index = std::stoul(m[1].str());
      pl.source_line = lineno;
      pl.term = parse_at(body.substr(0, semi), source, lineno);
      pl.why = parse_justification(trim(body.substr(semi + 1)), source, lineno);
      script.lines.push_back(std::move(pl));
    } else if (in_theory) {
      script.theory.push_back(parse_at(line, source, lineno));
    } else {
      malformed(source, lineno, "expected a numbered proof line");
    }
  }
  check_structure(script, source);
  return script;
}

ProofScript read_proof_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::LoadError, path + ": cannot open");
  }
  return parse_proof(in, path);
}

ProofVerdict check_proof(const ProofScript& script, bool fill) {
  check_structure(script, "<script>");
  ProofVerdict verdict;
  verdict.accepted = true;
  std::map<std::size_t, Term> terms;
  for (auto const& line : script.lines) {
    LineVerdict lv{line.index, false, {}};
    auto const& t = line.term;
    auto const& why = line.why;
    switch (why.rule) {
      case Rule::Premise:
        lv.ok = std::find(script.theory.begin(), script.theory.end(), t) !=
                script.theory.end();
        if (!lv.ok) {
          lv.reason = "not a member of the theory";
        }
        break;
      case Rule::N:
        lv.ok = t == box(terms.at(why.first));
        if (!lv.ok) {
          lv.reason = "N " + std::to_string(why.first) + ": term is not []t" +
                      std::to_string(why.first);
        }
        break;
      case Rule::DS: {
        Term const& premise = terms.at(why.first);
        Term const& major = terms.at(why.second);
        lv.ok = major.op() == Op::Or && major.lhs().op() == Op::Neg &&
                major.lhs().arg() == premise && major.rhs() == t;
        if (!lv.ok) {
          lv.reason = "DS " + std::to_string(why.first) + " " + std::to_string(why.second) +
                      ": line " + std::to_string(why.second) + " is not ~t" +
                      std::to_string(why.first) + " | t" + std::to_string(line.index);
        }
        break;
      }
      case Rule::Axiom: {
        Schema const* schema = find_schema(why.axiom);
        if (!schema) {
          lv.reason = "unknown axiom " + why.axiom;
          break;
        }
        std::vector<Term> subst(schema->arity);
        bool bad_key = false;
        for (auto const& [name, value] : why.subst) {
          unsigned const k = static_cast<unsigned>(name - 'a');
          if (k >= schema->arity) {
            bad_key = true;
          } else {
            subst[k] = value;
          }
        }
        if (bad_key) {
          lv.reason = why.axiom + " has no metavariable named in the substitution";
          break;
        }
        if (why.subst.empty() && fill) {
          if (auto found = match_schema(*schema, t)) {
            lv.ok = true;
          } else {
            lv.reason = "term does not instantiate " + why.axiom;
          }
          break;
        }
        if (why.subst.size() != schema->arity) {
          lv.reason = "substitution for " + why.axiom + " must bind " +
                      std::to_string(schema->arity) + " metavariable(s)";
          break;
        }
        lv.ok = instantiate(*schema, subst) == t;
        if (!lv.ok) {
          lv.reason = "term is not the stated instance of " + why.axiom;
        }
        break;
      }
    }
    verdict.accepted = verdict.accepted && lv.ok;
    verdict.lines.push_back(std::move(lv));
    terms.emplace(line.index, t);
  }
  if (!script.lines.empty()) {
    verdict.conclusion = script.lines.back().term;
  }
  if (script.lines.empty()) {
    verdict.accepted = false;
  }
  if (script.goal && verdict.conclusion && !(*script.goal == *verdict.conclusion)) {
    verdict.goal_met = false;
    verdict.accepted = false;
  }
  return verdict;
}

std::string format_justification(const Justification& why) {
  switch (why.rule) {
    case Rule::Premise:
      return "premise";
    case Rule::N:
      return "N " + std::to_string(why.first);
    case Rule::DS:
      return "DS " + std::to_string(why.first) + " " + std::to_string(why.second);
    case Rule::Axiom: {
      std::string out = "axiom " + why.axiom;
      for (auto const& [name, value] : why.subst) {
        out += ' ';
        out += name;
        out += '=';
        out += print_term(value);
      }
      return out;
    }
  }
  return {};
}

}  // namespace omql
