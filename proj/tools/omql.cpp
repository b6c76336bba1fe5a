#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "omql/axioms.hpp"
#include "omql/error.hpp"
#include "omql/foulis.hpp"
#include "omql/kripke.hpp"
#include "omql/lattice.hpp"
#include "omql/lattice_io.hpp"
#include "omql/modal.hpp"
#include "omql/proof.hpp"
#include "omql/semantics.hpp"
#include "omql/semigroup.hpp"
#include "omql/suite.hpp"
#include "omql/term.hpp"

#ifndef OMQL_CORPUS_DIR
#define OMQL_CORPUS_DIR "corpus/proofs"
#endif

using namespace omql;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

const char* const kFormatsHelp = R"(Terms:
  t ::= t R t | t '|' t | t & t | ~t | []t | <>t | x1 | x2 ... | 0 | 1 | (t)
  R binds loosest, then |, then &; prefix operators bind tightest.
  a R b abbreviates (a & b) | (~a & ~b); <>t abbreviates ~[]~t.

Lattice files (.oml), one directive per line, '#' comments:
  oml <n>          elem <id> <name>     leq <i> <j>     neg <i> <j>
  bot <i>          top <i>              box <i> <j>   (box optional)
  A lattice argument may also be builtin:<name>, e.g. builtin:mo2,
  builtin:b8, builtin:mo2xb2.

Proof scripts (.proof):
  theory:            followed by one premise term per line
  goal: <term>       optional
  k. <term> ; premise | axiom A12 a=<t> b=<t> | DS i j | N i

Semigroup files: bsg <n>, zero <i>, star <i> <j>, mul <i> <j> <k>.

Model library: comma-separated builtin names or .oml paths; the default
comes from OMQL_LIBRARY, else b2,b4,b8,mo2,mo3,mo2xb2.

Exit codes: 0 pass, 1 verification failure, 2 usage or format error.)";

struct Globals {
  unsigned var_cap = 3;
  std::size_t foulis_cap = 0;  // 0: command default
  std::string format = "text";
  std::uint64_t seed = 7;
  unsigned jobs = 1;
  std::string models;
  std::string negation = "star";

  bool machine() const { return format == "machine"; }
  NegationReading reading() const {
    return negation == "prime" ? NegationReading::Prime : NegationReading::Star;
  }
  std::size_t cap(std::size_t fallback) const { return foulis_cap ? foulis_cap : fallback; }
};

Globals g;

void header(const std::string& command) {
  std::cout << "# omql " << command << " seed=" << g.seed << "\n";
}

FiniteOml checked(const RawLattice& raw) {
  return make_lattice(raw, std::max(raw.size, kDefaultLatticeCap));
}

LatticeFile load_raw(const std::string& arg) {
  static const std::string prefix = "builtin:";
  if (arg.rfind(prefix, 0) == 0) {
    return {builtin_by_name(arg.substr(prefix.size())).to_raw(), {}};
  }
  return read_lattice_file(arg);
}

ModalOml load_modal(const std::string& arg) {
  auto file = load_raw(arg);
  auto L = checked(file.raw);
  return file.box.empty() ? ModalOml::saturate(std::move(L))
                          : ModalOml::with_box(std::move(L), std::move(file.box));
}

std::vector<NamedModel> load_library(const std::string& spec) {
  std::vector<NamedModel> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) {
      continue;
    }
    if (item.find('/') != std::string::npos || item.ends_with(".oml")) {
      out.push_back({item, load_modal(item)});
    } else {
      auto more = library_from_names(item);
      out.insert(out.end(), more.begin(), more.end());
    }
  }
  if (out.empty()) {
    throw Error(ErrorCode::BadParam, "empty model library");
  }
  return out;
}

std::vector<NamedModel> library() {
  if (!g.models.empty()) {
    return load_library(g.models);
  }
  if (const char* env = std::getenv("OMQL_LIBRARY"); env && *env) {
    return load_library(env);
  }
  return default_library();
}

Elem element(const FiniteOml& L, const std::string& name) {
  if (auto e = L.find(name)) {
    return *e;
  }
  throw Error(ErrorCode::BadParam, "no element named '" + name + "'");
}

// x1=a,x2=~b
Valuation parse_valuation(const FiniteOml& L, const std::string& text) {
  Valuation v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq < 2 || item[0] != 'x') {
      throw Error(ErrorCode::BadParam, "bad valuation entry '" + item + "'");
    }
    unsigned const var = static_cast<unsigned>(std::stoul(item.substr(1, eq - 1)));
    if (var == 0) {
      throw Error(ErrorCode::BadParam, "variables start at x1");
    }
    v.set(var, element(L, item.substr(eq + 1)));
  }
  return v;
}

std::string element_list(const FiniteOml& L, const std::vector<Elem>& elems, char sep = ',') {
  std::string out;
  for (Elem e : elems) {
    if (!out.empty()) {
      out += sep;
    }
    out += L.name(e);
  }
  return out;
}

void write_or_print(const std::string& path, const std::function<void(std::ostream&)>& fn) {
  if (path.empty()) {
    fn(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorCode::LoadError, "cannot write " + path);
  }
  fn(out);
}

// lattice

int lattice_check(const std::string& file) {
  header("lattice check");
  auto lf = load_raw(file);
  auto v = validate_lattice(lf.raw, std::max(lf.raw.size, kDefaultLatticeCap));
  if (!v.ok()) {
    for (auto const& d : v.diagnostics) {
      std::vector<std::string> names;
      for (Elem e : d.witness) {
        names.push_back(e < lf.raw.names.size() ? lf.raw.names[e] : std::to_string(e));
      }
      std::string w;
      for (auto const& n : names) {
        w += (w.empty() ? "" : ",") + n;
      }
      if (g.machine()) {
        std::cout << to_string(d.code) << " FAIL witness=" << w << "\n";
      } else {
        std::cout << to_string(d.code) << " witness " << w << " (" << d.message << ")\n";
      }
    }
    return kFail;
  }
  auto const& L = *v.lattice;
  auto const z = center(L, true);
  if (g.machine()) {
    std::cout << "LATTICE PASS size=" << L.size() << " center=" << element_list(L, z) << "\n";
  } else {
    std::cout << "VALID orthomodular, center={" << element_list(L, z) << "}\n";
  }
  if (!lf.box.empty()) {
    auto m = ModalOml::with_box(L, lf.box);
    bool const sat = m.is_saturated();
    std::cout << (g.machine() ? (sat ? "BOX PASS saturated\n" : "BOX FAIL not-saturated\n")
                              : (sat ? "box table is saturated\n" : "box table is not saturated\n"));
    return sat ? kPass : kFail;
  }
  return kPass;
}

int lattice_builtin(const std::string& name, const std::vector<std::string>& params,
                    const std::string& out) {
  auto L = builtin(name, params);
  write_or_print(out, [&](std::ostream& os) { write_lattice(os, L); });
  return kPass;
}

int lattice_center(const std::string& file) {
  header("lattice center");
  auto L = checked(load_raw(file).raw);
  auto z = center(L, true);
  std::cout << (g.machine() ? "CENTER PASS " : "center = {") << element_list(L, z)
            << (g.machine() ? "\n" : "}\n");
  return kPass;
}

std::string classes(const FiniteOml& L, const Congruence& c) {
  std::vector<std::vector<Elem>> blocks(c.num_classes);
  for (Elem a = 0; a < L.size(); ++a) {
    blocks[c.class_of[a]].push_back(a);
  }
  std::string out;
  for (auto const& b : blocks) {
    out += (out.empty() ? "{" : " {") + element_list(L, b) + "}";
  }
  return out;
}

int lattice_congruence(const std::string& file, const std::string& z) {
  header("lattice congruence");
  auto m = load_modal(file);
  auto c = modal_theta(m, element(m.base(), z));
  std::cout << (g.machine() ? "CONGRUENCE PASS classes=" + std::to_string(c.num_classes) + " "
                            : "Theta_" + z + ": ")
            << classes(m.base(), c) << "\n";
  return kPass;
}

int lattice_quotient(const std::string& file, const std::string& z, const std::string& out) {
  auto m = load_modal(file);
  auto q = modal_quotient(m, modal_theta(m, element(m.base(), z)));
  write_or_print(out, [&](std::ostream& os) { write_lattice(os, q.base(), q.box_table()); });
  return kPass;
}

int lattice_product(const std::string& a, const std::string& b, const std::string& out) {
  auto p = modal_product(load_modal(a), load_modal(b));
  write_or_print(out, [&](std::ostream& os) { write_lattice(os, p.base(), p.box_table()); });
  return kPass;
}

int lattice_iso(const std::string& a, const std::string& b) {
  header("lattice iso");
  auto lhs = load_modal(a);
  auto rhs = load_modal(b);
  auto iso = modal_isomorphism(lhs, rhs);
  if (!iso) {
    std::cout << (g.machine() ? "ISO FAIL\n" : "NOT ISOMORPHIC\n");
    return kFail;
  }
  std::cout << (g.machine() ? "ISO PASS" : "ISOMORPHIC");
  for (Elem x = 0; x < lhs.size(); ++x) {
    std::cout << " " << lhs.base().name(x) << "->" << rhs.base().name(iso->map[x]);
  }
  std::cout << "\n";
  return kPass;
}

// modal

void print_report(const Report& r, const FiniteOml& L) {
  std::cout << (g.machine() ? r.machine() : r.text(L));
}

int modal_verify(const std::string& file) {
  header("modal verify");
  auto m = load_modal(file);
  auto s = verify_s_axioms(m);
  auto l = verify_derived_laws(m);
  print_report(s, m.base());
  print_report(l, m.base());
  return s.all_pass() && l.all_pass() ? kPass : kFail;
}

int modal_eval(const std::string& file, const std::string& val, const std::string& term) {
  header("modal eval");
  auto m = load_modal(file);
  auto t = parse_term(term);
  Elem const e = eval_term(m, t, parse_valuation(m.base(), val));
  std::cout << (g.machine() ? "VALUE PASS " : print_term(t) + " = ") << m.base().name(e) << "\n";
  return kPass;
}

int modal_equation(const std::string& file, const std::string& lhs, const std::string& rhs) {
  header("modal equation");
  auto m = load_modal(file);
  auto r = check_equation(m, parse_term(lhs), parse_term(rhs), g.var_cap);
  if (r.holds) {
    std::cout << (g.machine() ? "EQUATION PASS\n" : "holds\n");
    return kPass;
  }
  std::cout << (g.machine() ? "EQUATION FAIL " : "fails at ")
            << format_valuation(m, *r.countervaluation) << "\n";
  return kFail;
}

// semigroup

int semigroup_build(const std::string& file, const std::string& out) {
  auto m = load_modal(file);
  auto fg = foulis_semigroup(m.base(), g.cap(kDefaultFoulisCap));
  if (!out.empty()) {
    write_or_print(out, [&](std::ostream& os) { write_semigroup(os, fg.semigroup); });
  }
  header("semigroup build");
  auto pc = closed_projections(fg.semigroup);
  std::cout << (g.machine() ? "SEMIGROUP PASS size=" : "|G(L)| = ") << fg.maps.size()
            << (g.machine() ? " closed=" : ", |P_c| = ") << pc.carrier.size() << "\n";
  return kPass;
}

int semigroup_check(const std::string& file) {
  header("semigroup check");
  std::ifstream in(file);
  if (!in) {
    throw Error(ErrorCode::LoadError, "cannot open " + file);
  }
  auto v = validate_star_semigroup(parse_semigroup(in, file));
  if (!v.ok()) {
    for (auto const& d : v.diagnostics) {
      std::cout << to_string(d.code) << " FAIL " << d.message << "\n";
    }
    return kFail;
  }
  try {
    auto pc = closed_projections(*v.semigroup);
    std::cout << (g.machine() ? "BAER PASS closed=" : "Baer *-semigroup, |P_c| = ")
              << pc.carrier.size() << "\n";
  } catch (const Error& e) {
    std::cout << to_string(e.code()) << " FAIL " << e.what() << "\n";
    return kFail;
  }
  return kPass;
}

int semigroup_represent(const std::string& file) {
  header("semigroup represent");
  auto m = load_modal(file);
  auto fg = foulis_semigroup(m.base(), g.cap(kDefaultFoulisCap));
  try {
    auto rep = verify_representation(fg, &m);
    std::cout << (g.machine() ? "REPRESENTATION PASS size=" : "a -> mu_a is an isomorphism onto P_c(G(L)), |G(L)| = ")
              << fg.maps.size() << "\n";
  } catch (const Error& e) {
    std::cout << "REPRESENTATION FAIL " << e.what() << "\n";
    return kFail;
  }
  return kPass;
}

// calculus

int prove_check(const std::string& file, bool fill) {
  header("prove check");
  auto script = read_proof_file(file);
  auto v = check_proof(script, fill);
  for (std::size_t i = 0; i < v.lines.size(); ++i) {
    auto const& l = v.lines[i];
    if (g.machine()) {
      std::cout << "L" << l.index << (l.ok ? " PASS" : " FAIL " + l.reason) << "\n";
    } else if (!l.ok) {
      std::cout << "line " << l.index << ": " << l.reason << "\n";
    }
  }
  if (!v.goal_met) {
    std::cout << (g.machine() ? "GOAL FAIL\n" : "last line is not the goal\n");
  }
  if (v.accepted) {
    std::cout << (g.machine() ? "PROOF PASS " : "ACCEPTED ") << print_term(*v.conclusion) << "\n";
    return kPass;
  }
  std::cout << (g.machine() ? "PROOF FAIL\n" : "REJECTED\n");
  return kFail;
}

int report_semantic(const SemanticResult& r, const std::vector<NamedModel>& models) {
  if (!r.refuted) {
    std::cout << r.label() << " (" << models.size() << " models)\n";
    return kPass;
  }
  auto const& m = models[r.model];
  std::cout << r.label() << " " << m.name << " " << format_valuation(m.algebra, *r.valuation)
            << "\n";
  return kFail;
}

int taut(const std::string& term) {
  header("taut");
  auto models = library();
  return report_semantic(is_tautology(parse_term(term), models, g.var_cap, g.jobs), models);
}

std::vector<Term> parse_theory(const std::string& text) {
  std::vector<Term> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.find_first_not_of(" \t") != std::string::npos) {
      out.push_back(parse_term(item));
    }
  }
  return out;
}

int consequence(const std::string& file, const std::string& theory, const std::string& term,
                const std::string& gamma) {
  header("consequence");
  std::vector<Term> premises;
  std::optional<Term> goal;
  if (!file.empty()) {
    auto script = read_proof_file(file);
    premises = script.theory;
    goal = script.goal;
  }
  auto more = parse_theory(theory);
  premises.insert(premises.end(), more.begin(), more.end());
  if (!term.empty()) {
    goal = parse_term(term);
  }
  if (!goal) {
    throw Error(ErrorCode::BadParam, "no goal term given");
  }
  if (!gamma.empty()) {
    // γ moves from the theory into the goal as ¬□γ ∨ t.
    goal = deduction_transform(parse_term(gamma), *goal);
  }
  auto models = library();
  return report_semantic(semantic_consequence(premises, *goal, models, g.var_cap, g.jobs), models);
}

// kripke

std::string set_string(const ElemSet& s) {
  std::string out = "{";
  for (auto i = s.find_first(); i != ElemSet::npos; i = s.find_next(i)) {
    out += (out.size() > 1 ? "," : "") + std::to_string(i);
  }
  return out + "}";
}

int kripke_eval(const std::string& file, const std::string& val, const std::string& term) {
  header("kripke eval");
  auto m = load_modal(file);
  auto st = std::make_shared<const FrameStructure>(m, g.cap(kDefaultFoulisCap));
  auto frame = frame_from_lattice(st, parse_valuation(m.base(), val));
  auto t = parse_term(term);
  ForcingOptions opts{g.reading(), BoxClause::Central};
  auto truth = truth_set(frame, t, opts);
  Elem const u = eval_term(st->pc(), t, Valuation{frame.u});
  auto const& ideal = st->ideal(u);
  bool const same = truth == ideal;
  if (g.machine()) {
    std::cout << "KRIPKE " << (same ? "PASS" : "FAIL") << " truth=" << truth.count()
              << " ideal=" << ideal.count() << "\n";
  } else {
    std::cout << "|G| = " << st->size() << ", u(t) = " << st->pc().base().name(u) << "\n"
              << "truth set (" << truth.count() << "): " << set_string(truth) << "\n"
              << "u(t)G     (" << ideal.count() << "): " << set_string(ideal) << "\n"
              << (same ? "equal" : "different") << "\n";
  }
  return same ? kPass : kFail;
}

int kripke_verify(const std::string& file, std::size_t comp) {
  header("kripke verify");
  auto m = load_modal(file);
  auto st = std::make_shared<const FrameStructure>(m, g.cap(kDefaultFoulisCap));
  auto frames = generate_frames(st, {1, 2}, g.seed);
  auto const terms = enumerate_terms(comp, 2);
  auto const small = enumerate_terms(std::min<std::size_t>(comp, 2), 2);
  ForcingOptions opts{g.reading(), BoxClause::Central};
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::size_t p53[3] = {0, 0, 0};
  for (auto const& f : frames) {
    auto r = verify_truth_set_identity(f, terms, opts);
    checked += r.checked;
    failures += r.failures;
    for (auto a : small.roots) {
      for (auto b : small.roots) {
        auto rep = verify_truth_set_clauses(f, small.dag.term(a), small.dag.term(b));
        for (int i = 0; i < 3; ++i) {
          p53[i] += rep.items[i].pass ? 0 : 1;
        }
      }
    }
  }
  bool ok = failures == 0;
  for (int i = 0; i < 3; ++i) {
    ok = ok && p53[i] == 0;
    std::cout << "P" << (i + 1) << (p53[i] ? " FAIL failures=" + std::to_string(p53[i]) : " PASS")
              << "\n";
  }
  std::cout << "IDENTITY " << (failures ? "FAIL" : "PASS") << " frames=" << frames.size()
            << " checks=" << checked << " failures=" << failures << "\n";
  return ok ? kPass : kFail;
}

// suite

int suite(const std::string& criteria, const std::string& corpus) {
  SuiteConfig config;
  if (!g.models.empty()) {
    config.library = load_library(g.models);
    config.restricted = true;
  } else if (const char* env = std::getenv("OMQL_LIBRARY"); env && *env) {
    config.library = load_library(env);
  }
  config.seed = g.seed;
  config.negation = g.reading();
  config.var_cap = g.var_cap;
  config.foulis_cap = g.cap(config.foulis_cap);
  config.jobs = g.jobs;
  config.corpus_dir = corpus;

  std::vector<unsigned> which;
  if (criteria.empty()) {
    for (unsigned i = 1; i <= kCriterionCount; ++i) {
      which.push_back(i);
    }
  } else {
    std::stringstream ss(criteria);
    std::string item;
    while (std::getline(ss, item, ',')) {
      which.push_back(static_cast<unsigned>(std::stoul(item)));
    }
  }
  std::string names;
  for (auto const& m : config.library) {
    names += (names.empty() ? "" : ",") + m.name;
  }
  std::cout << "# omql suite seed=" << g.seed << " negation=" << g.negation
            << " models=" << names << "\n";
  SuiteReport report;
  for (unsigned i : which) {
    report.results.push_back(run_criterion(i, config));
    std::cout << format_result(report.results.back(), g.machine()) << std::endl;
  }
  std::cout << format_summary(report) << "\n";
  return report.all_pass() ? kPass : kFail;
}

bool usage_error(ErrorCode c) {
  switch (c) {
    case ErrorCode::SyntaxError:
    case ErrorCode::LoadError:
    case ErrorCode::BadParam:
    case ErrorCode::UnknownBuiltin:
    case ErrorCode::MalformedScript:
    case ErrorCode::UnknownVariable:
    case ErrorCode::UnboundVariable:
    case ErrorCode::VarCapExceeded:
    case ErrorCode::CapExceeded:
    case ErrorCode::SizeCapExceeded:
      return true;
    default:
      return false;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite orthomodular lattices with a Boolean-saturated box: validation, "
               "the R-calculus, Foulis semigroups and Kripke-style frames."};
  app.footer(kFormatsHelp);
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--var-cap", g.var_cap, "Maximum number of distinct variables in a sweep")
      ->check(CLI::PositiveNumber);
  app.add_option("--foulis-cap", g.foulis_cap, "Largest |L| for which G(L) is built")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"text", "machine"}));
  app.add_option("--seed", g.seed, "Seed for sampled sweeps");
  app.add_option("--jobs", g.jobs, "Worker threads for library sweeps")->check(CLI::PositiveNumber);
  app.add_option("--models", g.models, "Model library (comma-separated)");
  app.add_option("--negation-clause", g.negation, "Forcing clause for negation")
      ->check(CLI::IsMember({"star", "prime"}));

  int rc = kPass;
  std::string file, file2, out, z, val, term, theory, gamma, criteria;
  std::string corpus = OMQL_CORPUS_DIR;
  std::string name;
  std::vector<std::string> params;
  bool fill = false;
  std::size_t comp = 4;

  auto* lattice = app.add_subcommand("lattice", "Lattice files and builtins");
  lattice->require_subcommand(1);
  auto* l_check = lattice->add_subcommand("check", "Validate a lattice file");
  l_check->add_option("file", file)->required();
  l_check->callback([&] { rc = lattice_check(file); });
  auto* l_builtin = lattice->add_subcommand("builtin", "Write a builtin lattice");
  l_builtin->add_option("name", name, "boolean | mo | chain2 | product")->required();
  l_builtin->add_option("params", params);
  l_builtin->add_option("-o,--output", out);
  l_builtin->callback([&] { rc = lattice_builtin(name, params, out); });
  auto* l_center = lattice->add_subcommand("center", "Central elements");
  l_center->add_option("file", file)->required();
  l_center->callback([&] { rc = lattice_center(file); });
  auto* l_cong = lattice->add_subcommand("congruence", "Classes of Theta_z");
  l_cong->add_option("file", file)->required();
  l_cong->add_option("z", z)->required();
  l_cong->callback([&] { rc = lattice_congruence(file, z); });
  auto* l_quot = lattice->add_subcommand("quotient", "Write L/Theta_z");
  l_quot->add_option("file", file)->required();
  l_quot->add_option("z", z)->required();
  l_quot->add_option("-o,--output", out);
  l_quot->callback([&] { rc = lattice_quotient(file, z, out); });
  auto* l_prod = lattice->add_subcommand("product", "Write the direct product");
  l_prod->add_option("lhs", file)->required();
  l_prod->add_option("rhs", file2)->required();
  l_prod->add_option("-o,--output", out);
  l_prod->callback([&] { rc = lattice_product(file, file2, out); });
  auto* l_iso = lattice->add_subcommand("iso", "Search for an isomorphism");
  l_iso->add_option("lhs", file)->required();
  l_iso->add_option("rhs", file2)->required();
  l_iso->callback([&] { rc = lattice_iso(file, file2); });

  auto* modal = app.add_subcommand("modal", "Box operator");
  modal->require_subcommand(1);
  auto* m_verify = modal->add_subcommand("verify", "S1-S7 and L1-L6");
  m_verify->add_option("file", file)->required();
  m_verify->callback([&] { rc = modal_verify(file); });
  auto* m_eval = modal->add_subcommand("eval", "Evaluate a term");
  m_eval->add_option("file", file)->required();
  m_eval->add_option("--val", val, "x1=a,x2=b")->required();
  m_eval->add_option("--term", term)->required();
  m_eval->callback([&] { rc = modal_eval(file, val, term); });
  auto* m_eq = modal->add_subcommand("equation", "Decide t = s on one algebra");
  m_eq->add_option("file", file)->required();
  m_eq->add_option("lhs", term)->required();
  m_eq->add_option("rhs", theory)->required();
  m_eq->callback([&] { rc = modal_equation(file, term, theory); });

  auto* sg = app.add_subcommand("semigroup", "Baer *-semigroups and G(L)");
  sg->require_subcommand(1);
  auto* s_build = sg->add_subcommand("build", "Build G(L)");
  s_build->add_option("file", file)->required();
  s_build->add_option("-o,--output", out, "Dump the Cayley table");
  s_build->callback([&] { rc = semigroup_build(file, out); });
  auto* s_check = sg->add_subcommand("check", "Validate a semigroup file, closed projections");
  s_check->add_option("file", file)->required();
  s_check->callback([&] { rc = semigroup_check(file); });
  auto* s_rep = sg->add_subcommand("represent", "Check a -> mu_a onto P_c(G(L))");
  s_rep->add_option("file", file)->required();
  s_rep->callback([&] { rc = semigroup_represent(file); });

  auto* prove = app.add_subcommand("prove", "Proof scripts");
  prove->require_subcommand(1);
  auto* p_check = prove->add_subcommand("check", "Check a proof script");
  p_check->add_option("file", file)->required();
  p_check->add_flag("--fill", fill, "Infer missing axiom substitutions");
  p_check->callback([&] { rc = prove_check(file, fill); });

  auto* t_cmd = app.add_subcommand("taut", "Tautology check over the library");
  t_cmd->add_option("term", term)->required();
  t_cmd->callback([&] { rc = taut(term); });

  auto* c_cmd = app.add_subcommand("consequence", "T |= t over the library");
  c_cmd->add_option("file", file, "Script with theory: and goal:");
  c_cmd->add_option("--theory", theory, "Premises separated by ';'");
  c_cmd->add_option("--term", term);
  c_cmd->add_option("--deduct", gamma, "Check T |= ~[]gamma | t instead");
  c_cmd->callback([&] { rc = consequence(file, theory, term, gamma); });

  auto* kripke = app.add_subcommand("kripke", "Frames over G(L)");
  kripke->require_subcommand(1);
  auto* k_eval = kripke->add_subcommand("eval", "Truth set next to u(t)G");
  k_eval->add_option("file", file)->required();
  k_eval->add_option("--val", val, "x1=a,x2=b")->required();
  k_eval->add_option("--term", term)->required();
  k_eval->callback([&] { rc = kripke_eval(file, val, term); });
  auto* k_verify = kripke->add_subcommand("verify", "Truth-set identities on every valuation");
  k_verify->add_option("file", file)->required();
  k_verify->add_option("--comp", comp, "Term complexity bound")->check(CLI::PositiveNumber);
  k_verify->callback([&] { rc = kripke_verify(file, comp); });

  auto* s_cmd = app.add_subcommand("suite", "Acceptance criteria");
  s_cmd->add_option("--criteria", criteria, "Comma-separated criterion numbers");
  s_cmd->add_option("--corpus", corpus, "Proof corpus directory");
  s_cmd->callback([&] { rc = suite(criteria, corpus); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int const code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  } catch (const Error& e) {
    std::cerr << "omql: " << to_string(e.code()) << ": " << e.what() << "\n";
    return usage_error(e.code()) ? kUsage : kFail;
  } catch (const std::exception& e) {
    std::cerr << "omql: " << e.what() << "\n";
    return kUsage;
  }
  return rc;
}
