#include "omql/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <map>
#include <memory>
#include <sstream>

#include "omql/axioms.hpp"
#include "omql/error.hpp"
#include "omql/proof.hpp"
#include "omql/semantics.hpp"

namespace omql {

const char* to_string(Status s) {
  switch (s) {
    case Status::Pass:
      return "PASS";
    case Status::Fail:
      return "FAIL";
    case Status::Skip:
      return "SKIP";
  }
  return "?";
}

bool SuiteReport::all_pass() const { return failures() == 0; }

std::size_t SuiteReport::failures() const {
  return static_cast<std::size_t>(std::count_if(results.begin(), results.end(), [](auto& r) {
    return r.status == Status::Fail;
  }));
}

Term random_term(std::mt19937_64& rng, unsigned vars, std::size_t max_comp) {
  std::uniform_int_distribution<std::size_t> size(1, std::max<std::size_t>(max_comp, 1));
  auto build = [&](auto& self, std::size_t comp) -> Term {
    if (comp == 1) {
      std::uniform_int_distribution<unsigned> atom(0, vars * 6 + 1);
      unsigned const k = atom(rng);
      if (k == vars * 6) {
        return zero();
      }
      if (k == vars * 6 + 1) {
        return one();
      }
      return var(k % vars + 1);
    }
    std::uniform_int_distribution<int> op(0, comp >= 3 ? 3 : 1);
    switch (op(rng)) {
      case 0:
        return neg(self(self, comp - 1));
      case 1:
        return box(self(self, comp - 1));
      default: {
        std::uniform_int_distribution<std::size_t> split(1, comp - 2);
        std::size_t const left = split(rng);
        Term l = self(self, left);
        Term r = self(self, comp - 1 - left);
        return op(rng) % 2 ? conj(l, r) : disj(l, r);
      }
    }
  };
  return build(build, size(rng));
}

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  Status status = Status::Pass;
  std::string detail;
};

std::string fixed(double v, int digits) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// Library members named in `wanted`, or all of them when not restricted.
std::vector<const NamedModel*> pick(const SuiteConfig& config,
                                    std::initializer_list<const char*> wanted) {
  std::vector<const NamedModel*> out;
  for (const char* name : wanted) {
    auto it = std::find_if(config.library.begin(), config.library.end(),
                           [&](const NamedModel& m) { return m.name == name; });
    if (it != config.library.end()) {
      out.push_back(&*it);
    } else if (!config.restricted) {
      // The fixed lists name builtins, so they are available even when a
      // custom default library leaves them out.
      static std::map<std::string, std::unique_ptr<NamedModel>> cache;
      auto& slot = cache[name];
      if (!slot) {
        slot = std::make_unique<NamedModel>(library_from_names(name).front());
      }
      out.push_back(slot.get());
    }
  }
  return out;
}

std::string names_of(const std::vector<const NamedModel*>& models) {
  std::string out;
  for (auto* m : models) {
    out += (out.empty() ? "" : ",") + m->name;
  }
  return out;
}

Outcome skip_empty() { return {Status::Skip, "no selected model applies"}; }

Outcome s_axioms(const SuiteConfig& config) {
  auto models = pick(config, {"b2", "b4", "b8", "mo2", "mo3", "mo2xb2"});
  if (models.empty()) {
    return skip_empty();
  }
  for (auto* m : models) {
    for (auto const& report : {verify_s_axioms(m->algebra), verify_derived_laws(m->algebra)}) {
      for (auto const& item : report.items) {
        if (!item.pass) {
          return {Status::Fail, m->name + ": " + item.id + " fails " +
                                    report.text(m->algebra.base())};
        }
      }
    }
  }
  return {Status::Pass, "S1-S7 and L1-L6 on " + names_of(models)};
}

Outcome soundness(const SuiteConfig& config) {
  std::size_t n = 0;
  for (auto const& s : axiom_schemas()) {
    auto r = is_tautology(fresh_instance(s), config.library, config.var_cap, config.jobs);
    if (r.refuted) {
      auto const& m = config.library[r.model];
      return {Status::Fail, s.id + " refuted on " + m.name + " at " +
                                format_valuation(m.algebra, *r.valuation)};
    }
    ++n;
  }
  Schema const printed_a23{"A23", printed_a23_schema(), 3};
  auto printed = is_tautology(fresh_instance(printed_a23), config.library, config.var_cap, config.jobs);
  std::string note = printed.refuted
                         ? "; printed A23 form refuted on " + config.library[printed.model].name
                         : "; printed A23 form not refuted";
  return {Status::Pass, std::to_string(n) + " schemas are tautologies on the library" + note};
}

Outcome corpus(const SuiteConfig& config) {
  static const char* const expected[] = {
      "r_symmetry", "r_transitivity", "r_negation", "replace_in_meet", "replace_in_join",
      "r_box", "excluded_middle", "weakening", "provable_r_top"};
  namespace fs = std::filesystem;
  if (config.corpus_dir.empty() || !fs::is_directory(config.corpus_dir)) {
    return {Status::Fail, "proof corpus directory not found: " + config.corpus_dir};
  }
  std::size_t lines = 0;
  for (const char* name : expected) {
    auto const path = fs::path(config.corpus_dir) / (std::string(name) + ".proof");
    if (!fs::exists(path)) {
      return {Status::Fail, "missing " + path.string()};
    }
    auto script = read_proof_file(path.string());
    auto verdict = check_proof(script);
    if (!verdict.accepted) {
      std::string why = verdict.goal_met ? "" : "last line is not the goal";
      for (auto const& l : verdict.lines) {
        if (!l.ok) {
          why = "line " + std::to_string(l.index) + ": " + l.reason;
          break;
        }
      }
      return {Status::Fail, std::string(name) + " rejected, " + why};
    }
    auto sem = semantic_consequence(script.theory, *verdict.conclusion, config.library,
                                    config.var_cap, config.jobs);
    if (sem.refuted) {
      return {Status::Fail, std::string(name) + " conclusion refuted on " +
                                config.library[sem.model].name};
    }
    lines += script.lines.size();
  }
  return {Status::Pass, std::to_string(std::size(expected)) + " scripts accepted (" +
                            std::to_string(lines) + " lines), conclusions not refuted"};
}

Outcome representation(const SuiteConfig& config) {
  auto models = pick(config, {"b2", "b4", "mo2", "mo3"});
  if (models.empty()) {
    return skip_empty();
  }
  std::string sizes;
  for (auto* m : models) {
    auto g = foulis_semigroup(m->algebra.base(), config.foulis_cap);
    auto rep = verify_representation(g, &m->algebra);
    auto v = validate_lattice(rep.pc.lattice.to_raw(), rep.pc.lattice.size());
    if (!v.ok()) {
      return {Status::Fail, "P_c(G(" + m->name + ")) is not an OML: " +
                                v.diagnostics.front().message};
    }
    sizes += (sizes.empty() ? "" : " ") + m->name + ":|G|=" + std::to_string(g.maps.size());
  }
  return {Status::Pass, sizes};
}

Outcome oracle(const SuiteConfig& config) {
  auto models = pick(config, {"b2", "b4", "mo2"});
  if (models.empty()) {
    return skip_empty();
  }
  std::string sizes;
  for (auto* m : models) {
    auto const& L = m->algebra.base();
    auto fast = residuated_endomaps(L, config.foulis_cap);
    auto slow = residuated_endomaps_oracle(L);
    if (fast != slow) {
      return {Status::Fail, m->name + ": fast enumeration finds " + std::to_string(fast.size()) +
                                " maps, oracle " + std::to_string(slow.size())};
    }
    std::size_t const want = m->name == "b2" ? 2 : m->name == "b4" ? 16 : 0;
    if (want && fast.size() != want) {
      return {Status::Fail, "|G(" + m->name + ")| = " + std::to_string(fast.size()) +
                                ", expected " + std::to_string(want)};
    }
    sizes += (sizes.empty() ? "" : " ") + m->name + ":" + std::to_string(fast.size());
  }
  return {Status::Pass, "fast = oracle, " + sizes};
}

const char* reading_name(NegationReading r) {
  return r == NegationReading::Star ? "star" : "prime";
}

Outcome master_invariant(const SuiteConfig& config) {
  auto models = pick(config, {"b2", "b4", "mo2"});
  if (models.empty()) {
    return skip_empty();
  }
  auto const terms = enumerate_terms(7, 2);
  std::string detail = std::to_string(terms.roots.size()) + " terms, " +
                       reading_name(config.negation) + " reading:";
  bool invariant = true;
  bool control_broken = false;
  std::string control;
  for (auto* m : models) {
    auto st = std::make_shared<const FrameStructure>(m->algebra, config.foulis_cap);
    auto frames = generate_frames(st, {1, 2}, config.seed);
    std::size_t fails = 0;
    std::size_t mutated = 0;
    std::size_t checked = 0;
    for (auto const& f : frames) {
      auto r = verify_truth_set_identity(f, terms, {config.negation, BoxClause::Central});
      fails += r.failures;
      checked += r.checked;
      mutated += verify_truth_set_identity(f, terms, {config.negation, BoxClause::AnyClosed}).failures;
    }
    invariant = invariant && fails == 0;
    control_broken = control_broken || mutated > 0;
    detail += " " + m->name + (fails ? " FAIL " + std::to_string(fails) + "/" : " ok ") +
              std::to_string(checked) + (fails ? "" : " checks");
    control += " " + m->name + "=" + std::to_string(mutated);
  }
  detail += "; mutated box failures:" + control;
  bool const has_mo2 = std::any_of(models.begin(), models.end(),
                                   [](auto* m) { return m->name == "mo2"; });
  if (has_mo2 && !control_broken) {
    return {Status::Fail, detail + " (negative control did not fail)"};
  }
  return {invariant ? Status::Pass : Status::Fail, detail};
}

struct FrameLibrary {
  const NamedModel* model;
  std::shared_ptr<const FrameStructure> structure;
};

std::vector<FrameLibrary> frame_library(const SuiteConfig& config) {
  std::vector<FrameLibrary> out;
  for (auto const& m : config.library) {
    out.push_back({&m, std::make_shared<const FrameStructure>(m.algebra, config.foulis_cap)});
  }
  return out;
}

// A premise/goal pair; half of the goals are built to follow.
std::pair<std::vector<Term>, Term> consequence_pair(std::mt19937_64& rng, std::size_t max_comp) {
  std::uniform_int_distribution<unsigned> nvars(1, 3);
  std::uniform_int_distribution<int> npremises(0, 2);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> shape(0, 4);
  while (true) {
    unsigned const vars = nvars(rng);
    std::vector<Term> theory;
    int const k = npremises(rng);
    for (int i = 0; i < k; ++i) {
      theory.push_back(random_term(rng, vars, 4));
    }
    Term t;
    if (coin(rng) || theory.empty()) {
      t = random_term(rng, vars, max_comp);
    } else {
      Term const& p = theory[std::uniform_int_distribution<std::size_t>(0, theory.size() - 1)(rng)];
      switch (shape(rng)) {
        case 0:
          t = box(p);
          break;
        case 1:
          t = disj(p, random_term(rng, vars, 2));
          break;
        case 2:
          t = neg(neg(p));
          break;
        case 3:
          t = theory.size() == 2 ? conj(theory[0], theory[1]) : disj(random_term(rng, vars, 1), p);
          break;
        default: {
          Term const s = random_term(rng, vars, 2);
          t = disj(s, neg(s));
          break;
        }
      }
    }
    bool fits = t.comp() <= max_comp;
    for (auto const& p : theory) {
      fits = fits && p.comp() <= max_comp;
    }
    if (fits) {
      return {std::move(theory), std::move(t)};
    }
  }
}

Outcome completeness_bridge(const SuiteConfig& config) {
  auto const frames = frame_library(config);
  std::mt19937_64 rng(config.seed);
  std::size_t holds = 0;
  std::size_t refuted = 0;
  std::size_t frame_count = 0;
  for (int i = 0; i < 50; ++i) {
    auto [theory, t] = consequence_pair(rng, 6);
    std::vector<Term> all = theory;
    all.push_back(t);
    auto const vars = variables(std::span<const Term>(all));
    bool any = false;
    for (std::size_t j = 0; j < frames.size(); ++j) {
      auto sem = semantic_consequence(theory, t, std::span<const NamedModel>(frames[j].model, 1),
                                      config.var_cap);
      auto generated = generate_frames(frames[j].structure, vars, config.seed + i);
      frame_count += generated.size();
      auto fc = frame_consequence(theory, t, generated, {config.negation, BoxClause::Central});
      if (sem.refuted == fc.holds) {
        std::string premises;
        for (auto const& p : theory) {
          premises += (premises.empty() ? "" : ", ") + print_term(p);
        }
        return {Status::Fail, "pair " + std::to_string(i) + " {" + premises + "} / " +
                                  print_term(t) + " on " + frames[j].model->name + ": library " +
                                  sem.label() + ", frames " + (fc.holds ? "hold" : "fail")};
      }
      any = any || sem.refuted;
    }
    ++(any ? refuted : holds);
  }
  std::string detail = "50 pairs agree per lattice (" + std::to_string(holds) + " hold, " +
                       std::to_string(refuted) + " refuted, " + std::to_string(frame_count) +
                       " frames)";
  if (holds == 0 || refuted == 0) {
    return {Status::Fail, detail + "; sample lacks one outcome"};
  }
  return {Status::Pass, detail};
}

Outcome deduction(const SuiteConfig& config) {
  std::mt19937_64 rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<Term> pool;
  for (int i = 0; i < 24; ++i) {
    pool.push_back(random_term(rng, 2, 4));
  }
  std::uniform_int_distribution<std::size_t> any(0, pool.size() - 1);
  std::uniform_int_distribution<int> coin(0, 1);
  std::size_t holds = 0;
  for (int i = 0; i < 30; ++i) {
    std::vector<Term> theory;
    if (coin(rng)) {
      theory.push_back(pool[any(rng)]);
    }
    Term const gamma = pool[any(rng)];
    Term const t = coin(rng) ? pool[any(rng)] : coin(rng) ? box(gamma) : disj(gamma, pool[any(rng)]);
    auto extended = theory;
    extended.push_back(gamma);
    auto lhs = semantic_consequence(extended, t, config.library, config.var_cap, config.jobs);
    auto rhs = semantic_consequence(theory, deduction_transform(gamma, t), config.library,
                                    config.var_cap, config.jobs);
    if (lhs.refuted != rhs.refuted) {
      return {Status::Fail, "pair " + std::to_string(i) + " gamma=" + print_term(gamma) +
                                " t=" + print_term(t) + ": T+gamma " + lhs.label() +
                                ", T with ~[]gamma | t " + rhs.label()};
    }
    holds += lhs.refuted ? 0 : 1;
  }
  return {Status::Pass, "30 pairs agree (" + std::to_string(holds) + " hold, " +
                            std::to_string(30 - holds) + " refuted)"};
}

Outcome factors(const SuiteConfig& config) {
  std::size_t decompositions = 0;
  for (auto const& nm : config.library) {
    auto const& m = nm.algebra;
    auto const& L = m.base();
    for (Elem z : m.center()) {
      if (z == L.bot() || z == L.top()) {
        auto identity = modal_theta(m, L.top());
        auto total = modal_theta(m, L.bot());
        if (identity.num_classes != L.size() || total.num_classes != 1 ||
            !modal_isomorphism(modal_quotient(m, identity), m)) {
          return {Status::Fail, nm.name + ": trivial factorisation at " + L.name(z)};
        }
        continue;
      }
      auto lhs = modal_quotient(m, modal_theta(m, z));
      auto rhs = modal_quotient(m, modal_theta(m, L.neg(z)));
      if (!modal_isomorphism(m, modal_product(lhs, rhs))) {
        return {Status::Fail, nm.name + ": no isomorphism onto L/Theta_z x L/Theta_~z at z=" +
                                  L.name(z)};
      }
      ++decompositions;
    }
  }
  return {Status::Pass, std::to_string(decompositions) +
                            " nontrivial central elements decompose; z = 0, 1 trivial"};
}

Outcome discriminator(const SuiteConfig& config) {
  auto models = pick(config, {"mo2", "mo3"});
  if (models.empty()) {
    return skip_empty();
  }
  std::size_t triples = 0;
  for (auto* nm : models) {
    auto const& m = nm->algebra;
    if (!is_directly_indecomposable(m)) {
      return {Status::Fail, nm->name + " is not directly indecomposable"};
    }
    Elem const n = static_cast<Elem>(m.size());
    for (Elem x = 0; x < n; ++x) {
      for (Elem y = 0; y < n; ++y) {
        for (Elem z = 0; z < n; ++z) {
          Elem const want = x == y ? z : x;
          if (discriminator_eval(m, x, y, z) != want) {
            return {Status::Fail, nm->name + " at (" + m.base().name(x) + ", " +
                                      m.base().name(y) + ", " + m.base().name(z) + ")"};
          }
          ++triples;
        }
      }
    }
  }
  return {Status::Pass, std::to_string(triples) + " triples on " + names_of(models)};
}

Outcome non_theorem(const SuiteConfig& config) {
  Term const t = parse_term("[](x1 | x2) R ([]x1 | []x2)");
  auto r = is_tautology(t, config.library, config.var_cap, config.jobs);
  if (!r.refuted) {
    return {Status::Fail, "not refuted on " + std::to_string(config.library.size()) + " models"};
  }
  auto const& m = config.library[r.model];
  std::string const where = m.name + " " + format_valuation(m.algebra, *r.valuation);
  bool const has_mo2 = std::any_of(config.library.begin(), config.library.end(),
                                   [](auto const& nm) { return nm.name == "mo2"; });
  if (has_mo2 && where != "mo2 x1=a x2=~a") {
    return {Status::Fail, "countermodel " + where + ", expected mo2 x1=a x2=~a"};
  }
  return {Status::Pass, std::string(r.label()) + " " + where};
}

struct Spec {
  const char* title;
  double limit;
  Outcome (*run)(const SuiteConfig&);
};

const Spec kSpecs[kCriterionCount] = {
    {"S-axioms and derived box laws", 5, s_axioms},
    {"axiom schemas are tautologies", 60, soundness},
    {"proof corpus", 5, corpus},
    {"representation a -> mu_a", 120, representation},
    {"residuated map enumeration vs oracle", 30, oracle},
    {"truth sets equal u(t)G", 120, master_invariant},
    {"library vs frame consequence", 120, completeness_bridge},
    {"deduction theorem", 60, deduction},
    {"factor decomposition", 10, factors},
    {"discriminator contract", 5, discriminator},
    {"known non-theorem refuted", 1, non_theorem},
};

}  // namespace

CriterionResult run_criterion(unsigned number, const SuiteConfig& config) {
  if (number < 1 || number > kCriterionCount) {
    throw Error(ErrorCode::BadParam, "criterion number out of range");
  }
  auto const& spec = kSpecs[number - 1];
  CriterionResult r{number, spec.title, Status::Pass, {}, 0, spec.limit};
  auto const start = Clock::now();
  try {
    auto out = spec.run(config);
    r.status = out.status;
    r.detail = std::move(out.detail);
  } catch (const std::exception& e) {
    r.status = Status::Fail;
    r.detail = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (r.status == Status::Pass && r.seconds > r.limit) {
    r.status = Status::Fail;
    r.detail += "; took " + fixed(r.seconds, 2) + "s, limit " + fixed(r.limit, 0) + "s";
  }
  return r;
}

SuiteReport run_suite(const SuiteConfig& config,
                      const std::function<void(const CriterionResult&)>& on_result) {
  SuiteReport report;
  for (unsigned i = 1; i <= kCriterionCount; ++i) {
    report.results.push_back(run_criterion(i, config));
    if (on_result) {
      on_result(report.results.back());
    }
  }
  return report;
}

std::string format_result(const CriterionResult& r, bool machine) {
  std::string out = "C" + std::to_string(r.number) + " " + to_string(r.status) + " ";
  if (machine) {
    out += "seconds=" + fixed(r.seconds, 2) + " limit=" + fixed(r.limit, 0) + " " + r.detail;
  } else {
    out += fixed(r.seconds, 2) + "s/" + fixed(r.limit, 0) + "s " + r.title + ": " + r.detail;
  }
  return out;
}

std::string format_summary(const SuiteReport& report) {
  auto const skipped = static_cast<std::size_t>(std::count_if(
      report.results.begin(), report.results.end(), [](auto& r) { return r.status == Status::Skip; }));
  std::string const note = skipped ? ", " + std::to_string(skipped) + " skipped" : "";
  if (report.all_pass()) {
    return "ALL PASS (" + std::to_string(report.results.size() - skipped) + " criteria" + note + ")";
  }
  return "FAIL (" + std::to_string(report.failures()) + " of " +
         std::to_string(report.results.size()) + " criteria" + note + ")";
}

}  // namespace omql
