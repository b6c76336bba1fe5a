#include "omql/semantics.hpp"

#include <thread>

namespace omql {

namespace {

std::optional<Valuation> first_failure(const ModalOml& m, std::span<const Term> theory,
                                       const Term& t, const std::vector<unsigned>& vars) {
  std::optional<Valuation> found;
  Elem const top = m.base().top();
  for_each_valuation(m.size(), vars, [&](const Valuation& v) {
    for (auto const& premise : theory) {
      if (eval_term(m, premise, v) != top) {
        return true;
      }
    }
    if (eval_term(m, t, v) != top) {
      found = v;
      return false;
    }
    return true;
  });
  return found;
}

}  // namespace

SemanticResult semantic_consequence(std::span<const Term> theory, const Term& t,
                                    std::span<const NamedModel> models, unsigned var_cap,
                                    unsigned jobs) {
  std::vector<Term> all(theory.begin(), theory.end());
  all.push_back(t);
  auto const vars = variables(all);
  if (vars.size() > var_cap) {
    throw Error(ErrorCode::VarCapExceeded, std::to_string(vars.size()) +
                                               " variables exceed the cap of " +
                                               std::to_string(var_cap));
  }
  std::vector<std::optional<Valuation>> failures(models.size());
  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < models.size(); i += stride) {
      failures[i] = first_failure(models[i].algebra, theory, t, vars);
    }
  };
  if (jobs <= 1 || models.size() <= 1) {
    // Sequential sweeps stop at the first refuted model.
    for (std::size_t i = 0; i < models.size(); ++i) {
      if (auto v = first_failure(models[i].algebra, theory, t, vars)) {
        return {true, i, std::move(v)};
      }
    }
    return {};
  }
  std::vector<std::thread> pool;
  std::size_t const workers = std::min<std::size_t>(jobs, models.size());
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back(work, w, workers);
  }
  for (auto& th : pool) {
    th.join();
  }
  for (std::size_t i = 0; i < models.size(); ++i) {
    if (failures[i]) {
      return {true, i, std::move(failures[i])};
    }
  }
  return {};
}

SemanticResult is_tautology(const Term& t, std::span<const NamedModel> models,
                            unsigned var_cap, unsigned jobs) {
  return semantic_consequence({}, t, models, var_cap, jobs);
}

Term deduction_transform(const Term& gamma, const Term& t) { return disj(neg(box(gamma)), t); }

std::vector<Term> compactness_probe(std::span<const Term> theory, const Term& t,
                                    std::span<const NamedModel> models, unsigned var_cap) {
  for (std::size_t k = 0; k <= theory.size(); ++k) {
    if (!semantic_consequence(theory.first(k), t, models, var_cap).refuted) {
      return {theory.begin(), theory.begin() + static_cast<std::ptrdiff_t>(k)};
    }
  }
  throw Error(ErrorCode::NotConsequence, "the full theory does not yield " + print_term(t) +
                                             " on the library");
}

std::string format_valuation(const ModalOml& m, const Valuation& v) {
  std::string out;
  for (unsigned x = 1; x <= v.values.size(); ++x) {
    Elem const e = v.get(x);
    if (e == kUnbound) {
      continue;
    }
    if (!out.empty()) {
      out += ' ';
    }
    out += "x" + std::to_string(x) + "=" + m.base().name(e);
  }
  return out;
}

}  // namespace omql
