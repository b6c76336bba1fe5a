#include "omql/kripke.hpp"

#include <algorithm>
#include <random>
#include <unordered_map>

namespace omql {

FrameStructure::FrameStructure(const ModalOml& source, std::size_t cap)
    : source_(source),
      foulis_(foulis_semigroup(source.base(), cap)),
      rep_(verify_representation(foulis_, &source_)) {
  auto const& g = foulis_.semigroup;
  auto const& pc = rep_.pc;
  std::size_t const n = g.size();
  std::size_t const k = pc.carrier.size();
  star_class_.resize(n);
  prime_class_.resize(n);
  star_members_.assign(k, ElemSet(n));
  prime_members_.assign(k, ElemSet(n));
  for (SgElem x = 0; x < n; ++x) {
    // {y}^r = y′·G, so y·x = 0 iff x lies in the ideal of y′.
    star_class_[x] = static_cast<Elem>(pc.index[pc.prime[g.star(x)]]);
    prime_class_[x] = static_cast<Elem>(pc.index[pc.prime[pc.prime[x]]]);
    star_members_[star_class_[x]].set(x);
    prime_members_[prime_class_[x]].set(x);
  }
  for (Elem i = 0; i < k; ++i) {
    all_closed_.push_back(i);
    if (rep_.modal_pc->is_central(i)) {
      central_.push_back(i);
    }
  }
}

Elem ModalFrame::assignment(unsigned var) const {
  if (var == 0 || var > u.size() || u[var - 1] == kUnbound) {
    throw Error(ErrorCode::UnknownVariable,
                "frame valuation does not cover x" + std::to_string(var));
  }
  return u[var - 1];
}

ModalFrame frame_from_lattice(std::shared_ptr<const FrameStructure> structure,
                              const Valuation& v) {
  ModalFrame frame{std::move(structure), {}};
  auto const& map = frame.structure->representation().iso.map;
  for (Elem e : v.values) {
    frame.u.push_back(e == kUnbound ? kUnbound : map.at(e));
  }
  return frame;
}

ModalFrame frame_from_lattice(const ModalOml& lattice, const Valuation& v, std::size_t cap) {
  return frame_from_lattice(std::make_shared<const FrameStructure>(lattice, cap), v);
}

namespace {

// Forcing clauses only cover ∧, ¬, □; ∨ is rewritten through ¬(¬a ∧ ¬b).
Term expand_or(const Term& t) {
  switch (t.op()) {
    case Op::Neg:
      return neg(expand_or(t.arg()));
    case Op::Box:
      return box(expand_or(t.arg()));
    case Op::And:
      return conj(expand_or(t.lhs()), expand_or(t.rhs()));
    case Op::Or:
      return neg(conj(neg(expand_or(t.lhs())), neg(expand_or(t.rhs()))));
    default:
      return t;
  }
}

class DirectForcing {
 public:
  DirectForcing(const ModalFrame& frame, ForcingOptions options)
      : frame_(frame), s_(*frame.structure), g_(s_.semigroup()), options_(options) {}

  bool forces(SgElem x, const Term& t) {
    auto& memo = memo_[t.identity()];
    if (memo.empty()) {
      memo.assign(g_.size(), -1);
    }
    if (memo[x] < 0) {
      memo[x] = compute(x, t) ? 1 : 0;
    }
    return memo[x] == 1;
  }

 private:
  bool in_right_ideal(SgElem e, SgElem x) const {
    for (SgElem y = 0; y < g_.size(); ++y) {
      if (g_.mul(e, y) == x) {
        return true;
      }
    }
    return false;
  }

  bool compute(SgElem x, const Term& t) {
    auto const& carrier = s_.carrier();
    switch (t.op()) {
      case Op::Var:
        return in_right_ideal(carrier[frame_.assignment(t.index())], x);
      case Op::Zero:
        return in_right_ideal(carrier[s_.pc().base().bot()], x);
      case Op::One:
        return in_right_ideal(carrier[s_.pc().base().top()], x);
      case Op::And:
        return forces(x, t.lhs()) && forces(x, t.rhs());
      case Op::Neg:
        for (SgElem g = 0; g < g_.size(); ++g) {
          if (!forces(g, t.arg())) {
            continue;
          }
          SgElem const left = options_.negation == NegationReading::Star
                                  ? g_.star(g)
                                  : s_.representation().pc.prime[g];
          if (g_.mul(left, x) != g_.zero()) {
            return false;
          }
        }
        return true;
      case Op::Box:
        for (Elem z : s_.box_witnesses(options_.box)) {
          if (forces(carrier[z], t.arg()) && in_right_ideal(carrier[z], x)) {
            return true;
          }
        }
        return false;
      case Op::Or:
      case Op::Meta:
        break;
    }
    throw Error(ErrorCode::UnknownVariable, "term outside the forcing language");
  }

  const ModalFrame& frame_;
  const FrameStructure& s_;
  const StarSemigroup& g_;
  ForcingOptions options_;
  std::unordered_map<const void*, std::vector<signed char>> memo_;
};

class IdealForcing {
 public:
  IdealForcing(const ModalFrame& frame, ForcingOptions options)
      : frame_(frame), s_(*frame.structure), options_(options), n_(s_.size()) {}

  ElemSet negate(const ElemSet& s) const {
    ElemSet r(n_);
    r.set();
    for (Elem c = 0; c < s_.carrier().size(); ++c) {
      if (s.intersects(s_.class_members(c, options_.negation))) {
        r &= s_.ideal(c);
      }
    }
    return r;
  }

  ElemSet boxed(const ElemSet& s) const {
    ElemSet r(n_);
    for (Elem z : s_.box_witnesses(options_.box)) {
      if (s.test(s_.carrier()[z])) {
        r |= s_.ideal(z);
      }
    }
    return r;
  }

  ElemSet leaf(Op op, unsigned index) const {
    auto const& base = s_.pc().base();
    switch (op) {
      case Op::Var:
        return s_.ideal(frame_.assignment(index));
      case Op::Zero:
        return s_.ideal(base.bot());
      case Op::One:
        return s_.ideal(base.top());
      default:
        throw Error(ErrorCode::UnknownVariable, "term outside the forcing language");
    }
  }

  std::vector<ElemSet> run(const TermDag& dag) const {
    std::vector<ElemSet> sets;
    sets.reserve(dag.size());
    for (auto const& node : dag.nodes()) {
      switch (node.op) {
        case Op::Neg:
          sets.push_back(negate(sets[node.lhs]));
          break;
        case Op::Box:
          sets.push_back(boxed(sets[node.lhs]));
          break;
        case Op::And:
          sets.push_back(sets[node.lhs] & sets[node.rhs]);
          break;
        case Op::Or:
          sets.push_back(negate(negate(sets[node.lhs]) & negate(sets[node.rhs])));
          break;
        default:
          sets.push_back(leaf(node.op, node.index));
          break;
      }
    }
    return sets;
  }

 private:
  const ModalFrame& frame_;
  const FrameStructure& s_;
  ForcingOptions options_;
  std::size_t n_;
};

}  // namespace

bool forces(const ModalFrame& frame, SgElem x, const Term& t, ForcingOptions options) {
  DirectForcing direct(frame, options);
  return direct.forces(x, expand_or(t));
}

ElemSet truth_set(const ModalFrame& frame, const Term& t, ForcingOptions options) {
  TermDag dag;
  auto const root = dag.intern(t);
  return truth_sets(frame, dag, options)[root];
}

std::vector<ElemSet> truth_sets(const ModalFrame& frame, const TermDag& dag,
                                ForcingOptions options) {
  return IdealForcing(frame, options).run(dag);
}

std::vector<Elem> pc_values(const ModalFrame& frame, const TermDag& dag) {
  auto const& m = frame.structure->pc();
  auto const& L = m.base();
  std::vector<Elem> vals;
  vals.reserve(dag.size());
  for (auto const& node : dag.nodes()) {
    switch (node.op) {
      case Op::Var:
        vals.push_back(frame.assignment(node.index));
        break;
      case Op::Zero:
        vals.push_back(L.bot());
        break;
      case Op::One:
        vals.push_back(L.top());
        break;
      case Op::Neg:
        vals.push_back(L.neg(vals[node.lhs]));
        break;
      case Op::Box:
        vals.push_back(m.box(vals[node.lhs]));
        break;
      case Op::And:
        vals.push_back(L.meet(vals[node.lhs], vals[node.rhs]));
        break;
      case Op::Or:
        vals.push_back(L.join(vals[node.lhs], vals[node.rhs]));
        break;
      case Op::Meta:
        throw Error(ErrorCode::UnknownVariable, "schema metavariable in a frame term");
    }
  }
  return vals;
}

namespace {

CheckResult compare_sets(std::string id, std::string detail, const ElemSet& lhs,
                         const ElemSet& rhs) {
  CheckResult r{std::move(id), lhs == rhs, {}, std::move(detail)};
  if (!r.pass) {
    auto const diff = lhs ^ rhs;
    r.witness.emplace_back("x", static_cast<Elem>(diff.find_first()));
  }
  return r;
}

Valuation as_valuation(const ModalFrame& frame) { return Valuation{frame.u}; }

}  // namespace

Report verify_truth_set_clauses(const ModalFrame& frame, const Term& t, const Term& s) {
  auto const& st = *frame.structure;
  auto const& g = st.semigroup();
  auto const& m = st.pc();
  auto const v = as_valuation(frame);
  Elem const ut = eval_term(m, t, v);
  Elem const us = eval_term(m, s, v);
  Report r;

  r.items.push_back(compare_sets("P1", "u(t & s)G = u(t)G cap u(s)G",
                                 st.ideal(eval_term(m, conj(t, s), v)),
                                 st.ideal(ut) & st.ideal(us)));

  ElemSet annihilated(g.size());
  auto const& ideal_t = st.ideal(ut);
  for (SgElem x = 0; x < g.size(); ++x) {
    bool all = true;
    for (auto y = ideal_t.find_first(); y != ElemSet::npos && all; y = ideal_t.find_next(y)) {
      all = g.mul(g.star(static_cast<SgElem>(y)), x) == g.zero();
    }
    if (all) {
      annihilated.set(x);
    }
  }
  r.items.push_back(compare_sets("P2", "u(~t)G = {x : y*x = 0 for all y in u(t)G}",
                                 st.ideal(eval_term(m, neg(t), v)), annihilated));

  ElemSet central_union(g.size());
  for (Elem z : m.center()) {
    if (m.base().leq(z, ut)) {
      central_union |= st.ideal(z);
    }
  }
  r.items.push_back(compare_sets("P3", "u([]t)G = union of zG, z central, z <= u(t)",
                                 st.ideal(eval_term(m, box(t), v)), central_union));
  return r;
}

IdentityResult verify_truth_set_identity(const ModalFrame& frame, const TermEnumeration& terms,
                           ForcingOptions options) {
  auto const sets = truth_sets(frame, terms.dag, options);
  auto const vals = pc_values(frame, terms.dag);
  IdentityResult result;
  for (auto id : terms.roots) {
    ++result.checked;
    if (sets[id] != frame.structure->ideal(vals[id])) {
      if (result.failures++ == 0) {
        result.first_failure = terms.dag.term(id);
      }
    }
  }
  return result;
}

IdentityResult verify_truth_set_identity(const ModalFrame& frame, std::span<const Term> terms,
                           ForcingOptions options) {
  TermEnumeration e;
  for (auto const& t : terms) {
    e.roots.push_back(e.dag.intern(t));
  }
  return verify_truth_set_identity(frame, e, options);
}

std::vector<ModalFrame> generate_frames(std::shared_ptr<const FrameStructure> structure,
                                        const std::vector<unsigned>& vars, std::uint64_t seed,
                                        std::size_t max_frames) {
  std::size_t const k = structure->carrier().size();
  unsigned const width = vars.empty() ? 0 : *std::max_element(vars.begin(), vars.end());
  std::vector<ModalFrame> frames;
  std::size_t total = 1;
  bool exhaustive = true;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    total *= k;
    if (total > max_frames) {
      exhaustive = false;
      break;
    }
  }
  auto blank = [&]() { return ModalFrame{structure, std::vector<Elem>(width, kUnbound)}; };
  if (exhaustive) {
    for (std::size_t code = 0; code < total; ++code) {
      auto f = blank();
      std::size_t c = code;
      for (std::size_t i = vars.size(); i-- > 0;) {
        f.u[vars[i] - 1] = static_cast<Elem>(c % k);
        c /= k;
      }
      frames.push_back(std::move(f));
    }
    return frames;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, k - 1);
  for (std::size_t i = 0; i < max_frames; ++i) {
    auto f = blank();
    for (auto x : vars) {
      f.u[x - 1] = static_cast<Elem>(pick(rng));
    }
    frames.push_back(std::move(f));
  }
  return frames;
}

FrameConsequenceResult frame_consequence(std::span<const Term> theory, const Term& t,
                                         std::span<const ModalFrame> frames,
                                         ForcingOptions options) {
  TermDag dag;
  std::vector<std::uint32_t> premises;
  for (auto const& p : theory) {
    premises.push_back(dag.intern(p));
  }
  auto const goal = dag.intern(t);
  for (std::size_t i = 0; i < frames.size(); ++i) {
    auto const sets = truth_sets(frames[i], dag, options);
    bool all = true;
    for (auto p : premises) {
      all = all && sets[p].all();
    }
    if (all && !sets[goal].all()) {
      return {false, i};
    }
  }
  return {};
}

}  // namespace omql
