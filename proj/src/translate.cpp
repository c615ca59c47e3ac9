#include "nestedk/translate.hpp"

#include <algorithm>
#include <map>

#include "nestedk/rewriter.hpp"

namespace nestedk {

HilbertProof HilbertProof::taut(Formula f) {
  HilbertProof h;
  h.step = Step::Taut;
  h.a = f;
  return h;
}

HilbertProof HilbertProof::ax_k(Formula a, Formula b) {
  HilbertProof h;
  h.step = Step::AxK;
  h.a = a;
  h.b = b;
  return h;
}

HilbertProof HilbertProof::ax_4(std::size_t n, Formula a) {
  HilbertProof h;
  h.step = Step::Ax4;
  h.n = n;
  h.a = a;
  return h;
}

HilbertProof HilbertProof::mp(HilbertProof imp, HilbertProof ant) {
  HilbertProof h;
  h.step = Step::Mp;
  h.subs.push_back(std::move(imp));
  h.subs.push_back(std::move(ant));
  return h;
}

HilbertProof HilbertProof::nec(HilbertProof sub) {
  HilbertProof h;
  h.step = Step::Nec;
  h.subs.push_back(std::move(sub));
  return h;
}

namespace {

constexpr std::size_t kMaxUnits = 20;

// A propositional unit and its polarity: atoms and boxes are positive.
std::pair<Formula, bool> unit_of(Formula f) {
  switch (f.connective()) {
    case Connective::Atom:
    case Connective::Box: return {f, true};
    case Connective::NegAtom:
    case Connective::Dia: return {negate(f), false};
    default: throw std::logic_error("not a unit");
  }
}

void collect_units(Formula f, std::map<Formula, std::size_t>& units) {
  if (f.is_binary()) {
    collect_units(f.left(), units);
    collect_units(f.right(), units);
    return;
  }
  units.emplace(unit_of(f).first, units.size());
}

bool eval_prop(Formula f, const std::map<Formula, std::size_t>& units, std::uint32_t row) {
  switch (f.connective()) {
    case Connective::And: return eval_prop(f.left(), units, row) && eval_prop(f.right(), units, row);
    case Connective::Or: return eval_prop(f.left(), units, row) || eval_prop(f.right(), units, row);
    default: {
      auto [u, positive] = unit_of(f);
      bool v = (row >> units.at(u)) & 1U;
      return positive ? v : !v;
    }
  }
}

// Closes `s` on a complementary pair f, ~f at node `at` via an identity proof.
Proof close_pair(const Sequent& s, const Path& at, Formula f) {
  Sequent context = s;
  auto& fs = context.at(at).formulas;
  for (Formula g : {f, negate(f)}) {
    auto it = std::find(fs.begin(), fs.end(), g);
    if (it == fs.end()) throw std::logic_error("no complementary pair for " + to_string(f));
    fs.erase(it);
  }
  return reroot(gid_proof(context, at, f), s);
}

// Cut-free proof of a root-only sequent whose formula is a tautology.
Proof propositional_proof(const Sequent& s) {
  const auto& fs = s.formulas;
  for (std::uint32_t i = 0; i < fs.size(); ++i) {
    if (fs[i].connective() == Connective::Or) {
      RuleInstance r = or_rule({}, i);
      return Proof(s, r, {propositional_proof(premises_of(s, r)[0])});
    }
  }
  for (std::uint32_t i = 0; i < fs.size(); ++i) {
    if (fs[i].connective() == Connective::And) {
      RuleInstance r = and_rule({}, i);
      auto ps = premises_of(s, r);
      return Proof(s, r, {propositional_proof(ps[0]), propositional_proof(ps[1])});
    }
  }
  for (Formula f : fs) {
    if (std::find(fs.begin(), fs.end(), negate(f)) != fs.end()) return close_pair(s, {}, f);
  }
  throw HilbertError("not a tautology: " + to_string(s));
}

Proof apply(const Sequent& s, const RuleInstance& r, std::vector<Proof> premises) {
  auto expected = premises_of(s, r);
  for (std::size_t i = 0; i < premises.size(); ++i) premises[i] = reroot(premises[i], expected[i]);
  return Proof(s, r, std::move(premises));
}

std::uint32_t index_of(const Sequent& s, const Path& at, Formula f) {
  const auto& fs = s.at(at).formulas;
  auto it = std::find(fs.begin(), fs.end(), f);
  if (it == fs.end()) throw std::logic_error(to_string(f) + " not found at " + to_string(at));
  return static_cast<std::uint32_t>(it - fs.begin());
}

Proof axiom_k_proof(Formula a, Formula b) {
  Formula dia_ab = negate(Formula::box(implies(a, b)));
  Formula dia_na = Formula::dia(negate(a));
  Sequent s0 = singleton(axiom_k(a, b));
  RuleInstance r0 = or_rule({}, 0);
  Sequent s1 = premises_of(s0, r0)[0];
  RuleInstance r1 = or_rule({}, index_of(s1, {}, Formula::disj(dia_na, Formula::box(b))));
  Sequent s2 = premises_of(s1, r1)[0];
  RuleInstance r2 = box_rule({}, index_of(s2, {}, Formula::box(b)));
  Sequent s3 = premises_of(s2, r2)[0];
  RuleInstance r3 = dia_k_rule({}, index_of(s3, {}, dia_na), {0});
  Sequent s4 = premises_of(s3, r3)[0];
  RuleInstance r4 = dia_k_rule({}, index_of(s4, {}, dia_ab), {0});
  Sequent s5 = premises_of(s4, r4)[0];
  RuleInstance r5 = and_rule({0}, index_of(s5, {0}, dia_ab.body()));
  auto leaves = premises_of(s5, r5);
  Proof left = close_pair(leaves[0], {0}, a);
  Proof right = close_pair(leaves[1], {0}, b);
  Proof p5(s5, r5, {left, right});
  return Proof(s0, r0, {Proof(s1, r1, {Proof(s2, r2, {Proof(s3, r3, {Proof(s4, r4, {p5})})})})});
}

Sequent with_formula(Sequent s, const Path& at, Formula f) {
  s.at(at).formulas.push_back(f);
  return s;
}

// Dia4 along `spine` from the diamond at (position, index), decomposed until
// every index is in x. `premise` proves the conclusion plus the diamond at
// the end of the spine.
Proof emit_dia4(const Sequent& s, const Path& position, std::uint32_t index, const Path& spine,
                const Proof& premise, const AxiomSet& x) {
  std::size_t n = spine.size() + 1;
  Formula dia = s.at(position).formulas[index];
  if (x.count(n)) {
    return apply(s, dia_4_rule(position, index, spine), {premise});
  }
  auto split = decompose(x, n);
  if (!split) throw std::invalid_argument(std::to_string(n) + " is not in the completion");
  auto [m, l] = *split;
  Path outer(spine.begin(), spine.begin() + static_cast<std::ptrdiff_t>(l - 1));
  Path inner(spine.begin() + static_cast<std::ptrdiff_t>(l - 1), spine.end());
  Path middle = concat(position, outer);
  Sequent s1 = with_formula(s, middle, dia);
  auto new_index = static_cast<std::uint32_t>(s1.at(middle).formulas.size() - 1);
  Proof absorbed = weaken(premise, middle, singleton(dia));
  Proof upper = emit_dia4(s1, middle, new_index, inner, absorbed, x);
  return emit_dia4(s, position, index, outer, upper, x);
}

Proof collapse(const Proof& p, const AxiomSet& x) {
  auto premises = aligned_premises(p);
  for (auto& q : premises) q = collapse(q, x);
  const RuleInstance& r = p.rule();
  if (r.kind == RuleKind::Dia4 && !x.count(r.n)) {
    return emit_dia4(p.conclusion(), r.position, r.principal[0], r.spine, premises[0], x);
  }
  return Proof(p.conclusion(), r, std::move(premises));
}

Proof translate_k(const Proof& p) {
  const RuleInstance& r = p.rule();
  if (r.kind == RuleKind::Cut) throw std::invalid_argument("cannot translate a proof with cuts");
  auto premises = aligned_premises(p);
  for (auto& q : premises) q = translate_k(q);
  if (r.kind != RuleKind::DiaK || r.n < 2) return Proof(p.conclusion(), r, std::move(premises));
  const Sequent& s = p.conclusion();
  Formula dia = s.at(r.position).formulas[r.principal[0]];
  Path prefix(r.spine.begin(), r.spine.end() - 1);
  Path middle = concat(r.position, prefix);
  RuleInstance four = dia_4_rule(r.position, r.principal[0], prefix);
  Sequent s1 = premises_of(s, four)[0];
  auto new_index = static_cast<std::uint32_t>(s1.at(middle).formulas.size() - 1);
  RuleInstance one = dia_k_rule(middle, new_index, {r.spine.back()});
  Proof absorbed = weaken(premises[0], middle, singleton(dia));
  return Proof(s, four, {apply(s1, one, {absorbed})});
}

}  // namespace

bool is_tautology(Formula f) {
  std::map<Formula, std::size_t> units;
  collect_units(f, units);
  if (units.size() > kMaxUnits) throw HilbertError("too many propositional units");
  for (std::uint32_t row = 0; row < (1U << units.size()); ++row) {
    if (!eval_prop(f, units, row)) return false;
  }
  return true;
}

Formula axiom_4n(std::size_t n, Formula a) { return implies(dia_power(n, a), Formula::dia(a)); }

Formula axiom_k(Formula a, Formula b) {
  return implies(Formula::box(implies(a, b)), implies(Formula::box(a), Formula::box(b)));
}

Formula conclusion(const HilbertProof& h) {
  using Step = HilbertProof::Step;
  auto arity = [&](std::size_t k) {
    if (h.subs.size() != k) throw HilbertError("wrong number of subproofs");
  };
  switch (h.step) {
    case Step::Taut:
      arity(0);
      if (!is_tautology(h.a)) throw HilbertError("not a tautology: " + to_string(h.a));
      return h.a;
    case Step::AxK: arity(0); return axiom_k(h.a, h.b);
    case Step::Ax4:
      arity(0);
      if (h.n < 1) throw HilbertError("axiom 4 index must be positive");
      return axiom_4n(h.n, h.a);
    case Step::Mp: {
      arity(2);
      Formula imp = conclusion(h.subs[0]);
      Formula ant = conclusion(h.subs[1]);
      if (imp.connective() != Connective::Or || imp.left() != negate(ant)) {
        throw HilbertError("modus ponens: " + to_string(imp) + " is not an implication from " +
                           to_string(ant));
      }
      return imp.right();
    }
    case Step::Nec: arity(1); return Formula::box(conclusion(h.subs[0]));
  }
  throw HilbertError("unknown step");
}

Proof derive_axiom_4n(std::size_t n, Formula a) {
  if (n < 1) throw std::invalid_argument("axiom 4 index must be positive");
  Formula dia = Formula::dia(negate(a));
  std::vector<std::pair<Sequent, RuleInstance>> chain;
  Sequent s = singleton(Formula::disj(dia, box_power(n, a)));
  auto step = [&](RuleInstance r) {
    chain.emplace_back(s, r);
    s = premises_of(s, r)[0];
  };
  step(or_rule({}, 0));
  Path at;
  for (std::size_t i = 0; i < n; ++i) {
    step(box_rule(at, at.empty() ? 1 : 0));
    at.push_back(0);
  }
  step(dia_k_rule({}, 0, at));
  Sequent context = s;
  context.at(at).formulas.clear();
  Proof p = reroot(gid_proof(context, at, a), s);
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) p = Proof(it->first, it->second, {p});
  return p;
}

Proof lift_into_context(const Proof& p, const Sequent& wrapper, const Path& at) {
  const Sequent& hole = wrapper.at(at);
  Sequent c = wrapper;
  Sequent& node = c.at(at);
  node.formulas = p.conclusion().formulas;
  node.formulas.insert(node.formulas.end(), hole.formulas.begin(), hole.formulas.end());
  node.children = p.conclusion().children;
  node.children.insert(node.children.end(), hole.children.begin(), hole.children.end());
  RuleInstance r = p.rule();
  r.position = concat(at, r.position);
  std::vector<Proof> premises;
  for (const auto& q : p.premises()) premises.push_back(lift_into_context(q, wrapper, at));
  return Proof(std::move(c), std::move(r), std::move(premises));
}

Proof hilbert_to_nested(const HilbertProof& h, const AxiomSet& x) {
  using Step = HilbertProof::Step;
  Formula goal = conclusion(h);
  switch (h.step) {
    case Step::Taut: return propositional_proof(singleton(goal));
    case Step::AxK: return axiom_k_proof(h.a, h.b);
    case Step::Ax4: {
      if (h.n > 1 && !x.count(h.n)) {
        throw HilbertError("axiom 4 index " + std::to_string(h.n) + " is not in the axiom set");
      }
      Proof d = derive_axiom_4n(h.n, negate(h.a));
      return apply(singleton(goal), or_rule({}, 0), {d.premises()[0]});
    }
    case Step::Mp: {
      Formula ant = conclusion(h.subs[1]);
      Proof imp = invert(hilbert_to_nested(h.subs[0], x), Inversion::Or, {{}, 0});
      Proof pa = weaken(hilbert_to_nested(h.subs[1], x), {}, singleton(goal));
      return apply(singleton(goal), cut_rule({}, ant), {pa, imp});
    }
    case Step::Nec: {
      Sequent wrapper;
      wrapper.children.emplace_back();
      Proof lifted = lift_into_context(hilbert_to_nested(h.subs[0], x), wrapper, {0});
      return apply(singleton(goal), box_rule({}, 0), {lifted});
    }
  }
  throw HilbertError("unknown step");
}

Proof k_to_4(const Proof& p) { return translate_k(p); }

Proof collapse_completion(const Proof& p, const AxiomSet& x) {
  validate_axioms(x);
  return collapse(p, x);
}

}  // namespace nestedk
