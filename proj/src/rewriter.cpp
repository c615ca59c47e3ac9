#include "nestedk/rewriter.hpp"

#include <algorithm>
#include <stdexcept>

namespace nestedk {

namespace {

bool consumes(const RuleInstance& r, const Occurrence& o) {
  return (r.kind == RuleKind::Or || r.kind == RuleKind::And || r.kind == RuleKind::Box) &&
         r.position == o.node && r.principal[0] == o.index;
}

bool is_principal(const RuleInstance& r, const Occurrence& o) {
  return r.position == o.node &&
         std::find(r.principal.begin(), r.principal.end(), o.index) != r.principal.end();
}

/// Where a surviving occurrence of the conclusion sits in an aligned premise.
Occurrence in_premise(const RuleInstance& r, Occurrence o) {
  if (consumes(r, o)) throw std::logic_error("occurrence is consumed by the rule");
  if ((r.kind == RuleKind::Or || r.kind == RuleKind::And || r.kind == RuleKind::Box) &&
      r.position == o.node && o.index > r.principal[0]) {
    --o.index;
  }
  return o;
}

Sequent from_formulas(std::initializer_list<Formula> fs) {
  Sequent s;
  s.formulas.assign(fs);
  return s;
}

Sequent one_child(Sequent child) {
  Sequent s;
  s.children.push_back(std::move(child));
  return s;
}

Formula formula_at(const Sequent& s, const Occurrence& o) {
  const auto& fs = s.at(o.node).formulas;
  if (o.index >= fs.size()) {
    throw PathError("no formula " + std::to_string(o.index) + " at " + to_string(o.node));
  }
  return fs[o.index];
}

Path parent_of(const Path& p) {
  if (p.empty()) throw std::invalid_argument("the root has no parent");
  return Path(p.begin(), p.end() - 1);
}

}  // namespace

Proof gid_proof(const Sequent& context, const Path& at, Formula a) {
  Formula na = negate(a);
  Sequent c = plug(context, at, from_formulas({a, na}));
  auto k = static_cast<std::uint32_t>(context.at(at).formulas.size());
  switch (a.connective()) {
    case Connective::Atom: return Proof(c, id_rule(at, k, k + 1));
    case Connective::NegAtom: return Proof(c, id_rule(at, k + 1, k));
    case Connective::Box:
    case Connective::Dia: {
      bool a_box = a.connective() == Connective::Box;
      std::uint32_t xb = a_box ? k : k + 1;
      std::uint32_t xd = a_box ? k + 1 : k;
      Formula b = (a_box ? a : na).body();
      RuleInstance box = box_rule(at, xb);
      Sequent c1 = premises_of(c, box)[0];
      auto m = static_cast<std::uint32_t>(c1.at(at).children.size() - 1);
      Path child = concat(at, {m});
      RuleInstance dia = dia_k_rule(at, xd > xb ? xd - 1 : xd, {m});
      Sequent inner_context = c1;
      inner_context.at(child).formulas.clear();
      Proof inner = gid_proof(inner_context, child, b);
      return Proof(c, box, {Proof(c1, dia, {inner})});
    }
    case Connective::And:
    case Connective::Or: {
      bool a_and = a.connective() == Connective::And;
      std::uint32_t xa = a_and ? k : k + 1;
      std::uint32_t xo = a_and ? k + 1 : k;
      Formula conj = a_and ? a : na;
      RuleInstance orr = or_rule(at, xo);
      Sequent c1 = premises_of(c, orr)[0];
      RuleInstance andr = and_rule(at, xa > xo ? xa - 1 : xa);
      Proof left = gid_proof(plug(context, at, from_formulas({negate(conj.right())})), at,
                             conj.left());
      Proof right = gid_proof(plug(context, at, from_formulas({negate(conj.left())})), at,
                              conj.right());
      return Proof(c, orr, {Proof(c1, andr, {left, right})});
    }
  }
  throw std::logic_error("unreachable");
}

Sequent inverted(const Sequent& s, Inversion which, const Occurrence& at) {
  Formula f = formula_at(s, at);
  Connective want = which == Inversion::Or    ? Connective::Or
                    : which == Inversion::Box ? Connective::Box
                                              : Connective::And;
  if (f.connective() != want) {
    throw std::invalid_argument("inversion does not match " + to_string(f));
  }
  Sequent out = s;
  Sequent& node = out.at(at.node);
  node.formulas.erase(node.formulas.begin() + at.index);
  switch (which) {
    case Inversion::Or:
      node.formulas.push_back(f.left());
      node.formulas.push_back(f.right());
      break;
    case Inversion::AndLeft: node.formulas.push_back(f.left()); break;
    case Inversion::AndRight: node.formulas.push_back(f.right()); break;
    case Inversion::Box: node.children.push_back(singleton(f.body())); break;
  }
  return out;
}

namespace {

Relocation erase_relocation(const Sequent& s, const Occurrence& erased) {
  SequentEditor ed(s);
  ed.remove_formula(erased);
  return ed.relocation();
}

}  // namespace

Proof invert(const Proof& p, Inversion which, const Occurrence& at) {
  Sequent target = inverted(p.conclusion(), which, at);
  const RuleInstance& r = p.rule();
  auto premises = aligned_premises(p);
  if (consumes(r, at)) {
    return reroot(premises[which == Inversion::AndRight ? 1 : 0], target);
  }
  RuleInstance r2 = relocate(r, erase_relocation(p.conclusion(), at));
  std::vector<Proof> out;
  out.reserve(premises.size());
  for (const auto& q : premises) out.push_back(invert(q, which, in_premise(r, at)));
  return Proof(std::move(target), std::move(r2), std::move(out));
}

Proof weaken(const Proof& p, const Path& at, const Sequent& extra) {
  if (extra.empty()) return p;
  Sequent target = plug(p.conclusion(), at, extra);
  auto premises = aligned_premises(p);
  for (auto& q : premises) q = weaken(q, at, extra);
  return Proof(std::move(target), p.rule(), std::move(premises));
}

Proof medial(const Proof& p, const Path& keep, const Path& drop) {
  if (keep == drop || parent_of(keep) != parent_of(drop)) {
    throw std::invalid_argument("medial needs two distinct siblings");
  }
  SequentEditor ed(p.conclusion());
  ed.move_content(drop, keep);
  RuleInstance r2 = relocate(p.rule(), ed.relocation());
  auto premises = aligned_premises(p);
  for (auto& q : premises) q = medial(q, keep, drop);
  return Proof(ed.result(), std::move(r2), std::move(premises));
}

namespace {

/// A pending contraction in the coordinates of the current conclusion.
struct Pair {
  bool child = false;
  Occurrence keep_formula;
  Occurrence drop_formula;
  Path keep_child;
  Path drop_child;
};

Proof contract_pairs(Proof q, std::vector<Pair> pairs) {
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    SequentEditor ed(q.conclusion());
    const Pair& pr = pairs[i];
    if (pr.child) {
      ed.remove_subtree(pr.drop_child);
      q = contract_child(q, pr.keep_child, pr.drop_child);
    } else {
      ed.remove_formula(pr.drop_formula);
      q = contract_formula(q, pr.keep_formula, pr.drop_formula);
    }
    Relocation r = ed.relocation();
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      Pair& later = pairs[j];
      if (later.child) {
        later.keep_child = r.node_or_throw(later.keep_child);
        later.drop_child = r.node_or_throw(later.drop_child);
      } else {
        later.keep_formula = r.formula_or_throw(later.keep_formula);
        later.drop_formula = r.formula_or_throw(later.drop_formula);
      }
    }
  }
  return q;
}

}  // namespace

Proof contract_formula(const Proof& p, const Occurrence& keep_in, const Occurrence& drop_in) {
  const Sequent& c = p.conclusion();
  if (keep_in.node != drop_in.node || keep_in.index == drop_in.index ||
      formula_at(c, keep_in) != formula_at(c, drop_in)) {
    throw std::invalid_argument("contraction needs two copies of one formula in one node");
  }
  SequentEditor exact(c);
  exact.remove_formula(drop_in);
  Sequent target = exact.result();

  Occurrence keep = keep_in;
  Occurrence drop = drop_in;
  const RuleInstance& r = p.rule();
  if (consumes(r, keep)) std::swap(keep, drop);
  SequentEditor ed(c);
  ed.remove_formula(drop);
  Sequent here = ed.result();
  Relocation reloc = ed.relocation();
  auto premises = aligned_premises(p);

  if (!consumes(r, drop)) {
    RuleInstance moved = r;
    if (r.position == drop.node) {
      for (auto& idx : moved.principal) {
        if (idx == drop.index) idx = keep.index;
      }
    }
    RuleInstance r2 = relocate(moved, reloc);
    for (auto& q : premises) q = contract_formula(q, in_premise(r, keep), in_premise(r, drop));
    return reroot(Proof(here, std::move(r2), std::move(premises)), target);
  }

  // The rule decomposes `drop`: decompose `keep` too and contract the parts.
  Occurrence keep_p = in_premise(r, keep);
  const Path& node = drop.node;
  RuleInstance r2 = r;
  r2.principal = {reloc.formula_or_throw(keep).index};
  std::vector<Proof> out;
  for (std::size_t i = 0; i < premises.size(); ++i) {
    const Proof& q = premises[i];
    auto size_before = static_cast<std::uint32_t>(q.conclusion().at(node).formulas.size());
    auto children_before = static_cast<std::uint32_t>(q.conclusion().at(node).children.size());
    if (r.kind == RuleKind::Box) {
      Proof inv = invert(q, Inversion::Box, keep_p);
      Path old_child = concat(node, {children_before - 1});
      Path new_child = concat(node, {children_before});
      out.push_back(contract_child(inv, old_child, new_child));
      continue;
    }
    Inversion which = r.kind == RuleKind::Or ? Inversion::Or
                      : i == 0               ? Inversion::AndLeft
                                             : Inversion::AndRight;
    Proof inv = invert(q, which, keep_p);
    // The rule appended `parts` formulas; inversion erased keep_p (which sits
    // before them) and appended `parts` more.
    std::uint32_t parts = r.kind == RuleKind::Or ? 2 : 1;
    std::vector<Pair> pairs;
    for (std::uint32_t j = 0; j < parts; ++j) {
      Pair pr;
      pr.keep_formula = {node, size_before - parts - 1 + j};
      pr.drop_formula = {node, size_before - 1 + j};
      pairs.push_back(pr);
    }
    out.push_back(contract_pairs(inv, pairs));
  }
  return reroot(Proof(here, std::move(r2), std::move(out)), target);
}

Proof contract_child(const Proof& p, const Path& keep, const Path& drop) {
  const Sequent& c = p.conclusion();
  if (keep == drop || parent_of(keep) != parent_of(drop) || !(c.at(keep) == c.at(drop))) {
    throw std::invalid_argument("contraction needs two equal sibling children");
  }
  SequentEditor exact(c);
  exact.remove_subtree(drop);
  Sequent target = exact.result();

  Relocation iso = match(c.at(drop), c.at(keep));
  SequentEditor ed(c);
  ed.move_content(drop, keep);
  Relocation merged = ed.relocation();
  Proof q = medial(p, keep, drop);

  std::vector<Pair> pairs;
  const Sequent& d = c.at(drop);
  for (std::uint32_t i = 0; i < d.formulas.size(); ++i) {
    Pair pr;
    pr.keep_formula = merged.formula_or_throw({keep, iso.formula_or_throw({{}, i}).index});
    pr.drop_formula = merged.formula_or_throw({drop, i});
    pairs.push_back(pr);
  }
  for (std::uint32_t i = 0; i < d.children.size(); ++i) {
    Pair pr;
    pr.child = true;
    pr.keep_child = merged.node_or_throw(concat(keep, iso.node_or_throw({i})));
    pr.drop_child = merged.node_or_throw(concat(drop, {i}));
    pairs.push_back(pr);
  }
  return reroot(contract_pairs(q, std::move(pairs)), target);
}

Proof contract(const Proof& p, const Path& at, const Sequent& dup) {
  const Sequent& node = p.conclusion().at(at);
  for (const auto& f : dup.formulas) {
    auto have = std::count(node.formulas.begin(), node.formulas.end(), f);
    auto need = std::count(dup.formulas.begin(), dup.formulas.end(), f);
    if (have < 2 * need) throw std::invalid_argument("contract: not enough copies of " + to_string(f));
  }
  for (const auto& d : dup.children) {
    auto have = std::count(node.children.begin(), node.children.end(), d);
    auto need = std::count(dup.children.begin(), dup.children.end(), d);
    if (have < 2 * need) throw std::invalid_argument("contract: not enough copies of [" + to_string(d) + "]");
  }
  Proof q = p;
  for (const auto& f : dup.formulas) {
    const auto& fs = q.conclusion().at(at).formulas;
    std::vector<std::uint32_t> copies;
    for (std::uint32_t i = 0; i < fs.size(); ++i) {
      if (fs[i] == f) copies.push_back(i);
    }
    q = contract_formula(q, {at, copies[copies.size() - 2]}, {at, copies.back()});
  }
  for (const auto& d : dup.children) {
    const auto& cs = q.conclusion().at(at).children;
    std::vector<std::uint32_t> copies;
    for (std::uint32_t i = 0; i < cs.size(); ++i) {
      if (cs[i] == d) copies.push_back(i);
    }
    q = contract_child(q, concat(at, {copies[copies.size() - 2]}), concat(at, {copies.back()}));
  }
  return q;
}

Proof dia_inv_k(const Proof& p, const Occurrence& dia, const Path& spine) {
  Formula f = formula_at(p.conclusion(), dia);
  if (f.connective() != Connective::Dia || spine.empty()) {
    throw std::invalid_argument("dia_inv_k needs a diamond and a nonempty spine");
  }
  return weaken(p, concat(dia.node, spine), singleton(f.body()));
}

Proof cut_inv(const Proof& p, const Path& at, Formula a) { return weaken(p, at, singleton(a)); }

namespace {

/// Sinks the child at `d` to depth n below its parent through fresh empty
/// nodes. Propagations crossing into it lengthen by n - 1.
Proof sink(const Proof& p, const Path& d, std::size_t n) {
  SequentEditor ed(p.conclusion());
  ed.sink(d, n);
  RuleInstance r2 = relocate(p.rule(), ed.relocation());
  auto premises = aligned_premises(p);
  for (auto& q : premises) q = sink(q, d, n);
  return Proof(ed.result(), std::move(r2), std::move(premises));
}

Sequent without_child(Sequent s, std::uint32_t i) {
  s.children.erase(s.children.begin() + i);
  return s;
}

}  // namespace

Proof boxtimes(const Proof& p, std::size_t n, const Path& merge_source, const Path& spine,
               const SystemSpec& sys) {
  const Sequent& c = p.conclusion();
  if (n < 1 || spine.size() != n) throw std::invalid_argument("boxtimes: spine length must be n");
  if (n > 1 && (sys.family != Family::DiaK || !sys.completed ||
                !completion_contains(sys.axioms, n))) {
    throw std::invalid_argument("boxtimes: index " + std::to_string(n) +
                                " needs a completed dia_k system containing it");
  }
  Path parent = parent_of(merge_source);
  if (spine[0] == merge_source.back()) throw std::invalid_argument("boxtimes: spine enters the source");
  Path end = concat(parent, spine);
  c.at(merge_source);
  c.at(end);
  SequentEditor exact(c);
  exact.move_content(merge_source, end);
  Sequent target = exact.result();

  if (n == 1) return medial(p, end, merge_source);

  if (!sys.axioms.count(n)) {
    auto [m, l] = *decompose(sys.axioms, n);
    Path mid = concat(parent, Path(spine.begin(), spine.begin() + static_cast<std::ptrdiff_t>(m - 1)));
    auto fresh = static_cast<std::uint32_t>(c.at(mid).children.size());
    Proof q0 = weaken(p, mid, one_child({}));
    Path e = concat(mid, {fresh});
    Path to_e(e.begin() + static_cast<std::ptrdiff_t>(parent.size()), e.end());
    SequentEditor step(q0.conclusion());
    step.move_content(merge_source, e);
    Relocation r = step.relocation();
    Proof q1 = boxtimes(q0, m, merge_source, to_e, sys);
    Path e1 = r.node_or_throw(e);
    Path mid1 = r.node_or_throw(mid);
    Path end1 = r.node_or_throw(end);
    Path rest(end1.begin() + static_cast<std::ptrdiff_t>(mid1.size()), end1.end());
    return reroot(boxtimes(q1, l, e1, rest, sys), target);
  }

  // Sink the source into a fresh chain, fill the chain with copies of the
  // spine's content, then contract the two equal chains.
  Proof q = sink(p, merge_source, n);
  Path node_i = parent;
  Path copy_i = merge_source;
  for (std::size_t i = 1; i <= n; ++i) {
    node_i.push_back(spine[i - 1]);
    if (i < n) {
      q = weaken(q, copy_i, without_child(c.at(node_i), spine[i]));
      copy_i.push_back(0);
    } else {
      q = weaken(q, copy_i, c.at(node_i));
      q = weaken(q, node_i, c.at(merge_source));
    }
  }
  return reroot(contract_child(q, concat(parent, {spine[0]}), merge_source), target);
}

namespace {

class CutReducer {
 public:
  CutReducer(const SystemSpec& sys, std::optional<std::size_t> keep_bound, CutStats* stats)
      : sys_(sys), keep_bound_(keep_bound), stats_(stats) {}

  /// Topmost cuts above the bound are reduced first.
  Proof lower(const Proof& p) {
    if (p.cut_count() == 0 || (keep_bound_ && p.cut_rank() <= *keep_bound_)) return p;
    std::vector<Proof> premises;
    premises.reserve(p.premises().size());
    for (const auto& q : p.premises()) premises.push_back(lower(q));
    const RuleInstance& r = p.rule();
    if (r.kind == RuleKind::Cut && !small(*r.cut_formula)) {
      return reduce(p.conclusion(), r.position, *r.cut_formula, premises[0], premises[1]);
    }
    return Proof(p.conclusion(), r, std::move(premises));
  }

 private:
  bool small(Formula f) const { return keep_bound_ && f.degree() <= *keep_bound_; }

  Proof make_cut(const Sequent& c, const Path& pos, Formula f, const Proof& p1, const Proof& p2) {
    if (small(f)) return Proof(c, cut_rule(pos, f), {p1, p2});
    return reduce(c, pos, f, p1, p2);
  }

  /// Proof of c from p1 of c + f and p2 of c + ~f, both at pos.
  Proof reduce(const Sequent& c, const Path& pos, Formula f, Proof p1, Proof p2) {
    if (stats_) ++stats_->reductions;
    Formula nf = negate(f);
    p1 = reroot(p1, plug(c, pos, singleton(f)));
    p2 = reroot(p2, plug(c, pos, singleton(nf)));
    Occurrence o{pos, static_cast<std::uint32_t>(c.at(pos).formulas.size())};
    const RuleInstance& r1 = p1.rule();
    const RuleInstance& r2 = p2.rule();
    if (r1.kind == RuleKind::Id && is_principal(r1, o)) return axiom_cut(r1, o, p2);
    if (r2.kind == RuleKind::Id && is_principal(r2, o)) return axiom_cut(r2, o, p1);
    if (!is_principal(r1, o)) return permute(c, pos, f, p1, p2);
    if (!is_principal(r2, o)) return permute(c, pos, nf, p2, p1);
    switch (f.connective()) {
      case Connective::Or: return or_and(c, pos, f, p1, p2);
      case Connective::And: return or_and(c, pos, nf, p2, p1);
      case Connective::Box:
        if (r2.kind == RuleKind::DiaK) return box_dia(c, pos, f, p1, p2);
        break;
      case Connective::Dia:
        if (r1.kind == RuleKind::DiaK) return box_dia(c, pos, nf, p2, p1);
        break;
      default: break;
    }
    throw std::invalid_argument("cut reduction: unsupported principal rule " +
                                rule_name(r1.kind) + "/" + rule_name(r2.kind));
  }

  // One side is an axiom on the cut formula p; the other proves c + p with p
  // already present in c.
  Proof axiom_cut(const RuleInstance& axiom, const Occurrence& o, const Proof& other) {
    std::uint32_t partner = axiom.principal[0] == o.index ? axiom.principal[1] : axiom.principal[0];
    return contract_formula(other, {o.node, partner}, o);
  }

  Proof permute(const Sequent& c, const Path& pos, Formula f, const Proof& p1, const Proof& p2) {
    const RuleInstance& r = p1.rule();
    if (r.kind == RuleKind::Id) return Proof(c, r);
    auto above = aligned_premises(p1);
    auto below = premises_of(c, r);
    std::vector<Proof> out;
    for (std::size_t i = 0; i < above.size(); ++i) {
      Proof side = adapt(p2, r, i);
      out.push_back(reduce(below[i], pos, f, above[i], side));
    }
    return Proof(c, r, std::move(out));
  }

  // p2 edited the way rule r edits its conclusion towards premise i.
  Proof adapt(const Proof& p2, const RuleInstance& r, std::size_t i) {
    const Sequent& s = p2.conclusion();
    switch (r.kind) {
      case RuleKind::Or: return invert(p2, Inversion::Or, {r.position, r.principal[0]});
      case RuleKind::And:
        return invert(p2, i == 0 ? Inversion::AndLeft : Inversion::AndRight,
                      {r.position, r.principal[0]});
      case RuleKind::Box: return invert(p2, Inversion::Box, {r.position, r.principal[0]});
      case RuleKind::DiaK: {
        Formula d = formula_at(s, {r.position, r.principal[0]});
        return weaken(p2, r.target(), singleton(d.body()));
      }
      case RuleKind::Dia4: {
        Formula d = formula_at(s, {r.position, r.principal[0]});
        return weaken(p2, r.target(), singleton(d));
      }
      case RuleKind::Cut: {
        Formula g = i == 0 ? *r.cut_formula : negate(*r.cut_formula);
        return weaken(p2, r.position, singleton(g));
      }
      case RuleKind::Id: break;
    }
    throw std::logic_error("unreachable");
  }

  Proof or_and(const Sequent& c, const Path& pos, Formula f, const Proof& p1, const Proof& p2) {
    Proof both = aligned_premises(p1)[0];
    auto sides = aligned_premises(p2);
    Sequent with_b = plug(c, pos, singleton(f.right()));
    Proof inner = make_cut(with_b, pos, f.left(), both, weaken(sides[0], pos, singleton(f.right())));
    return make_cut(c, pos, f.right(), inner, sides[1]);
  }

  Proof box_dia(const Sequent& c, const Path& pos, Formula f, const Proof& p1, const Proof& p2) {
    const RuleInstance& r2 = p2.rule();
    Formula b = f.body();
    Occurrence o{pos, static_cast<std::uint32_t>(c.at(pos).formulas.size())};
    Path target = r2.target();

    Proof opened = invert(p1, Inversion::Box, o);
    Path source = concat(pos, {static_cast<std::uint32_t>(c.at(pos).children.size())});
    Proof merged = boxtimes(opened, r2.n, source, r2.spine, sys_);

    Proof widened = weaken(p1, target, singleton(negate(b)));
    Proof above = aligned_premises(p2)[0];
    Proof narrowed = reduce(plug(c, target, singleton(negate(b))), pos, f, widened, above);
    return make_cut(c, target, b, merged, narrowed);
  }

  const SystemSpec& sys_;
  std::optional<std::size_t> keep_bound_;
  CutStats* stats_;
};

}  // namespace

Proof reduce_cut_rank(const Proof& p, const SystemSpec& sys, CutStats* stats) {
  if (p.cut_rank() == 0) return p;
  if (stats) ++stats->stages;
  return CutReducer(sys, p.cut_rank() - 1, stats).lower(p);
}

Proof eliminate_cuts(const Proof& p, const SystemSpec& sys, CutStats* stats) {
  Proof q = p;
  while (q.cut_rank() > 0) q = reduce_cut_rank(q, sys, stats);
  if (q.cut_count() > 0) {
    if (stats) ++stats->stages;
    q = CutReducer(sys, std::nullopt, stats).lower(q);
  }
  return q;
}

}  // namespace nestedk
