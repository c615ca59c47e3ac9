#include "nestedk/kernel.hpp"

#include <algorithm>

namespace nestedk {

std::string rule_name(RuleKind kind) {
  switch (kind) {
    case RuleKind::Id: return "id";
    case RuleKind::Or: return "or";
    case RuleKind::And: return "and";
    case RuleKind::Box: return "box";
    case RuleKind::DiaK: return "dia_k";
    case RuleKind::Dia4: return "dia_4";
    case RuleKind::Cut: return "cut";
  }
  return "?";
}

RuleInstance id_rule(Path position, std::uint32_t atom_index, std::uint32_t negated_index) {
  return {RuleKind::Id, 0, std::nullopt, std::move(position), {atom_index, negated_index}, {}};
}

RuleInstance or_rule(Path position, std::uint32_t index) {
  return {RuleKind::Or, 0, std::nullopt, std::move(position), {index}, {}};
}

RuleInstance and_rule(Path position, std::uint32_t index) {
  return {RuleKind::And, 0, std::nullopt, std::move(position), {index}, {}};
}

RuleInstance box_rule(Path position, std::uint32_t index) {
  return {RuleKind::Box, 0, std::nullopt, std::move(position), {index}, {}};
}

RuleInstance dia_k_rule(Path position, std::uint32_t index, Path spine) {
  std::size_t n = spine.size();
  return {RuleKind::DiaK, n, std::nullopt, std::move(position), {index}, std::move(spine)};
}

RuleInstance dia_4_rule(Path position, std::uint32_t index, Path spine) {
  std::size_t n = spine.size() + 1;
  return {RuleKind::Dia4, n, std::nullopt, std::move(position), {index}, std::move(spine)};
}

RuleInstance cut_rule(Path position, Formula cut_formula) {
  return {RuleKind::Cut, 0, cut_formula, std::move(position), {}, {}};
}

namespace {

Formula principal_formula(const Sequent& node, const RuleInstance& rule, std::size_t k,
                          Connective expected) {
  if (rule.principal.size() <= k) throw RuleError(rule_name(rule.kind) + ": missing principal");
  auto idx = rule.principal[k];
  if (idx >= node.formulas.size()) {
    throw RuleError(rule_name(rule.kind) + ": principal index " + std::to_string(idx) +
                    " out of range");
  }
  Formula f = node.formulas[idx];
  if (f.connective() != expected) {
    throw RuleError(rule_name(rule.kind) + ": principal " + to_string(f) + " has the wrong shape");
  }
  return f;
}

void expect_principals(const RuleInstance& rule, std::size_t count) {
  if (rule.principal.size() != count) {
    throw RuleError(rule_name(rule.kind) + ": expected " + std::to_string(count) +
                    " principal indices");
  }
}

struct Edit {
  // Erased formula index at `position`, if any.
  std::optional<std::uint32_t> erased;
  std::vector<std::pair<Path, Formula>> formulas;
  std::optional<Sequent> child;
};

std::vector<Edit> edits_of(const Sequent& conclusion, const RuleInstance& rule) {
  const Sequent& node = conclusion.at(rule.position);
  switch (rule.kind) {
    case RuleKind::Id: {
      expect_principals(rule, 2);
      Formula a = principal_formula(node, rule, 0, Connective::Atom);
      Formula b = principal_formula(node, rule, 1, Connective::NegAtom);
      if (a.atom_id() != b.atom_id()) throw RuleError("id: principals are not complementary");
      return {};
    }
    case RuleKind::Or: {
      expect_principals(rule, 1);
      Formula f = principal_formula(node, rule, 0, Connective::Or);
      return {Edit{rule.principal[0], {{rule.position, f.left()}, {rule.position, f.right()}}, {}}};
    }
    case RuleKind::And: {
      expect_principals(rule, 1);
      Formula f = principal_formula(node, rule, 0, Connective::And);
      return {Edit{rule.principal[0], {{rule.position, f.left()}}, {}},
              Edit{rule.principal[0], {{rule.position, f.right()}}, {}}};
    }
    case RuleKind::Box: {
      expect_principals(rule, 1);
      Formula f = principal_formula(node, rule, 0, Connective::Box);
      return {Edit{rule.principal[0], {}, singleton(f.body())}};
    }
    case RuleKind::DiaK:
    case RuleKind::Dia4: {
      expect_principals(rule, 1);
      Formula f = principal_formula(node, rule, 0, Connective::Dia);
      bool k = rule.kind == RuleKind::DiaK;
      if (k ? rule.n < 1 : rule.n < 2) throw RuleError(rule_name(rule.kind) + ": index too small");
      if (rule.spine.size() != (k ? rule.n : rule.n - 1)) {
        throw RuleError(rule_name(rule.kind) + ": spine length does not match the index");
      }
      Path target = rule.target();
      conclusion.at(target);
      return {Edit{std::nullopt, {{target, k ? f.body() : f}}, {}}};
    }
    case RuleKind::Cut: {
      expect_principals(rule, 0);
      if (!rule.cut_formula) throw RuleError("cut: missing cut formula");
      return {Edit{std::nullopt, {{rule.position, *rule.cut_formula}}, {}},
              Edit{std::nullopt, {{rule.position, negate(*rule.cut_formula)}}, {}}};
    }
  }
  throw RuleError("unknown rule");
}

Sequent apply_edit(Sequent s, const RuleInstance& rule, const Edit& e) {
  if (e.erased) {
    auto& fs = s.at(rule.position).formulas;
    fs.erase(fs.begin() + *e.erased);
  }
  for (const auto& [path, f] : e.formulas) s.at(path).formulas.push_back(f);
  if (e.child) s.at(rule.position).children.push_back(*e.child);
  return s;
}

void identity_relocation(const Sequent& s, Path& path, const RuleInstance& rule,
                         std::optional<std::uint32_t> erased, Relocation& out) {
  out.map_node(path, path);
  bool here = erased && path == rule.position;
  for (std::uint32_t i = 0; i < s.formulas.size(); ++i) {
    if (here && i == *erased) continue;
    out.map_formula({path, i}, {path, here && i > *erased ? i - 1 : i});
  }
  for (std::uint32_t i = 0; i < s.children.size(); ++i) {
    path.push_back(i);
    identity_relocation(s.children[i], path, rule, erased, out);
    path.pop_back();
  }
}

}  // namespace

std::vector<Sequent> premises_of(const Sequent& conclusion, const RuleInstance& rule) {
  std::vector<Sequent> out;
  for (const auto& e : edits_of(conclusion, rule)) out.push_back(apply_edit(conclusion, rule, e));
  return out;
}

PremiseEdit premise_edit(const Sequent& conclusion, const RuleInstance& rule, std::size_t i) {
  auto edits = edits_of(conclusion, rule);
  if (i >= edits.size()) throw RuleError(rule_name(rule.kind) + ": no premise " + std::to_string(i));
  const Edit& e = edits[i];
  PremiseEdit out{apply_edit(conclusion, rule, e), {}, {}};
  Path root;
  identity_relocation(conclusion, root, rule, e.erased, out.relocation);
  // Appended formulas sit at the end of their nodes, in edit order.
  std::map<Path, std::uint32_t> appended;
  for (const auto& [path, f] : e.formulas) appended[path]++;
  std::map<Path, std::uint32_t> seen;
  for (const auto& [path, f] : e.formulas) {
    auto total = static_cast<std::uint32_t>(out.sequent.at(path).formulas.size());
    out.added.push_back({path, total - appended[path] + seen[path]++});
  }
  if (e.child) {
    Path child = rule.position;
    child.push_back(static_cast<std::uint32_t>(out.sequent.at(rule.position).children.size() - 1));
    for (std::uint32_t j = 0; j < e.child->formulas.size(); ++j) out.added.push_back({child, j});
  }
  return out;
}

RuleInstance relocate(const RuleInstance& rule, const Relocation& r) {
  RuleInstance out = rule;
  out.position = r.node_or_throw(rule.position);
  for (auto& idx : out.principal) {
    Occurrence o = r.formula_or_throw({rule.position, idx});
    if (o.node != out.position) throw RuleError("relocation separates principal formulas");
    idx = o.index;
  }
  if (!rule.spine.empty()) {
    Path target = r.node_or_throw(rule.target());
    if (!is_prefix(out.position, target) || target.size() == out.position.size()) {
      throw RuleError("relocation breaks the spine");
    }
    out.spine.assign(target.begin() + static_cast<std::ptrdiff_t>(out.position.size()),
                     target.end());
    if (rule.kind == RuleKind::DiaK) out.n = out.spine.size();
    if (rule.kind == RuleKind::Dia4) out.n = out.spine.size() + 1;
  }
  return out;
}

Proof::Proof(Sequent conclusion, RuleInstance rule, std::vector<Proof> premises) {
  auto node = std::make_shared<Node>();
  node->conclusion = std::move(conclusion);
  node->rule = std::move(rule);
  node->premises = std::move(premises);
  if (node->rule.kind == RuleKind::Cut && node->rule.cut_formula) {
    node->cut_rank = node->rule.cut_formula->degree();
    node->cut_count = 1;
  }
  for (const auto& p : node->premises) {
    node->height = std::max(node->height, p.height() + 1);
    node->cut_rank = std::max(node->cut_rank, p.cut_rank());
    node->size += p.size();
    node->cut_count += p.cut_count();
  }
  node_ = std::move(node);
}

std::size_t cuts_of_rank(const Proof& p, std::size_t r) {
  if (p.cut_count() == 0) return 0;
  std::size_t n = 0;
  const auto& rule = p.rule();
  if (rule.kind == RuleKind::Cut && rule.cut_formula && rule.cut_formula->degree() == r) ++n;
  for (const auto& q : p.premises()) n += cuts_of_rank(q, r);
  return n;
}

Proof reroot(const Proof& p, const Sequent& conclusion) {
  if (identical(p.conclusion(), conclusion)) return p;
  Relocation r = match(p.conclusion(), conclusion);
  return Proof(conclusion, relocate(p.rule(), r), p.premises());
}

std::vector<Proof> aligned_premises(const Proof& p) {
  auto expected = premises_of(p.conclusion(), p.rule());
  if (expected.size() != p.premises().size()) throw RuleError("premise count mismatch");
  std::vector<Proof> out;
  out.reserve(expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) out.push_back(reroot(p.premises()[i], expected[i]));
  return out;
}

bool SystemSpec::admits(RuleKind kind, std::size_t n) const {
  auto member = [&] { return axioms.count(n) > 0 || (completed && completion_contains(axioms, n)); };
  switch (kind) {
    case RuleKind::DiaK: return n == 1 || (family == Family::DiaK && n > 1 && member());
    case RuleKind::Dia4: return family == Family::Dia4 && n > 1 && member();
    case RuleKind::Cut: return cut_allowed;
    default: return true;
  }
}

std::string to_string(const SystemSpec& sys) {
  std::string out = sys.family == Family::DiaK ? "nK+dia_k" : "nK+dia_4";
  out += "{" + to_string(sys.axioms) + "}";
  if (sys.completed) out += "^";
  if (sys.cut_allowed) {
    out += "+cut";
    if (sys.cut_rank_bound) out += "_" + std::to_string(*sys.cut_rank_bound);
  }
  return out;
}

namespace {

std::optional<Violation> check_node(const Proof& p, const SystemSpec& sys,
                                    std::vector<std::size_t>& where) {
  auto fail = [&](std::string reason) { return Violation{where, std::move(reason)}; };
  const auto& rule = p.rule();
  if (!sys.admits(rule.kind, rule.n)) {
    std::string name = rule_name(rule.kind);
    if (rule.kind == RuleKind::DiaK || rule.kind == RuleKind::Dia4) {
      name += "(" + std::to_string(rule.n) + ")";
    }
    return fail(name + " is not a rule of " + to_string(sys));
  }
  if (rule.kind == RuleKind::Cut && sys.cut_rank_bound && rule.cut_formula &&
      rule.cut_formula->degree() > *sys.cut_rank_bound) {
    return fail("cut formula exceeds the cut-rank bound");
  }
  std::vector<Sequent> expected;
  try {
    expected = premises_of(p.conclusion(), rule);
  } catch (const std::exception& e) {
    return fail(e.what());
  }
  if (expected.size() != p.premises().size()) {
    return fail("expected " + std::to_string(expected.size()) + " premises, found " +
                std::to_string(p.premises().size()));
  }
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (!(expected[i] == p.premises()[i].conclusion())) {
      return fail("premise " + std::to_string(i) + " is " +
                  to_string(p.premises()[i].conclusion()) + " but the rule yields " +
                  to_string(expected[i]));
    }
  }
  for (std::size_t i = 0; i < expected.size(); ++i) {
    where.push_back(i);
    if (auto v = check_node(p.premises()[i], sys, where)) return v;
    where.pop_back();
  }
  return std::nullopt;
}

}  // namespace

std::optional<Violation> check(const Proof& p, const SystemSpec& sys) {
  std::vector<std::size_t> where;
  return check_node(p, sys, where);
}

}  // namespace nestedk
