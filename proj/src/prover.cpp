#include "nestedk/prover.hpp"

#include <cstdlib>
#include <functional>
#include <unordered_set>

namespace nestedk {

Budget default_budget() {
  Budget b;
  if (const char* env = std::getenv("NESTEDK_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) b.max_steps = static_cast<std::size_t>(v);
  }
  return b;
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Proved: return "proved";
    case Outcome::Refuted: return "refuted";
    case Outcome::Unknown: return "unknown";
  }
  return "?";
}

namespace {

/// Search bookkeeping mirroring the sequent tree node for node.
struct Trace {
  std::unordered_set<Formula> seen;
  std::unordered_set<Formula> expanded;
  bool block_checked = false;
  std::optional<Path> blocker;
  std::vector<Trace> children;
};

struct Branch {
  Sequent s;
  Trace t;
};

Trace& trace_at(Trace& t, const Path& p) {
  Trace* node = &t;
  for (auto step : p) node = &node->children[step];
  return *node;
}

struct Walk {
  const Sequent* node;
  Trace* trace;
  Path path;
};

std::vector<Walk> preorder(Branch& b) {
  std::vector<Walk> out;
  std::vector<Walk> stack{{&b.s, &b.t, {}}};
  while (!stack.empty()) {
    Walk w = stack.back();
    stack.pop_back();
    out.push_back(w);
    for (std::size_t i = w.node->children.size(); i-- > 0;) {
      Path child = w.path;
      child.push_back(static_cast<std::uint32_t>(i));
      stack.push_back({&w.node->children[i], &w.trace->children[i], std::move(child)});
    }
  }
  return out;
}

std::size_t tree_height(const Sequent& s) {
  std::size_t h = 0;
  for (const auto& c : s.children) h = std::max(h, 1 + tree_height(c));
  return h;
}

std::size_t node_count(const Sequent& s) {
  std::size_t n = 1;
  for (const auto& c : s.children) n += node_count(c);
  return n;
}

void collect_targets(const Sequent& node, Path& path, std::size_t remaining, std::vector<Path>& out) {
  if (remaining == 0) {
    out.push_back(path);
    return;
  }
  for (std::uint32_t i = 0; i < node.children.size(); ++i) {
    path.push_back(i);
    collect_targets(node.children[i], path, remaining - 1, out);
    path.pop_back();
  }
}

class Searcher {
 public:
  Searcher(const SystemSpec& sys, const Budget& budget) : sys_(sys), budget_(budget) {}

  struct Result {
    Outcome outcome = Outcome::Unknown;
    std::optional<Proof> proof;
    std::optional<Branch> open;
    std::string reason;
  };

  Result run(Branch b) {
    std::vector<std::pair<Sequent, RuleInstance>> chain;
    auto finish = [&](Proof leaf) {
      for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
        leaf = Proof(std::move(it->first), std::move(it->second), {leaf});
      }
      Result r;
      r.outcome = Outcome::Proved;
      r.proof = std::move(leaf);
      return r;
    };
    for (;;) {
      if (++steps_ > budget_.max_steps) return unknown("step budget exhausted");
      if (auto id = find_id(b)) return finish(Proof(b.s, *id));
      std::optional<RuleInstance> rule = find_or(b);
      if (!rule) {
        if (auto conj = find_and(b)) {
          auto premises = premises_of(b.s, *conj);
          Result sides[2];
          for (std::size_t i = 0; i < 2; ++i) {
            Branch side{premises[i], b.t};
            Formula f = b.s.at(conj->position).formulas[conj->principal[0]];
            trace_at(side.t, conj->position).seen.insert(i == 0 ? f.left() : f.right());
            sides[i] = run(std::move(side));
            if (sides[i].outcome != Outcome::Proved) return sides[i];
          }
          return finish(Proof(b.s, *conj, {*sides[0].proof, *sides[1].proof}));
        }
        rule = find_propagation(b);
      }
      if (!rule) rule = find_box(b);
      if (!rule) {
        Result r;
        r.outcome = Outcome::Refuted;
        r.open = std::move(b);
        return r;
      }
      if (node_count(b.s) > budget_.max_nodes) return unknown("node budget exhausted");
      advance(b, *rule);
      chain.emplace_back(b.s, *rule);
      b.s = premises_of(b.s, *rule)[0];
    }
  }

  std::size_t steps() const { return steps_; }

 private:
  Result unknown(std::string why) {
    Result r;
    r.outcome = Outcome::Unknown;
    r.reason = std::move(why);
    return r;
  }

  // Records in the trace what applying `rule` to b.s adds.
  void advance(Branch& b, const RuleInstance& rule) {
    Formula f = b.s.at(rule.position).formulas[rule.principal[0]];
    Trace& here = trace_at(b.t, rule.position);
    switch (rule.kind) {
      case RuleKind::Or:
        here.seen.insert(f.left());
        here.seen.insert(f.right());
        break;
      case RuleKind::Box: {
        here.expanded.insert(f);
        Trace child;
        child.seen.insert(f.body());
        here.children.push_back(std::move(child));
        break;
      }
      case RuleKind::DiaK: trace_at(b.t, rule.target()).seen.insert(f.body()); break;
      case RuleKind::Dia4: trace_at(b.t, rule.target()).seen.insert(f); break;
      default: break;
    }
  }

  std::optional<RuleInstance> find_id(Branch& b) {
    for (const auto& w : preorder(b)) {
      const auto& fs = w.node->formulas;
      for (std::uint32_t i = 0; i < fs.size(); ++i) {
        if (fs[i].connective() != Connective::Atom) continue;
        Formula neg = Formula::neg_atom(fs[i].atom_id());
        if (!w.trace->seen.count(neg)) continue;
        for (std::uint32_t j = 0; j < fs.size(); ++j) {
          if (fs[j] == neg) return id_rule(w.path, i, j);
        }
      }
    }
    return std::nullopt;
  }

  std::optional<RuleInstance> find_or(Branch& b) {
    for (const auto& w : preorder(b)) {
      const auto& fs = w.node->formulas;
      for (std::uint32_t i = 0; i < fs.size(); ++i) {
        if (fs[i].connective() != Connective::Or) continue;
        if (w.trace->seen.count(fs[i].left()) && w.trace->seen.count(fs[i].right())) continue;
        return or_rule(w.path, i);
      }
    }
    return std::nullopt;
  }

  std::optional<RuleInstance> find_and(Branch& b) {
    for (const auto& w : preorder(b)) {
      const auto& fs = w.node->formulas;
      for (std::uint32_t i = 0; i < fs.size(); ++i) {
        if (fs[i].connective() != Connective::And) continue;
        if (w.trace->seen.count(fs[i].left()) || w.trace->seen.count(fs[i].right())) continue;
        return and_rule(w.path, i);
      }
    }
    return std::nullopt;
  }

  bool admitted(RuleKind kind, std::size_t n) {
    auto& cache = kind == RuleKind::DiaK ? k_cache_ : four_cache_;
    if (cache.size() <= n) cache.resize(n + 1, -1);
    if (cache[n] < 0) cache[n] = sys_.admits(kind, n) ? 1 : 0;
    return cache[n] == 1;
  }

  std::optional<RuleInstance> find_propagation(Branch& b) {
    auto walks = preorder(b);
    std::size_t height = tree_height(b.s);
    for (std::size_t n = 1; n <= height + 1; ++n) {
      bool k = n <= height && admitted(RuleKind::DiaK, n);
      bool four = n >= 2 && admitted(RuleKind::Dia4, n);
      if (!k && !four) continue;
      for (const auto& w : walks) {
        const auto& fs = w.node->formulas;
        for (std::uint32_t i = 0; i < fs.size(); ++i) {
          if (fs[i].connective() != Connective::Dia) continue;
          for (int pass = 0; pass < 2; ++pass) {
            bool use_k = pass == 0;
            if (use_k ? !k : !four) continue;
            std::size_t length = use_k ? n : n - 1;
            Formula added = use_k ? fs[i].body() : fs[i];
            std::vector<Path> targets;
            Path rel;
            collect_targets(*w.node, rel, length, targets);
            for (const auto& spine : targets) {
              Trace& t = trace_at(*w.trace, spine);
              if (t.seen.count(added)) continue;
              return use_k ? dia_k_rule(w.path, i, spine) : dia_4_rule(w.path, i, spine);
            }
          }
        }
      }
    }
    return std::nullopt;
  }

  std::optional<RuleInstance> find_box(Branch& b) {
    for (const auto& w : preorder(b)) {
      const auto& fs = w.node->formulas;
      for (std::uint32_t i = 0; i < fs.size(); ++i) {
        if (fs[i].connective() != Connective::Box || w.trace->expanded.count(fs[i])) continue;
        if (!w.trace->block_checked) {
          w.trace->block_checked = true;
          Trace* up = &b.t;
          for (std::size_t d = 0; d < w.path.size(); ++d) {
            if (up->seen == w.trace->seen) {
              w.trace->blocker = Path(w.path.begin(), w.path.begin() + static_cast<std::ptrdiff_t>(d));
              break;
            }
            up = &up->children[w.path[d]];
          }
        }
        if (w.trace->blocker) break;
        return box_rule(w.path, i);
      }
    }
    return std::nullopt;
  }

  const SystemSpec& sys_;
  Budget budget_;
  std::size_t steps_ = 0;
  std::vector<int> k_cache_;
  std::vector<int> four_cache_;
};

// Worlds are the nodes of the open branch; a blocked node sees what its
// blocker sees. Atoms are false exactly where they occur unnegated.
std::optional<Countermodel> extract_model(Branch& b, const AxiomSet& x, const Sequent& goal) {
  std::map<Path, World> world_of;
  auto walks = preorder(b);
  for (const auto& w : walks) world_of.emplace(w.path, world_of.size());
  KripkeModel m;
  m.worlds = world_of.size();
  for (const auto& w : walks) {
    World u = world_of[w.path];
    const Path& source = w.trace->blocker ? *w.trace->blocker : w.path;
    const Sequent& seen_children = b.s.at(source);
    for (std::uint32_t i = 0; i < seen_children.children.size(); ++i) {
      m.edges.insert({u, world_of[concat(source, {i})]});
    }
    for (const auto& f : w.trace->seen) {
      if (f.connective() == Connective::NegAtom) m.valuation[f.atom_id()].insert(u);
    }
  }
  m.edges = close_frame(m.worlds, m.edges, x);
  if (eval(m, 0, form_of(goal))) return std::nullopt;
  return Countermodel{std::move(m), 0};
}

}  // namespace

SearchResult prove(const Sequent& goal, const SystemSpec& sys, const Budget& budget) {
  if (sys.cut_allowed) throw std::invalid_argument("proof search is cut-free");
  Branch start{goal, {}};
  std::function<void(const Sequent&, Trace&)> seed = [&](const Sequent& s, Trace& t) {
    t.seen.insert(s.formulas.begin(), s.formulas.end());
    for (const auto& c : s.children) {
      t.children.emplace_back();
      seed(c, t.children.back());
    }
  };
  seed(goal, start.t);

  Searcher searcher(sys, budget);
  auto r = searcher.run(std::move(start));
  SearchResult out;
  out.steps = searcher.steps();
  out.reason = r.reason;
  if (r.outcome == Outcome::Proved) {
    out.outcome = Outcome::Proved;
    out.proof = std::move(r.proof);
  } else if (r.outcome == Outcome::Refuted) {
    if (auto model = extract_model(*r.open, sys.axioms, goal)) {
      out.outcome = Outcome::Refuted;
      out.countermodel = std::move(model);
    } else {
      out.outcome = Outcome::Unknown;
      out.reason = "saturated branch did not yield a countermodel";
    }
  }
  return out;
}

}  // namespace nestedk
