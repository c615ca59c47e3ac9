#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nestedk/completion.hpp"
#include "nestedk/formula.hpp"
#include "nestedk/sequent.hpp"

namespace nestedk {

enum class RuleKind { Id, Or, And, Box, DiaK, Dia4, Cut };

std::string rule_name(RuleKind kind);

/// One rule application. `position` is the context node; `principal` indexes
/// formulas there (two for Id, none for Cut, one otherwise). `spine` extends
/// `position` to the node receiving the propagated formula: n steps for
/// DiaK(n), n - 1 steps for Dia4(n).
struct RuleInstance {
  RuleKind kind = RuleKind::Id;
  std::size_t n = 0;
  std::optional<Formula> cut_formula;
  Path position;
  std::vector<std::uint32_t> principal;
  Path spine;

  Path target() const { return concat(position, spine); }
};

RuleInstance id_rule(Path position, std::uint32_t atom_index, std::uint32_t negated_index);
RuleInstance or_rule(Path position, std::uint32_t index);
RuleInstance and_rule(Path position, std::uint32_t index);
RuleInstance box_rule(Path position, std::uint32_t index);
RuleInstance dia_k_rule(Path position, std::uint32_t index, Path spine);
RuleInstance dia_4_rule(Path position, std::uint32_t index, Path spine);
RuleInstance cut_rule(Path position, Formula cut_formula);

class RuleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Premises as the rule schema dictates. Consumed principals (Or, And, Box)
/// are erased; new material is appended at its node, so every other
/// occurrence keeps its path and all indices below the erased one.
/// Throws RuleError or PathError when the instance does not fit.
std::vector<Sequent> premises_of(const Sequent& conclusion, const RuleInstance& rule);

/// Premise i together with where the conclusion's surviving occurrences land
/// and the occurrences the rule added.
struct PremiseEdit {
  Sequent sequent;
  Relocation relocation;
  std::vector<Occurrence> added;
};
PremiseEdit premise_edit(const Sequent& conclusion, const RuleInstance& rule, std::size_t i);

/// The rule instance with every address pushed through `r`. The spine is
/// recomputed from the relocated target.
RuleInstance relocate(const RuleInstance& rule, const Relocation& r);

class Proof {
 public:
  Proof(Sequent conclusion, RuleInstance rule, std::vector<Proof> premises = {});

  const Sequent& conclusion() const { return node_->conclusion; }
  const RuleInstance& rule() const { return node_->rule; }
  const std::vector<Proof>& premises() const { return node_->premises; }

  std::size_t height() const { return node_->height; }
  std::size_t cut_rank() const { return node_->cut_rank; }
  std::size_t size() const { return node_->size; }
  std::size_t cut_count() const { return node_->cut_count; }

 private:
  struct Node {
    Sequent conclusion;
    RuleInstance rule;
    std::vector<Proof> premises;
    std::size_t height = 0;
    std::size_t cut_rank = 0;
    std::size_t size = 1;
    std::size_t cut_count = 0;
  };
  std::shared_ptr<const Node> node_;
};

inline std::size_t height(const Proof& p) { return p.height(); }
inline std::size_t cut_rank(const Proof& p) { return p.cut_rank(); }
std::size_t cuts_of_rank(const Proof& p, std::size_t r);

/// Same premises under a multiset-equal conclusion; only the root rule's
/// addresses change.
Proof reroot(const Proof& p, const Sequent& conclusion);

/// The premises rerooted onto the exact sequents premises_of computes.
std::vector<Proof> aligned_premises(const Proof& p);

enum class Family { DiaK, Dia4 };

struct SystemSpec {
  Family family = Family::DiaK;
  AxiomSet axioms;
  bool completed = false;
  bool cut_allowed = false;
  std::optional<std::size_t> cut_rank_bound;

  /// Whether propagation index n is available. DiaK(1) always is.
  bool admits(RuleKind kind, std::size_t n) const;
};

std::string to_string(const SystemSpec& sys);

struct Violation {
  /// Premise indices from the root of the proof to the offending node.
  std::vector<std::size_t> node;
  std::string reason;
};

std::optional<Violation> check(const Proof& p, const SystemSpec& sys);

}  // namespace nestedk
