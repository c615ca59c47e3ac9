#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "nestedk/kernel.hpp"
#include "nestedk/semantics.hpp"

namespace nestedk {

struct Budget {
  /// Rule applications across all branches.
  std::size_t max_steps = 200000;
  /// Nodes in any single branch's sequent tree.
  std::size_t max_nodes = 4000;
};

/// The default budget, with max_steps overridden by NESTEDK_BUDGET if set.
Budget default_budget();

enum class Outcome { Proved, Refuted, Unknown };

std::string to_string(Outcome o);

struct SearchResult {
  Outcome outcome = Outcome::Unknown;
  std::optional<Proof> proof;
  /// For Refuted: a model closed under the axioms falsifying form(goal) at
  /// its world.
  std::optional<Countermodel> countermodel;
  std::string reason;
  std::size_t steps = 0;
};

/// Cut-free backward search. Saturates with set semantics, blocks a node
/// whose formulas equal an ancestor's, and reports Refuted only for a
/// model that has been checked against the goal.
SearchResult prove(const Sequent& goal, const SystemSpec& sys, const Budget& budget = default_budget());

}  // namespace nestedk
