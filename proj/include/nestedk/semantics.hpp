#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nestedk/completion.hpp"
#include "nestedk/formula.hpp"

namespace nestedk {

using World = std::size_t;
using Relation = std::set<std::pair<World, World>>;

struct KripkeModel {
  std::size_t worlds = 0;
  Relation edges;
  /// Worlds where each atom holds; atoms not listed are false everywhere.
  std::map<AtomId, std::set<World>> valuation;
};

/// Least superset of `edges` closed under: an R-path of length n in x from u
/// to w yields the edge (u, w).
Relation close_frame(std::size_t worlds, const Relation& edges, const AxiomSet& x);

bool is_closed(std::size_t worlds, const Relation& edges, const AxiomSet& x);

/// Throws std::out_of_range for an unknown world.
bool eval(const KripkeModel& m, World w, Formula f);

/// Worlds of m where f holds.
std::vector<bool> truth_set(const KripkeModel& m, Formula f);

struct Countermodel {
  KripkeModel model;
  World world = 0;
};

/// Exhaustive search over frames closed under x with at most max_worlds
/// worlds, rooted at world 0, smallest first. Returns a model falsifying f at
/// world 0, or nothing.
std::optional<Countermodel> find_countermodel(Formula f, const AxiomSet& x,
                                              std::size_t max_worlds);

std::string to_dot(const KripkeModel& m, std::optional<World> highlight = std::nullopt);

}  // namespace nestedk
