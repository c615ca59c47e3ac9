#pragma once

#include <cstddef>
#include <optional>

#include "nestedk/kernel.hpp"

namespace nestedk {

/// Cut-free proof of `context` with A then its negation appended at `at`.
Proof gid_proof(const Sequent& context, const Path& at, Formula a);

enum class Inversion { Or, AndLeft, AndRight, Box };

/// The conclusion an inversion produces: the occurrence is erased and its
/// components (or the child [A]) are appended at its node.
Sequent inverted(const Sequent& s, Inversion which, const Occurrence& at);

/// Height and cut-rank preserving inversion at one occurrence.
Proof invert(const Proof& p, Inversion which, const Occurrence& at);

/// Appends `extra` at node `at`; the rule skeleton is unchanged.
Proof weaken(const Proof& p, const Path& at, const Sequent& extra);

/// Removes `drop`, a second copy of the formula at `keep` in the same node.
Proof contract_formula(const Proof& p, const Occurrence& keep, const Occurrence& drop);

/// Removes the child `drop`, a sibling of `keep` with equal content.
Proof contract_child(const Proof& p, const Path& keep, const Path& drop);

/// Removes one copy of `dup` from node `at`, which must hold two disjoint
/// copies of each of its formulas and children. The last copies are dropped.
Proof contract(const Proof& p, const Path& at, const Sequent& dup);

/// Moves the content of child `drop` into its sibling `keep` and deletes it.
Proof medial(const Proof& p, const Path& keep, const Path& drop);

/// Inverse of the propagation rule along `spine` from the diamond at `dia`.
Proof dia_inv_k(const Proof& p, const Occurrence& dia, const Path& spine);

/// Inverse of cut: adds `a` at `at`.
Proof cut_inv(const Proof& p, const Path& at, Formula a);

/// The structural rule of index n: the child at `merge_source` is merged into
/// the end of the chain that `spine` (n steps) describes from its parent.
/// Requires a completed DiaK system admitting n (n = 1 always works).
Proof boxtimes(const Proof& p, std::size_t n, const Path& merge_source, const Path& spine,
               const SystemSpec& sys);

struct CutStats {
  std::size_t reductions = 0;
  std::size_t stages = 0;
};

/// Lowers the cut rank by at least one; no-op on proofs of cut rank 0.
Proof reduce_cut_rank(const Proof& p, const SystemSpec& sys, CutStats* stats = nullptr);

/// Cut-free proof of the same conclusion, including removal of atomic cuts.
Proof eliminate_cuts(const Proof& p, const SystemSpec& sys, CutStats* stats = nullptr);

}  // namespace nestedk
