#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "nestedk/kernel.hpp"

namespace nestedk {

class HilbertError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A Hilbert-style derivation in K plus quasi-transitivity axioms.
struct HilbertProof {
  enum class Step { Taut, AxK, Ax4, Mp, Nec };

  Step step = Step::Taut;
  /// Taut: the instance. AxK: A. Ax4: A.
  Formula a = Formula::top();
  /// AxK: B.
  Formula b = Formula::top();
  /// Ax4: the index.
  std::size_t n = 0;
  /// Mp: {implication, antecedent}. Nec: {sub}.
  std::vector<HilbertProof> subs;

  static HilbertProof taut(Formula f);
  static HilbertProof ax_k(Formula a, Formula b);
  static HilbertProof ax_4(std::size_t n, Formula a);
  static HilbertProof mp(HilbertProof imp, HilbertProof ant);
  static HilbertProof nec(HilbertProof sub);
};

/// Classical validity with modal subformulas treated as opaque atoms.
bool is_tautology(Formula f);

/// []^n ~a | <>a, which is <>^n a -> <>a.
Formula axiom_4n(std::size_t n, Formula a);

/// [](a -> b) -> ([]a -> []b).
Formula axiom_k(Formula a, Formula b);

/// Throws HilbertError on an invalid step.
Formula conclusion(const HilbertProof& h);

/// Cut-free proof of <>~a | []^n a.
Proof derive_axiom_4n(std::size_t n, Formula a);

/// Proof with cuts of {conclusion(h)}; every ax4 index above 1 must be in x.
Proof hilbert_to_nested(const HilbertProof& h, const AxiomSet& x);

/// Embeds p at node `at` of `wrapper`: p's material precedes the wrapper's
/// own at that node, and every rule address is prefixed with `at`.
Proof lift_into_context(const Proof& p, const Sequent& wrapper, const Path& at);

/// Replaces each DiaK(n), n > 1, by Dia4(n), DiaK(1) and a weakening.
/// Throws std::invalid_argument on cuts.
Proof k_to_4(const Proof& p);

/// Splits each Dia4(n) with n outside x into two smaller Dia4 steps until
/// every index is in x.
Proof collapse_completion(const Proof& p, const AxiomSet& x);

}  // namespace nestedk
