#pragma once

#include <cstddef>
#include <random>
#include <set>
#include <vector>

#include "nestedk/kernel.hpp"
#include "nestedk/translate.hpp"

namespace nestedk::testing {

Formula f(const char* text);
Sequent s(const char* text);

SystemSpec k_system(AxiomSet x, bool completed = false, bool cut = false);
SystemSpec four_system(AxiomSet x, bool completed = false);

/// Random NNF formula over atoms a, b, c (the first `atoms` of them) with
/// modal degree at most `modal`.
Formula random_formula(std::mt19937& rng, std::size_t atoms, std::size_t modal, std::size_t size);

/// Iterates X_{p+1} = X_p + {m + n - 1} restricted to <= bound until stable.
std::set<std::size_t> completion_fixpoint(const AxiomSet& x, std::size_t bound);

struct HilbertCase {
  HilbertProof proof;
  AxiomSet axioms;
};

/// Hilbert derivations mixing mp, nec, k and 4n instances.
std::vector<HilbertCase> hilbert_corpus();

/// Checker-valid proofs, some with cuts, under k_system(x, true, true).
struct ProofCase {
  Proof proof;
  AxiomSet axioms;
};
std::vector<ProofCase> random_proofs(std::mt19937& rng, std::size_t count);

/// All formula occurrences of s.
std::vector<Occurrence> occurrences(const Sequent& s);

/// All node paths of s.
std::vector<Path> nodes(const Sequent& s);

/// No countermodel with at most `worlds` worlds on frames closed under x.
bool valid_upto(const Sequent& s, const AxiomSet& x, std::size_t worlds);

}  // namespace nestedk::testing
