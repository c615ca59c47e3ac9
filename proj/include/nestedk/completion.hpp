#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace nestedk {

/// Axiom indices; every member must exceed 1.
using AxiomSet = std::set<std::size_t>;

/// Throws std::invalid_argument if some member is <= 1.
void validate_axioms(const AxiomSet& x);

/// Decides n in the completion of x: n - 1 must be a nonempty sum of the
/// generators {m - 1 : m in x}.
bool completion_contains(const AxiomSet& x, std::size_t n);

/// Members of the completion up to and including bound, ascending.
std::vector<std::size_t> completion_upto(const AxiomSet& x, std::size_t bound);

/// For n in the completion but not in x, the lexicographically smallest
/// (m, l) with both in the completion and m + l - 1 = n.
std::optional<std::pair<std::size_t, std::size_t>> decompose(const AxiomSet& x, std::size_t n);

AxiomSet parse_axioms(const std::string& text);
std::string to_string(const AxiomSet& x);

}  // namespace nestedk
