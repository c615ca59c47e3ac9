#include "nestedk/completion.hpp"

#include <sstream>
#include <stdexcept>

namespace nestedk {

void validate_axioms(const AxiomSet& x) {
  for (auto m : x) {
    if (m <= 1) throw std::invalid_argument("axiom index " + std::to_string(m) + " is not > 1");
  }
}

namespace {

// reachable[s] is true iff s is a sum of one or more generators.
std::vector<bool> reachable_sums(const AxiomSet& x, std::size_t limit) {
  std::vector<bool> reachable(limit + 1, false);
  for (std::size_t s = 1; s <= limit; ++s) {
    for (auto m : x) {
      std::size_t g = m - 1;
      if (g > s) break;
      if (g == s || reachable[s - g]) {
        reachable[s] = true;
        break;
      }
    }
  }
  return reachable;
}

}  // namespace

bool completion_contains(const AxiomSet& x, std::size_t n) {
  if (n < 2 || x.empty()) return false;
  validate_axioms(x);
  return reachable_sums(x, n - 1)[n - 1];
}

std::vector<std::size_t> completion_upto(const AxiomSet& x, std::size_t bound) {
  std::vector<std::size_t> out;
  if (bound < 2 || x.empty()) return out;
  validate_axioms(x);
  auto reachable = reachable_sums(x, bound - 1);
  for (std::size_t n = 2; n <= bound; ++n) {
    if (reachable[n - 1]) out.push_back(n);
  }
  return out;
}

std::optional<std::pair<std::size_t, std::size_t>> decompose(const AxiomSet& x, std::size_t n) {
  if (x.count(n) || !completion_contains(x, n)) return std::nullopt;
  auto reachable = reachable_sums(x, n - 1);
  for (std::size_t m = 2; m < n; ++m) {
    std::size_t l = n + 1 - m;
    if (reachable[m - 1] && reachable[l - 1]) return std::make_pair(m, l);
  }
  return std::nullopt;
}

AxiomSet parse_axioms(const std::string& text) {
  AxiomSet x;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto begin = item.find_first_not_of(" \t");
    if (begin == std::string::npos) continue;
    std::size_t used = 0;
    unsigned long value = 0;
    try {
      value = std::stoul(item.substr(begin), &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad axiom index '" + item + "'");
    }
    if (item.find_first_not_of(" \t", begin + used) != std::string::npos) {
      throw std::invalid_argument("bad axiom index '" + item + "'");
    }
    x.insert(value);
  }
  validate_axioms(x);
  return x;
}

std::string to_string(const AxiomSet& x) {
  std::string out;
  for (auto m : x) {
    if (!out.empty()) out += ",";
    out += std::to_string(m);
  }
  return out;
}

}  // namespace nestedk
