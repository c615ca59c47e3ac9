#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nestedk {

using AtomId = std::uint32_t;

/// Atom index 0 is the fixed atom used to define falsum and verum.
inline constexpr AtomId kReservedAtom = 0;

enum class Connective : std::uint8_t { Atom, NegAtom, And, Or, Box, Dia };

namespace detail {
struct FormulaNode;
}

/// An NNF modal formula. Values are hash-consed: structurally equal formulas
/// share one node, so equality and hashing are constant time. The ordering is
/// a total order on node identities, stable for the lifetime of the process.
class Formula {
 public:
  static Formula atom(AtomId id);
  static Formula neg_atom(AtomId id);
  static Formula conj(Formula lhs, Formula rhs);
  static Formula disj(Formula lhs, Formula rhs);
  static Formula box(Formula body);
  static Formula dia(Formula body);

  /// p0 & ~p0
  static Formula bottom();
  /// p0 | ~p0
  static Formula top();

  Connective connective() const;
  bool is_literal() const;
  bool is_binary() const;
  bool is_modal() const;

  /// Valid for Atom and NegAtom.
  AtomId atom_id() const;
  /// Valid for And and Or.
  Formula left() const;
  Formula right() const;
  /// Valid for Box and Dia.
  Formula body() const;

  std::size_t degree() const;
  std::size_t size() const;
  std::uint32_t id() const;

  friend bool operator==(const Formula& a, const Formula& b) { return a.node_ == b.node_; }
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
    return a.id() <=> b.id();
  }

 private:
  explicit Formula(const detail::FormulaNode* node) : node_(node) {}
  static Formula make(Connective c, AtomId atom, const detail::FormulaNode* l,
                      const detail::FormulaNode* r);

  const detail::FormulaNode* node_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// De Morgan dual; an involution.
Formula negate(Formula f);

/// Additive over & and |, plus one per modality.
std::size_t degree(Formula f);

/// Sugar for ~a | b.
Formula implies(Formula a, Formula b);
Formula dia_power(std::size_t n, Formula f);
Formula box_power(std::size_t n, Formula f);

/// Atoms occurring in f, ascending.
std::vector<AtomId> atoms_of(Formula f);

/// Interns an atom name; "p0" always maps to kReservedAtom.
AtomId intern_atom(std::string_view name);
std::string atom_name(AtomId id);

/// Grammar: atoms [a-z][a-zA-Z0-9_]*, ~A, A & B, A | B, A -> B, []A, <>A,
/// parentheses. ~ and -> are eliminated during parsing.
Formula parse_formula(std::string_view text);

/// Parses a formula starting at text[pos]; advances pos past it. Stops at a
/// character that cannot continue a formula (',' or ']' for instance).
Formula parse_formula_prefix(std::string_view text, std::size_t& pos);

std::string to_string(Formula f);
std::string to_latex(Formula f);

}  // namespace nestedk

template <>
struct std::hash<nestedk::Formula> {
  std::size_t operator()(const nestedk::Formula& f) const noexcept { return f.id(); }
};
