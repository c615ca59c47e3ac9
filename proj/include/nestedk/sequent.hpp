#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nestedk/formula.hpp"

namespace nestedk {

/// Child selectors from the root; each step indexes the children of the
/// current node in stored order. The empty path is the root.
using Path = std::vector<std::uint32_t>;

/// One formula occurrence: the node holding it and its index there.
struct Occurrence {
  Path node;
  std::uint32_t index = 0;

  friend auto operator<=>(const Occurrence&, const Occurrence&) = default;
  friend bool operator==(const Occurrence&, const Occurrence&) = default;
};

class PathError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A nested sequent: a multiset of formulas and boxed child sequents.
///
/// Storage order gives every occurrence a stable index, but operator== is
/// multiset equality up to reordering at every level. Use identical() for
/// exact structural comparison.
struct Sequent {
  std::vector<Formula> formulas;
  std::vector<Sequent> children;

  bool empty() const { return formulas.empty() && children.empty(); }
  bool contains(Formula f) const;

  /// Throws PathError when a selector is out of range.
  const Sequent& at(const Path& path) const;
  Sequent& at(const Path& path);

  friend bool operator==(const Sequent& a, const Sequent& b);
};

bool identical(const Sequent& a, const Sequent& b);

/// Sorted representative of the multiset class of s.
Sequent canonical(const Sequent& s);

/// Total order on canonical forms; equal iff a == b as multisets.
std::strong_ordering compare_canonical(const Sequent& a, const Sequent& b);

/// Merges insert's formulas and children into the node addressed by at.
/// Existing occurrences keep their indices; inserted material is appended.
Sequent plug(Sequent root, const Path& at, const Sequent& insert);

Sequent singleton(Formula f);

/// Literal structural translation: form(empty) = bottom,
/// form(A, G) = A | form(G), form(G, [D]) = form(G) | [] form(D).
Formula form_of(const Sequent& s);

std::size_t depth_of(const Path& p);

Path concat(const Path& a, const Path& b);
bool is_prefix(const Path& prefix, const Path& p);

/// All paths extending `from` by exactly `length` steps.
std::vector<Path> chain_positions(const Sequent& s, const Path& from, std::size_t length);

/// seq := item ("," item)* | "{}", item := formula | "[" seq "]".
/// "[]" and "[ ]" denote the empty child when followed by ',' or ']' or the end.
Sequent parse_sequent(std::string_view text);
std::string to_string(const Sequent& s);
std::string to_latex(const Sequent& s);
std::string to_string(const Path& p);

/// Where each node and formula occurrence of one sequent lands in another.
class Relocation {
 public:
  void map_node(Path from, Path to) { nodes_[std::move(from)] = std::move(to); }
  void map_formula(Occurrence from, Occurrence to) {
    formulas_[std::move(from)] = std::move(to);
  }

  std::optional<Path> node(const Path& p) const;
  std::optional<Occurrence> formula(const Occurrence& o) const;

  /// Throwing variants for occurrences that must survive.
  Path node_or_throw(const Path& p) const;
  Occurrence formula_or_throw(const Occurrence& o) const;

  /// this, then next.
  Relocation then(const Relocation& next) const;

 private:
  std::map<Path, Path> nodes_;
  std::map<Occurrence, Occurrence> formulas_;
};

/// An isomorphism from `from` onto `to`; requires from == to as multisets.
Relocation match(const Sequent& from, const Sequent& to);

/// Records structural edits on a sequent and reports where the original
/// occurrences end up. Every address passed in is in the coordinates of the
/// original sequent.
class SequentEditor {
 public:
  explicit SequentEditor(const Sequent& original);
  ~SequentEditor();
  SequentEditor(const SequentEditor&) = delete;
  SequentEditor& operator=(const SequentEditor&) = delete;

  void remove_formula(const Occurrence& o);
  void add_formula(const Path& node, Formula f);
  void add_child(const Path& node, const Sequent& child);
  /// Appends the content of `from` to `into` and deletes node `from`; the
  /// relocation sends `from` to `into`.
  void move_content(const Path& from, const Path& into);
  /// Replaces the node at `child` (non-root) by a chain of `length` nested
  /// nodes whose innermost node is the original; the others are empty.
  void sink(const Path& child, std::size_t length);
  /// Removes the whole subtree at `child` (non-root).
  void remove_subtree(const Path& child);

  Sequent result() const;
  Relocation relocation() const;

 private:
  struct Node;
  Node* lookup(const Path& p) const;

  std::unique_ptr<Node> root_;
  std::map<Path, Node*> index_;
};

}  // namespace nestedk
