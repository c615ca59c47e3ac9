#include "nestedk/formula.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <memory>
#include <mutex>
#include <set>
#include <unordered_map>

namespace nestedk {

namespace detail {

struct FormulaNode {
  Connective connective;
  AtomId atom;
  const FormulaNode* left;
  const FormulaNode* right;
  std::uint32_t id;
  std::size_t degree;
  std::size_t size;
};

}  // namespace detail

namespace {

struct NodeKey {
  Connective connective;
  AtomId atom;
  const detail::FormulaNode* left;
  const detail::FormulaNode* right;
  bool operator==(const NodeKey&) const = default;
};

struct NodeKeyHash {
  std::size_t operator()(const NodeKey& k) const noexcept {
    std::size_t h = static_cast<std::size_t>(k.connective);
    h = h * 1000003u ^ k.atom;
    h = h * 1000003u ^ std::hash<const void*>{}(k.left);
    h = h * 1000003u ^ std::hash<const void*>{}(k.right);
    return h;
  }
};

class FormulaTable {
 public:
  const detail::FormulaNode* intern(const NodeKey& key) {
    std::lock_guard lock(mutex_);
    if (auto it = index_.find(key); it != index_.end()) return it->second;
    std::size_t deg = 0;
    std::size_t size = 1;
    switch (key.connective) {
      case Connective::Atom:
      case Connective::NegAtom:
        break;
      case Connective::And:
      case Connective::Or:
        deg = key.left->degree + key.right->degree;
        size += key.left->size + key.right->size;
        break;
      case Connective::Box:
      case Connective::Dia:
        deg = 1 + key.left->degree;
        size += key.left->size;
        break;
    }
    auto& node = nodes_.emplace_back(detail::FormulaNode{
        key.connective, key.atom, key.left, key.right,
        static_cast<std::uint32_t>(nodes_.size()), deg, size});
    index_.emplace(key, &node);
    return &node;
  }

 private:
  std::mutex mutex_;
  std::deque<detail::FormulaNode> nodes_;
  std::unordered_map<NodeKey, const detail::FormulaNode*, NodeKeyHash> index_;
};

FormulaTable& table() {
  static FormulaTable instance;
  return instance;
}

class SymbolTable {
 public:
  SymbolTable() {
    names_.emplace_back("p0");
    ids_.emplace("p0", kReservedAtom);
  }

  AtomId intern(std::string_view name) {
    std::lock_guard lock(mutex_);
    std::string key(name);
    if (auto it = ids_.find(key); it != ids_.end()) return it->second;
    auto id = static_cast<AtomId>(names_.size());
    names_.push_back(key);
    ids_.emplace(std::move(key), id);
    return id;
  }

  std::string name(AtomId id) {
    std::lock_guard lock(mutex_);
    if (id < names_.size()) return names_[id];
    return "a" + std::to_string(id);
  }

 private:
  std::mutex mutex_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, AtomId> ids_;
};

SymbolTable& symbols() {
  static SymbolTable instance;
  return instance;
}

}  // namespace

Formula Formula::make(Connective c, AtomId atom, const detail::FormulaNode* l,
                      const detail::FormulaNode* r) {
  return Formula(table().intern(NodeKey{c, atom, l, r}));
}

Formula Formula::atom(AtomId id) { return make(Connective::Atom, id, nullptr, nullptr); }
Formula Formula::neg_atom(AtomId id) { return make(Connective::NegAtom, id, nullptr, nullptr); }
Formula Formula::conj(Formula lhs, Formula rhs) {
  return make(Connective::And, 0, lhs.node_, rhs.node_);
}
Formula Formula::disj(Formula lhs, Formula rhs) {
  return make(Connective::Or, 0, lhs.node_, rhs.node_);
}
Formula Formula::box(Formula body) { return make(Connective::Box, 0, body.node_, nullptr); }
Formula Formula::dia(Formula body) { return make(Connective::Dia, 0, body.node_, nullptr); }

Formula Formula::bottom() { return conj(atom(kReservedAtom), neg_atom(kReservedAtom)); }
Formula Formula::top() { return disj(atom(kReservedAtom), neg_atom(kReservedAtom)); }

Connective Formula::connective() const { return node_->connective; }
bool Formula::is_literal() const {
  return node_->connective == Connective::Atom || node_->connective == Connective::NegAtom;
}
bool Formula::is_binary() const {
  return node_->connective == Connective::And || node_->connective == Connective::Or;
}
bool Formula::is_modal() const {
  return node_->connective == Connective::Box || node_->connective == Connective::Dia;
}

AtomId Formula::atom_id() const {
  if (!is_literal()) throw std::logic_error("atom_id on a compound formula");
  return node_->atom;
}
Formula Formula::left() const {
  if (!is_binary()) throw std::logic_error("left on a non-binary formula");
  return Formula(node_->left);
}
Formula Formula::right() const {
  if (!is_binary()) throw std::logic_error("right on a non-binary formula");
  return Formula(node_->right);
}
Formula Formula::body() const {
  if (!is_modal()) throw std::logic_error("body on a non-modal formula");
  return Formula(node_->left);
}

std::size_t Formula::degree() const { return node_->degree; }
std::size_t Formula::size() const { return node_->size; }
std::uint32_t Formula::id() const { return node_->id; }

ParseError::ParseError(const std::string& message, std::size_t position)
    : std::runtime_error(message + " at position " + std::to_string(position)),
      position_(position) {}

Formula negate(Formula f) {
  switch (f.connective()) {
    case Connective::Atom:
      return Formula::neg_atom(f.atom_id());
    case Connective::NegAtom:
      return Formula::atom(f.atom_id());
    case Connective::And:
      return Formula::disj(negate(f.left()), negate(f.right()));
    case Connective::Or:
      return Formula::conj(negate(f.left()), negate(f.right()));
    case Connective::Box:
      return Formula::dia(negate(f.body()));
    case Connective::Dia:
      return Formula::box(negate(f.body()));
  }
  throw std::logic_error("unreachable");
}

std::size_t degree(Formula f) { return f.degree(); }

Formula implies(Formula a, Formula b) { return Formula::disj(negate(a), b); }

Formula dia_power(std::size_t n, Formula f) {
  for (std::size_t i = 0; i < n; ++i) f = Formula::dia(f);
  return f;
}

Formula box_power(std::size_t n, Formula f) {
  for (std::size_t i = 0; i < n; ++i) f = Formula::box(f);
  return f;
}

std::vector<AtomId> atoms_of(Formula f) {
  std::set<AtomId> seen;
  std::vector<Formula> stack{f};
  while (!stack.empty()) {
    Formula g = stack.back();
    stack.pop_back();
    if (g.is_literal()) {
      seen.insert(g.atom_id());
    } else if (g.is_binary()) {
      stack.push_back(g.left());
      stack.push_back(g.right());
    } else {
      stack.push_back(g.body());
    }
  }
  return {seen.begin(), seen.end()};
}

AtomId intern_atom(std::string_view name) { return symbols().intern(name); }
std::string atom_name(AtomId id) { return symbols().name(id); }

namespace {

class FormulaParser {
 public:
  FormulaParser(std::string_view text, std::size_t pos) : text_(text), pos_(pos) {}

  Formula implication() {
    Formula lhs = disjunction();
    skip_ws();
    if (peek_is("->")) {
      pos_ += 2;
      Formula rhs = implication();
      return implies(lhs, rhs);
    }
    return lhs;
  }

  std::size_t position() const { return pos_; }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }

 private:
  Formula disjunction() {
    Formula lhs = conjunction();
    for (;;) {
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '|') {
        ++pos_;
        lhs = Formula::disj(lhs, conjunction());
      } else {
        return lhs;
      }
    }
  }

  Formula conjunction() {
    Formula lhs = unary();
    for (;;) {
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '&') {
        ++pos_;
        lhs = Formula::conj(lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  // "[" ws* "]" is the box operator.
  bool box_ahead() const {
    if (pos_ >= text_.size() || text_[pos_] != '[') return false;
    std::size_t p = pos_ + 1;
    while (p < text_.size() && std::isspace(static_cast<unsigned char>(text_[p]))) ++p;
    return p < text_.size() && text_[p] == ']';
  }

  void consume_box() {
    ++pos_;
    skip_ws();
    ++pos_;
  }

  bool starts_formula() {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    return c == '~' || c == '(' || box_ahead() || peek_is("<>") ||
           (c >= 'a' && c <= 'z');
  }

  Formula unary() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of formula", pos_);
    char c = text_[pos_];
    if (c == '~') {
      std::size_t at = pos_;
      ++pos_;
      if (!starts_formula()) throw ParseError("negation applied to a non-formula", at);
      return negate(unary());
    }
    if (box_ahead()) {
      consume_box();
      return Formula::box(unary());
    }
    if (peek_is("<>")) {
      pos_ += 2;
      return Formula::dia(unary());
    }
    if (c == '(') {
      ++pos_;
      Formula inner = implication();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      return inner;
    }
    if (c >= 'a' && c <= 'z') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      return Formula::atom(intern_atom(text_.substr(start, pos_ - start)));
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  bool peek_is(std::string_view token) const {
    return text_.substr(pos_, token.size()) == token;
  }

  std::string_view text_;
  std::size_t pos_;
};

enum class Level { Or = 1, And = 2, Unary = 3 };

Level level_of(Formula f) {
  switch (f.connective()) {
    case Connective::Or:
      return Level::Or;
    case Connective::And:
      return Level::And;
    default:
      return Level::Unary;
  }
}

struct Notation {
  std::string (*atom)(AtomId);
  std::string (*neg_atom)(AtomId);
  const char* conj;
  const char* disj;
  const char* box;
  const char* dia;
  const char* open;
  const char* close;
};

std::string ascii_atom(AtomId id) { return atom_name(id); }
std::string ascii_neg_atom(AtomId id) { return "~" + atom_name(id); }
std::string latex_atom(AtomId id) { return atom_name(id); }
std::string latex_neg_atom(AtomId id) { return "\\bar{" + atom_name(id) + "}"; }

const Notation kAscii{ascii_atom, ascii_neg_atom, " & ", " | ", "[]", "<>", "(", ")"};
const Notation kLatex{latex_atom, latex_neg_atom, " \\wedge ", " \\vee ", "\\Box ",
                      "\\Diamond ", "(", ")"};

void print(const Notation& nt, Formula f, std::string& out) {
  auto wrap = [&](Formula sub, bool parens) {
    if (parens) out += nt.open;
    print(nt, sub, out);
    if (parens) out += nt.close;
  };
  switch (f.connective()) {
    case Connective::Atom:
      out += nt.atom(f.atom_id());
      return;
    case Connective::NegAtom:
      out += nt.neg_atom(f.atom_id());
      return;
    case Connective::And:
    case Connective::Or: {
      Level own = level_of(f);
      wrap(f.left(), level_of(f.left()) < own);
      out += f.connective() == Connective::And ? nt.conj : nt.disj;
      wrap(f.right(), level_of(f.right()) <= own);
      return;
    }
    case Connective::Box:
    case Connective::Dia:
      out += f.connective() == Connective::Box ? nt.box : nt.dia;
      wrap(f.body(), f.body().is_binary());
      return;
  }
}

}  // namespace

Formula parse_formula_prefix(std::string_view text, std::size_t& pos) {
  FormulaParser parser(text, pos);
  Formula f = parser.implication();
  parser.skip_ws();
  pos = parser.position();
  return f;
}

Formula parse_formula(std::string_view text) {
  FormulaParser parser(text, 0);
  Formula f = parser.implication();
  if (!parser.at_end()) throw ParseError("trailing input", parser.position());
  return f;
}

std::string to_string(Formula f) {
  std::string out;
  print(kAscii, f, out);
  return out;
}

std::string to_latex(Formula f) {
  std::string out;
  print(kLatex, f, out);
  return out;
}

}  // namespace nestedk
