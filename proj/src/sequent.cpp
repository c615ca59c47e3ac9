#include "nestedk/sequent.hpp"

#include <algorithm>
#include <cctype>

namespace nestedk {

bool Sequent::contains(Formula f) const {
  return std::find(formulas.begin(), formulas.end(), f) != formulas.end();
}

const Sequent& Sequent::at(const Path& path) const {
  const Sequent* node = this;
  for (auto step : path) {
    if (step >= node->children.size()) {
      throw PathError("path " + to_string(path) + " does not resolve");
    }
    node = &node->children[step];
  }
  return *node;
}

Sequent& Sequent::at(const Path& path) {
  return const_cast<Sequent&>(static_cast<const Sequent&>(*this).at(path));
}

namespace {

std::strong_ordering compare_canonical_forms(const Sequent& a, const Sequent& b) {
  if (auto c = a.formulas.size() <=> b.formulas.size(); c != 0) return c;
  if (auto c = a.children.size() <=> b.children.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.formulas.size(); ++i) {
    if (auto c = a.formulas[i] <=> b.formulas[i]; c != 0) return c;
  }
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (auto c = compare_canonical_forms(a.children[i], b.children[i]); c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::size_t count_items(const Sequent& s) {
  std::size_t n = s.formulas.size();
  for (const auto& c : s.children) n += 1 + count_items(c);
  return n;
}

}  // namespace

Sequent canonical(const Sequent& s) {
  Sequent out;
  out.formulas = s.formulas;
  std::sort(out.formulas.begin(), out.formulas.end());
  out.children.reserve(s.children.size());
  for (const auto& c : s.children) out.children.push_back(canonical(c));
  std::sort(out.children.begin(), out.children.end(), [](const Sequent& x, const Sequent& y) {
    return compare_canonical_forms(x, y) < 0;
  });
  return out;
}

std::strong_ordering compare_canonical(const Sequent& a, const Sequent& b) {
  return compare_canonical_forms(canonical(a), canonical(b));
}

bool operator==(const Sequent& a, const Sequent& b) {
  if (a.formulas.size() != b.formulas.size() || a.children.size() != b.children.size()) {
    return false;
  }
  if (count_items(a) != count_items(b)) return false;
  return compare_canonical_forms(canonical(a), canonical(b)) == 0;
}

bool identical(const Sequent& a, const Sequent& b) {
  if (a.formulas != b.formulas || a.children.size() != b.children.size()) return false;
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (!identical(a.children[i], b.children[i])) return false;
  }
  return true;
}

Sequent plug(Sequent root, const Path& at, const Sequent& insert) {
  Sequent& node = root.at(at);
  node.formulas.insert(node.formulas.end(), insert.formulas.begin(), insert.formulas.end());
  node.children.insert(node.children.end(), insert.children.begin(), insert.children.end());
  return root;
}

Sequent singleton(Formula f) {
  Sequent s;
  s.formulas.push_back(f);
  return s;
}

Formula form_of(const Sequent& s) {
  // Children are peeled from the right, then formulas from the left.
  Formula acc = Formula::bottom();
  for (auto it = s.formulas.rbegin(); it != s.formulas.rend(); ++it) {
    acc = Formula::disj(*it, acc);
  }
  for (const auto& child : s.children) {
    acc = Formula::disj(acc, Formula::box(form_of(child)));
  }
  return acc;
}

std::size_t depth_of(const Path& p) { return p.size(); }

Path concat(const Path& a, const Path& b) {
  Path out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

bool is_prefix(const Path& prefix, const Path& p) {
  return prefix.size() <= p.size() && std::equal(prefix.begin(), prefix.end(), p.begin());
}

namespace {

void collect_chains(const Sequent& node, Path& current, std::size_t remaining,
                    std::vector<Path>& out) {
  if (remaining == 0) {
    out.push_back(current);
    return;
  }
  for (std::uint32_t i = 0; i < node.children.size(); ++i) {
    current.push_back(i);
    collect_chains(node.children[i], current, remaining - 1, out);
    current.pop_back();
  }
}

}  // namespace

std::vector<Path> chain_positions(const Sequent& s, const Path& from, std::size_t length) {
  std::vector<Path> out;
  Path current = from;
  collect_chains(s.at(from), current, length, out);
  return out;
}

namespace {

class SequentParser {
 public:
  explicit SequentParser(std::string_view text) : text_(text) {}

  Sequent parse() {
    Sequent s = sequence();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("trailing input in sequent", pos_);
    return s;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool closes_item(std::size_t p) const {
    while (p < text_.size() && std::isspace(static_cast<unsigned char>(text_[p]))) ++p;
    return p >= text_.size() || text_[p] == ',' || text_[p] == ']';
  }

  // Returns the position after "[ ]" if one starts at pos_.
  std::optional<std::size_t> empty_brackets() const {
    if (pos_ >= text_.size() || text_[pos_] != '[') return std::nullopt;
    std::size_t p = pos_ + 1;
    while (p < text_.size() && std::isspace(static_cast<unsigned char>(text_[p]))) ++p;
    if (p < text_.size() && text_[p] == ']') return p + 1;
    return std::nullopt;
  }

  Sequent sequence() {
    Sequent s;
    skip_ws();
    if (text_.substr(pos_, 2) == "{}") {
      pos_ += 2;
      return s;
    }
    if (pos_ >= text_.size()) return s;
    for (;;) {
      item(s);
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == ',') {
        ++pos_;
        continue;
      }
      return s;
    }
  }

  void item(Sequent& s) {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("expected a sequent item", pos_);
    if (auto after = empty_brackets()) {
      if (closes_item(*after)) {
        pos_ = *after;
        s.children.emplace_back();
        return;
      }
      s.formulas.push_back(parse_formula_prefix(text_, pos_));
      return;
    }
    if (text_[pos_] == '[') {
      ++pos_;
      Sequent child = sequence();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != ']') throw ParseError("expected ']'", pos_);
      ++pos_;
      s.children.push_back(std::move(child));
      return;
    }
    s.formulas.push_back(parse_formula_prefix(text_, pos_));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void print_sequent(const Sequent& s, std::string& out, bool latex) {
  bool first = true;
  auto sep = [&] {
    if (!first) out += ", ";
    first = false;
  };
  for (const auto& f : s.formulas) {
    sep();
    out += latex ? to_latex(f) : to_string(f);
  }
  for (const auto& c : s.children) {
    sep();
    out += "[";
    print_sequent(c, out, latex);
    out += "]";
  }
}

}  // namespace

Sequent parse_sequent(std::string_view text) { return SequentParser(text).parse(); }

std::string to_string(const Sequent& s) {
  if (s.empty()) return "{}";
  std::string out;
  print_sequent(s, out, false);
  return out;
}

std::string to_latex(const Sequent& s) {
  if (s.empty()) return "\\varnothing";
  std::string out;
  print_sequent(s, out, true);
  return out;
}

std::string to_string(const Path& p) {
  std::string out = "[";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(p[i]);
  }
  return out + "]";
}

std::optional<Path> Relocation::node(const Path& p) const {
  if (auto it = nodes_.find(p); it != nodes_.end()) return it->second;
  return std::nullopt;
}

std::optional<Occurrence> Relocation::formula(const Occurrence& o) const {
  if (auto it = formulas_.find(o); it != formulas_.end()) return it->second;
  return std::nullopt;
}

Path Relocation::node_or_throw(const Path& p) const {
  if (auto n = node(p)) return *n;
  throw std::logic_error("node " + to_string(p) + " does not survive the edit");
}

Occurrence Relocation::formula_or_throw(const Occurrence& o) const {
  if (auto f = formula(o)) return *f;
  throw std::logic_error("formula " + std::to_string(o.index) + " at " + to_string(o.node) +
                         " does not survive the edit");
}

Relocation Relocation::then(const Relocation& next) const {
  Relocation out;
  for (const auto& [from, to] : nodes_) {
    if (auto n = next.node(to)) out.map_node(from, *n);
  }
  for (const auto& [from, to] : formulas_) {
    if (auto f = next.formula(to)) out.map_formula(from, *f);
  }
  return out;
}

namespace {

void match_into(const Sequent& from, const Sequent& to, Path& from_path, Path& to_path,
                Relocation& out) {
  out.map_node(from_path, to_path);
  std::vector<bool> used(to.formulas.size(), false);
  for (std::uint32_t i = 0; i < from.formulas.size(); ++i) {
    bool found = false;
    for (std::uint32_t j = 0; j < to.formulas.size(); ++j) {
      if (!used[j] && to.formulas[j] == from.formulas[i]) {
        used[j] = true;
        out.map_formula({from_path, i}, {to_path, j});
        found = true;
        break;
      }
    }
    if (!found) throw std::invalid_argument("sequents are not isomorphic");
  }
  if (from.children.size() != to.children.size()) {
    throw std::invalid_argument("sequents are not isomorphic");
  }
  std::vector<Sequent> to_canon;
  to_canon.reserve(to.children.size());
  for (const auto& c : to.children) to_canon.push_back(canonical(c));
  std::vector<bool> used_child(to.children.size(), false);
  for (std::uint32_t i = 0; i < from.children.size(); ++i) {
    Sequent key = canonical(from.children[i]);
    bool found = false;
    for (std::uint32_t j = 0; j < to.children.size(); ++j) {
      if (!used_child[j] && compare_canonical_forms(key, to_canon[j]) == 0) {
        used_child[j] = true;
        from_path.push_back(i);
        to_path.push_back(j);
        match_into(from.children[i], to.children[j], from_path, to_path, out);
        from_path.pop_back();
        to_path.pop_back();
        found = true;
        break;
      }
    }
    if (!found) throw std::invalid_argument("sequents are not isomorphic");
  }
}

}  // namespace

Relocation match(const Sequent& from, const Sequent& to) {
  if (from.formulas.size() != to.formulas.size()) {
    throw std::invalid_argument("sequents are not isomorphic");
  }
  Relocation out;
  Path a;
  Path b;
  match_into(from, to, a, b, out);
  return out;
}

struct SequentEditor::Node {
  std::vector<std::pair<Formula, std::optional<Occurrence>>> formulas;
  std::vector<std::unique_ptr<Node>> children;
  std::optional<Path> origin;
  // Original nodes whose content was moved here.
  std::vector<Path> merged;
  Node* parent = nullptr;
};

SequentEditor::SequentEditor(const Sequent& original) {
  struct Builder {
    std::map<Path, Node*>& index;
    std::unique_ptr<Node> build(const Sequent& s, Path& path, Node* parent, bool tagged) {
      auto node = std::make_unique<Node>();
      node->parent = parent;
      if (tagged) {
        node->origin = path;
        index[path] = node.get();
      }
      for (std::uint32_t i = 0; i < s.formulas.size(); ++i) {
        node->formulas.emplace_back(
            s.formulas[i], tagged ? std::optional<Occurrence>(Occurrence{path, i}) : std::nullopt);
      }
      for (std::uint32_t i = 0; i < s.children.size(); ++i) {
        path.push_back(i);
        node->children.push_back(build(s.children[i], path, node.get(), tagged));
        path.pop_back();
      }
      return node;
    }
  };
  Path path;
  root_ = Builder{index_}.build(original, path, nullptr, true);
}

SequentEditor::~SequentEditor() = default;

SequentEditor::Node* SequentEditor::lookup(const Path& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) throw PathError("editor: no original node at " + to_string(p));
  return it->second;
}

void SequentEditor::remove_formula(const Occurrence& o) {
  Node* node = lookup(o.node);
  auto it = std::find_if(node->formulas.begin(), node->formulas.end(),
                         [&](const auto& entry) { return entry.second == o; });
  if (it == node->formulas.end()) {
    throw PathError("editor: no original formula " + std::to_string(o.index) + " at " +
                    to_string(o.node));
  }
  node->formulas.erase(it);
}

void SequentEditor::add_formula(const Path& node, Formula f) {
  lookup(node)->formulas.emplace_back(f, std::nullopt);
}

void SequentEditor::add_child(const Path& node, const Sequent& child) {
  struct Builder {
    std::unique_ptr<Node> build(const Sequent& s, Node* parent) {
      auto n = std::make_unique<Node>();
      n->parent = parent;
      for (const auto& f : s.formulas) n->formulas.emplace_back(f, std::nullopt);
      for (const auto& c : s.children) n->children.push_back(build(c, n.get()));
      return n;
    }
  };
  Node* target = lookup(node);
  target->children.push_back(Builder{}.build(child, target));
}

void SequentEditor::move_content(const Path& from, const Path& into) {
  Node* source = lookup(from);
  Node* target = lookup(into);
  if (source == target || source->parent == nullptr) {
    throw std::invalid_argument("editor: invalid move_content");
  }
  for (const Node* up = target; up != nullptr; up = up->parent) {
    if (up == source) throw std::invalid_argument("editor: move into own subtree");
  }
  if (source->origin) target->merged.push_back(*source->origin);
  for (auto& m : source->merged) target->merged.push_back(std::move(m));
  for (auto& f : source->formulas) target->formulas.push_back(std::move(f));
  for (auto& c : source->children) {
    c->parent = target;
    target->children.push_back(std::move(c));
  }
  Node* parent = source->parent;
  index_.erase(from);
  std::erase_if(parent->children, [&](const auto& c) { return c.get() == source; });
}

void SequentEditor::sink(const Path& child, std::size_t length) {
  if (length < 1) throw std::invalid_argument("editor: sink length must be positive");
  Node* node = lookup(child);
  Node* parent = node->parent;
  if (parent == nullptr) throw std::invalid_argument("editor: cannot sink the root");
  if (length == 1) return;
  auto slot = std::find_if(parent->children.begin(), parent->children.end(),
                           [&](const auto& c) { return c.get() == node; });
  std::unique_ptr<Node> original = std::move(*slot);
  auto top = std::make_unique<Node>();
  top->parent = parent;
  Node* bottom = top.get();
  for (std::size_t i = 2; i < length; ++i) {
    auto next = std::make_unique<Node>();
    next->parent = bottom;
    Node* raw = next.get();
    bottom->children.push_back(std::move(next));
    bottom = raw;
  }
  original->parent = bottom;
  bottom->children.push_back(std::move(original));
  *slot = std::move(top);
}

void SequentEditor::remove_subtree(const Path& child) {
  Node* node = lookup(child);
  Node* parent = node->parent;
  if (parent == nullptr) throw std::invalid_argument("editor: cannot remove the root");
  std::erase_if(index_, [&](const auto& entry) {
    for (const Node* up = entry.second; up != nullptr; up = up->parent) {
      if (up == node) return true;
    }
    return false;
  });
  std::erase_if(parent->children, [&](const auto& c) { return c.get() == node; });
}

Sequent SequentEditor::result() const {
  struct Writer {
    Sequent write(const Node& n) {
      Sequent s;
      for (const auto& f : n.formulas) s.formulas.push_back(f.first);
      for (const auto& c : n.children) s.children.push_back(write(*c));
      return s;
    }
  };
  return Writer{}.write(*root_);
}

Relocation SequentEditor::relocation() const {
  struct Walker {
    Relocation& out;
    void walk(const Node& n, Path& path) {
      if (n.origin) out.map_node(*n.origin, path);
      for (const auto& m : n.merged) out.map_node(m, path);
      for (std::uint32_t i = 0; i < n.formulas.size(); ++i) {
        if (n.formulas[i].second) out.map_formula(*n.formulas[i].second, {path, i});
      }
      for (std::uint32_t i = 0; i < n.children.size(); ++i) {
        path.push_back(i);
        walk(*n.children[i], path);
        path.pop_back();
      }
    }
  };
  Relocation out;
  Path path;
  Walker{out}.walk(*root_, path);
  return out;
}

}  // namespace nestedk
