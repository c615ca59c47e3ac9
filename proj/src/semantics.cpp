#include "nestedk/semantics.hpp"

#include <algorithm>
#include <cstdint>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace nestedk {

namespace {

using Row = std::vector<std::uint64_t>;
using Matrix = std::vector<Row>;

Matrix to_matrix(std::size_t worlds, const Relation& edges) {
  Matrix m(worlds, Row((worlds + 63) / 64, 0));
  for (auto [u, w] : edges) {
    if (u >= worlds || w >= worlds) throw std::out_of_range("edge mentions an unknown world");
    m[u][w / 64] |= std::uint64_t{1} << (w % 64);
  }
  return m;
}

bool test(const Row& r, std::size_t w) { return (r[w / 64] >> (w % 64)) & 1; }

// Rows of R^n for each exponent in x, up to the largest.
bool close_once(Matrix& m, const AxiomSet& x) {
  std::size_t worlds = m.size();
  bool changed = false;
  Matrix power = m;
  std::size_t top = x.empty() ? 0 : *x.rbegin();
  for (std::size_t k = 2; k <= top; ++k) {
    Matrix next(worlds, Row(m.empty() ? 0 : m[0].size(), 0));
    for (std::size_t u = 0; u < worlds; ++u) {
      for (std::size_t v = 0; v < worlds; ++v) {
        if (!test(power[u], v)) continue;
        for (std::size_t i = 0; i < next[u].size(); ++i) next[u][i] |= m[v][i];
      }
    }
    power = std::move(next);
    if (!x.count(k)) continue;
    for (std::size_t u = 0; u < worlds; ++u) {
      for (std::size_t i = 0; i < power[u].size(); ++i) {
        if ((power[u][i] & ~m[u][i]) != 0) {
          m[u][i] |= power[u][i];
          changed = true;
        }
      }
    }
  }
  return changed;
}

Relation to_relation(const Matrix& m) {
  Relation out;
  for (std::size_t u = 0; u < m.size(); ++u) {
    for (std::size_t w = 0; w < m.size(); ++w) {
      if (test(m[u], w)) out.insert({u, w});
    }
  }
  return out;
}

void post_order(Formula f, std::vector<Formula>& out, std::unordered_map<Formula, std::size_t>& index) {
  if (index.count(f)) return;
  if (f.is_binary()) {
    post_order(f.left(), out, index);
    post_order(f.right(), out, index);
  } else if (f.is_modal()) {
    post_order(f.body(), out, index);
  }
  index.emplace(f, out.size());
  out.push_back(f);
}

}  // namespace

Relation close_frame(std::size_t worlds, const Relation& edges, const AxiomSet& x) {
  Matrix m = to_matrix(worlds, edges);
  while (close_once(m, x)) {
  }
  return to_relation(m);
}

bool is_closed(std::size_t worlds, const Relation& edges, const AxiomSet& x) {
  return close_frame(worlds, edges, x) == edges;
}

std::vector<bool> truth_set(const KripkeModel& m, Formula f) {
  std::vector<std::vector<World>> succ(m.worlds);
  for (auto [u, w] : m.edges) {
    if (u >= m.worlds || w >= m.worlds) throw std::out_of_range("edge mentions an unknown world");
    succ[u].push_back(w);
  }
  std::vector<Formula> order;
  std::unordered_map<Formula, std::size_t> index;
  post_order(f, order, index);
  std::vector<std::vector<bool>> truth(order.size(), std::vector<bool>(m.worlds, false));
  for (std::size_t i = 0; i < order.size(); ++i) {
    Formula g = order[i];
    auto& t = truth[i];
    for (World w = 0; w < m.worlds; ++w) {
      switch (g.connective()) {
        case Connective::Atom:
        case Connective::NegAtom: {
          auto it = m.valuation.find(g.atom_id());
          bool holds = it != m.valuation.end() && it->second.count(w);
          t[w] = g.connective() == Connective::Atom ? holds : !holds;
          break;
        }
        case Connective::And: t[w] = truth[index[g.left()]][w] && truth[index[g.right()]][w]; break;
        case Connective::Or: t[w] = truth[index[g.left()]][w] || truth[index[g.right()]][w]; break;
        case Connective::Box: {
          const auto& body = truth[index[g.body()]];
          t[w] = std::all_of(succ[w].begin(), succ[w].end(), [&](World v) { return body[v]; });
          break;
        }
        case Connective::Dia: {
          const auto& body = truth[index[g.body()]];
          t[w] = std::any_of(succ[w].begin(), succ[w].end(), [&](World v) { return body[v]; });
          break;
        }
      }
    }
  }
  return truth.back();
}

bool eval(const KripkeModel& m, World w, Formula f) {
  if (w >= m.worlds) throw std::out_of_range("unknown world " + std::to_string(w));
  return truth_set(m, f)[w];
}

namespace {

struct Frame {
  std::uint32_t mask = 0;                 // canonical edge bitmask, bit u*W+w
  std::vector<std::uint32_t> successors;  // per world
};

std::uint32_t permute_mask(std::uint32_t mask, std::size_t w, const std::vector<std::size_t>& perm) {
  std::uint32_t out = 0;
  for (std::size_t u = 0; u < w; ++u) {
    for (std::size_t v = 0; v < w; ++v) {
      if ((mask >> (u * w + v)) & 1) out |= std::uint32_t{1} << (perm[u] * w + perm[v]);
    }
  }
  return out;
}

std::uint32_t close_mask(std::uint32_t mask, std::size_t w, const AxiomSet& x) {
  std::vector<std::uint32_t> succ(w, 0);
  for (std::size_t u = 0; u < w; ++u) {
    for (std::size_t v = 0; v < w; ++v) {
      if ((mask >> (u * w + v)) & 1) succ[u] |= std::uint32_t{1} << v;
    }
  }
  std::size_t top = x.empty() ? 0 : *x.rbegin();
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<std::uint32_t> power = succ;
    for (std::size_t k = 2; k <= top; ++k) {
      std::vector<std::uint32_t> next(w, 0);
      for (std::size_t u = 0; u < w; ++u) {
        for (std::size_t v = 0; v < w; ++v) {
          if ((power[u] >> v) & 1) next[u] |= succ[v];
        }
      }
      power = std::move(next);
      if (!x.count(k)) continue;
      for (std::size_t u = 0; u < w; ++u) {
        if (power[u] & ~succ[u]) {
          succ[u] |= power[u];
          changed = true;
        }
      }
    }
  }
  std::uint32_t out = 0;
  for (std::size_t u = 0; u < w; ++u) out |= succ[u] << (u * w);
  return out;
}

bool rooted(std::uint32_t mask, std::size_t w) {
  std::uint32_t seen = 1;
  std::uint32_t frontier = 1;
  while (frontier) {
    std::uint32_t next = 0;
    for (std::size_t u = 0; u < w; ++u) {
      if (!((frontier >> u) & 1)) continue;
      for (std::size_t v = 0; v < w; ++v) {
        if ((mask >> (u * w + v)) & 1) next |= std::uint32_t{1} << v;
      }
    }
    frontier = next & ~seen;
    seen |= next;
  }
  return seen == (std::uint32_t{1} << w) - 1;
}

// Closed frames on w worlds, every world reachable from 0, one per
// isomorphism class fixing 0, ascending by canonical mask.
std::vector<Frame> enumerate_frames(std::size_t w, const AxiomSet& x) {
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> perm(w);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    perms.push_back(perm);
  } while (w > 1 && std::next_permutation(perm.begin() + 1, perm.end()));

  std::set<std::uint32_t> canon;
  std::uint64_t total = std::uint64_t{1} << (w * w);
  for (std::uint64_t raw = 0; raw < total; ++raw) {
    auto mask = static_cast<std::uint32_t>(raw);
    if (!rooted(mask, w)) continue;
    std::uint32_t closed = close_mask(mask, w, x);
    std::uint32_t best = closed;
    for (const auto& p : perms) best = std::min(best, permute_mask(closed, w, p));
    canon.insert(best);
  }
  std::vector<Frame> out;
  for (auto mask : canon) {
    Frame f{mask, std::vector<std::uint32_t>(w, 0)};
    for (std::size_t u = 0; u < w; ++u) {
      for (std::size_t v = 0; v < w; ++v) {
        if ((mask >> (u * w + v)) & 1) f.successors[u] |= std::uint32_t{1} << v;
      }
    }
    out.push_back(std::move(f));
  }
  return out;
}

const std::vector<Frame>& frames_for(std::size_t w, const AxiomSet& x) {
  static std::mutex lock;
  static std::map<std::pair<std::size_t, AxiomSet>, std::vector<Frame>> cache;
  std::lock_guard<std::mutex> guard(lock);
  auto key = std::make_pair(w, x);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, enumerate_frames(w, x)).first;
  return it->second;
}

using Bits = std::vector<std::uint64_t>;

// Truth of `bit` of the valuation index, for every valuation index.
Bits valuation_bit(std::size_t bit, std::size_t words) {
  static constexpr std::uint64_t kPatterns[6] = {
      0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
      0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull};
  Bits out(words);
  for (std::size_t i = 0; i < words; ++i) {
    out[i] = bit < 6 ? kPatterns[bit] : (((i << 6) >> bit) & 1 ? ~std::uint64_t{0} : 0);
  }
  return out;
}

}  // namespace

std::optional<Countermodel> find_countermodel(Formula f, const AxiomSet& x,
                                              std::size_t max_worlds) {
  if (max_worlds > 5) throw std::invalid_argument("find_countermodel supports at most 5 worlds");
  validate_axioms(x);
  std::vector<AtomId> atoms = atoms_of(f);
  std::vector<Formula> order;
  std::unordered_map<Formula, std::size_t> index;
  post_order(f, order, index);
  std::map<AtomId, std::size_t> atom_slot;
  for (std::size_t a = 0; a < atoms.size(); ++a) atom_slot[atoms[a]] = a;

  for (std::size_t w = 1; w <= max_worlds; ++w) {
    std::size_t bits = atoms.size() * w;
    std::uint64_t valuations = std::uint64_t{1} << bits;
    std::size_t words = std::max<std::uint64_t>(1, valuations / 64);
    std::uint64_t tail = valuations >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << valuations) - 1;

    std::vector<std::vector<Bits>> literal(atoms.size());
    for (std::size_t a = 0; a < atoms.size(); ++a) {
      for (std::size_t v = 0; v < w; ++v) literal[a].push_back(valuation_bit(a * w + v, words));
    }
    const Bits ones(words, ~std::uint64_t{0});
    const Bits zeros(words, 0);

    for (const Frame& frame : frames_for(w, x)) {
      std::vector<std::vector<Bits>> truth(order.size(), std::vector<Bits>(w));
      for (std::size_t i = 0; i < order.size(); ++i) {
        Formula g = order[i];
        for (std::size_t u = 0; u < w; ++u) {
          Bits& t = truth[i][u];
          switch (g.connective()) {
            case Connective::Atom: t = literal[atom_slot[g.atom_id()]][u]; break;
            case Connective::NegAtom:
              t = literal[atom_slot[g.atom_id()]][u];
              for (auto& word : t) word = ~word;
              break;
            case Connective::And:
            case Connective::Or: {
              const Bits& l = truth[index[g.left()]][u];
              const Bits& r = truth[index[g.right()]][u];
              t.resize(words);
              bool conj = g.connective() == Connective::And;
              for (std::size_t k = 0; k < words; ++k) t[k] = conj ? l[k] & r[k] : l[k] | r[k];
              break;
            }
            case Connective::Box:
            case Connective::Dia: {
              bool box = g.connective() == Connective::Box;
              t = box ? ones : zeros;
              const auto& body = truth[index[g.body()]];
              for (std::size_t v = 0; v < w; ++v) {
                if (!((frame.successors[u] >> v) & 1)) continue;
                for (std::size_t k = 0; k < words; ++k) {
                  t[k] = box ? t[k] & body[v][k] : t[k] | body[v][k];
                }
              }
              break;
            }
          }
        }
      }
      const Bits& root = truth.back()[0];
      for (std::size_t k = 0; k < words; ++k) {
        std::uint64_t falsified = ~root[k] & (words == 1 ? tail : ~std::uint64_t{0});
        if (!falsified) continue;
        std::uint64_t v = (static_cast<std::uint64_t>(k) << 6) +
                          static_cast<std::uint64_t>(__builtin_ctzll(falsified));
        Countermodel out;
        out.model.worlds = w;
        for (std::size_t u = 0; u < w; ++u) {
          for (std::size_t t = 0; t < w; ++t) {
            if ((frame.successors[u] >> t) & 1) out.model.edges.insert({u, t});
          }
        }
        for (std::size_t a = 0; a < atoms.size(); ++a) {
          auto& holds = out.model.valuation[atoms[a]];
          for (std::size_t u = 0; u < w; ++u) {
            if ((v >> (a * w + u)) & 1) holds.insert(u);
          }
        }
        return out;
      }
    }
  }
  return std::nullopt;
}

std::string to_dot(const KripkeModel& m, std::optional<World> highlight) {
  std::string out = "digraph model {\n";
  for (World w = 0; w < m.worlds; ++w) {
    std::string label = "w" + std::to_string(w) + ":";
    for (const auto& [atom, worlds] : m.valuation) {
      if (worlds.count(w)) label += " " + atom_name(atom);
    }
    out += "  w" + std::to_string(w) + " [label=\"" + label + "\"";
    if (highlight && *highlight == w) out += ", shape=doublecircle";
    out += "];\n";
  }
  for (auto [u, w] : m.edges) {
    out += "  w" + std::to_string(u) + " -> w" + std::to_string(w) + ";\n";
  }
  return out + "}\n";
}

}  // namespace nestedk
