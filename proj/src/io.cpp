#include "nestedk/io.hpp"

#include <map>

namespace nestedk {

namespace {

Json path_json(const Path& p) { return Json(std::vector<std::uint32_t>(p.begin(), p.end())); }

const Json& field(const Json& j, const std::string& where, const char* key) {
  if (!j.is_object()) throw FormatError(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(where, std::string("missing field \"") + key + "\"");
  return *it;
}

std::string string_field(const Json& j, const std::string& where, const char* key) {
  const Json& v = field(j, where, key);
  if (!v.is_string()) throw FormatError(where + "/" + key, "expected a string");
  return v.get<std::string>();
}

std::size_t number_field(const Json& j, const std::string& where, const char* key) {
  const Json& v = field(j, where, key);
  if (!v.is_number_unsigned()) throw FormatError(where + "/" + key, "expected a natural number");
  return v.get<std::size_t>();
}

std::vector<std::uint32_t> index_list(const Json& j, const std::string& where) {
  if (!j.is_array()) throw FormatError(where, "expected an array");
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number_unsigned() || j[i].get<std::uint64_t>() > UINT32_MAX) {
      throw FormatError(where + "/" + std::to_string(i), "expected an index");
    }
    out.push_back(j[i].get<std::uint32_t>());
  }
  return out;
}

Formula formula_field(const Json& j, const std::string& where, const char* key) {
  std::string text = string_field(j, where, key);
  try {
    return parse_formula(text);
  } catch (const ParseError& e) {
    throw FormatError(where + "/" + key, e.what());
  }
}

RuleKind kind_from_name(const std::string& name, const std::string& where) {
  static const std::map<std::string, RuleKind> kinds = {
      {"id", RuleKind::Id},     {"or", RuleKind::Or},       {"and", RuleKind::And},
      {"box", RuleKind::Box},   {"dia_k", RuleKind::DiaK},  {"dia_4", RuleKind::Dia4},
      {"cut", RuleKind::Cut}};
  auto it = kinds.find(name);
  if (it == kinds.end()) throw FormatError(where, "unknown rule \"" + name + "\"");
  return it->second;
}

RuleInstance rule_from_json(const Json& j, const std::string& where) {
  RuleInstance r;
  r.kind = kind_from_name(string_field(j, where, "name"), where + "/name");
  r.position = index_list(field(j, where, "position"), where + "/position");
  r.principal = index_list(field(j, where, "principal"), where + "/principal");
  if (j.contains("spine")) r.spine = index_list(j["spine"], where + "/spine");
  if (r.kind == RuleKind::DiaK) r.n = r.spine.size();
  if (r.kind == RuleKind::Dia4) r.n = r.spine.size() + 1;
  if (j.contains("n")) r.n = number_field(j, where, "n");
  if (r.kind == RuleKind::Cut) r.cut_formula = formula_field(j, where, "cut_formula");
  return r;
}

Proof proof_at(const Json& j, const std::string& where) {
  std::string text = string_field(j, where, "sequent");
  Sequent s;
  try {
    s = parse_sequent(text);
  } catch (const ParseError& e) {
    throw FormatError(where + "/sequent", e.what());
  }
  RuleInstance r = rule_from_json(field(j, where, "rule"), where + "/rule");
  std::vector<Proof> premises;
  if (j.contains("premises")) {
    const Json& ps = j["premises"];
    if (!ps.is_array()) throw FormatError(where + "/premises", "expected an array");
    for (std::size_t i = 0; i < ps.size(); ++i) {
      premises.push_back(proof_at(ps[i], where + "/premises/" + std::to_string(i)));
    }
  }
  return Proof(std::move(s), std::move(r), std::move(premises));
}

HilbertProof hilbert_at(const Json& j, const std::string& where) {
  std::string step = string_field(j, where, "step");
  if (step == "taut") return HilbertProof::taut(formula_field(j, where, "formula"));
  if (step == "axK") {
    return HilbertProof::ax_k(formula_field(j, where, "a"), formula_field(j, where, "b"));
  }
  if (step == "ax4") {
    return HilbertProof::ax_4(number_field(j, where, "n"), formula_field(j, where, "a"));
  }
  if (step == "mp") {
    return HilbertProof::mp(hilbert_at(field(j, where, "imp"), where + "/imp"),
                            hilbert_at(field(j, where, "ant"), where + "/ant"));
  }
  if (step == "nec") return HilbertProof::nec(hilbert_at(field(j, where, "sub"), where + "/sub"));
  throw FormatError(where + "/step", "unknown step \"" + step + "\"");
}

std::string rule_label(const RuleInstance& r, bool latex) {
  std::string n = std::to_string(r.n);
  switch (r.kind) {
    case RuleKind::Id: return latex ? "\\mathsf{id}" : "id";
    case RuleKind::Or: return latex ? "\\vee" : "or";
    case RuleKind::And: return latex ? "\\wedge" : "and";
    case RuleKind::Box: return latex ? "\\Box" : "box";
    case RuleKind::DiaK: return latex ? "\\Diamond_{k" + n + "}" : "dia_k" + n;
    case RuleKind::Dia4: return latex ? "\\Diamond_{4" + n + "}" : "dia_4" + n;
    case RuleKind::Cut: {
      std::string f = r.cut_formula ? (latex ? to_latex(*r.cut_formula) : to_string(*r.cut_formula))
                                    : "?";
      return latex ? "\\mathsf{cut}(" + f + ")" : "cut " + f;
    }
  }
  return "?";
}

void text_lines(const Proof& p, std::size_t depth, std::string& out) {
  out.append(2 * depth, ' ');
  out += to_string(p.conclusion()) + "   (" + rule_label(p.rule(), false) + " at " +
         to_string(p.rule().position) + ")\n";
  for (const auto& q : p.premises()) text_lines(q, depth + 1, out);
}

void latex_lines(const Proof& p, std::string& out) {
  for (const auto& q : p.premises()) latex_lines(q, out);
  if (p.premises().empty()) out += "\\AxiomC{}\n";
  out += "\\RightLabel{$" + rule_label(p.rule(), true) + "$}\n";
  static const char* infer[] = {"\\UnaryInfC", "\\UnaryInfC", "\\BinaryInfC", "\\TrinaryInfC"};
  out += std::string(infer[std::min<std::size_t>(p.premises().size(), 3)]) + "{$" +
         to_latex(p.conclusion()) + "$}\n";
}

}  // namespace

Json to_json(const RuleInstance& r) {
  Json j{{"name", rule_name(r.kind)}, {"position", path_json(r.position)}};
  j["principal"] = Json(r.principal);
  if (r.kind == RuleKind::DiaK || r.kind == RuleKind::Dia4) {
    j["n"] = r.n;
    j["spine"] = path_json(r.spine);
    j["target"] = path_json(r.target());
  }
  if (r.cut_formula) j["cut_formula"] = to_string(*r.cut_formula);
  return j;
}

Json to_json(const Proof& p) {
  Json j{{"sequent", to_string(p.conclusion())}, {"rule", to_json(p.rule())}};
  Json premises = Json::array();
  for (const auto& q : p.premises()) premises.push_back(to_json(q));
  j["premises"] = std::move(premises);
  return j;
}

Json to_json(const HilbertProof& h) {
  using Step = HilbertProof::Step;
  switch (h.step) {
    case Step::Taut: return {{"step", "taut"}, {"formula", to_string(h.a)}};
    case Step::AxK: return {{"step", "axK"}, {"a", to_string(h.a)}, {"b", to_string(h.b)}};
    case Step::Ax4: return {{"step", "ax4"}, {"n", h.n}, {"a", to_string(h.a)}};
    case Step::Mp: return {{"step", "mp"}, {"imp", to_json(h.subs.at(0))}, {"ant", to_json(h.subs.at(1))}};
    case Step::Nec: return {{"step", "nec"}, {"sub", to_json(h.subs.at(0))}};
  }
  return {};
}

Json to_json(const KripkeModel& m) {
  Json edges = Json::array();
  for (const auto& [u, v] : m.edges) edges.push_back({u, v});
  Json valuation = Json::object();
  for (const auto& [atom, worlds] : m.valuation) {
    valuation[atom_name(atom)] = std::vector<World>(worlds.begin(), worlds.end());
  }
  return {{"worlds", m.worlds}, {"edges", edges}, {"valuation", valuation}};
}

Json to_json(const Countermodel& c) {
  Json j = to_json(c.model);
  j["world"] = c.world;
  return j;
}

Proof proof_from_json(const Json& j) { return proof_at(j, ""); }

HilbertProof hilbert_from_json(const Json& j) { return hilbert_at(j, ""); }

std::string to_text(const Proof& p) {
  std::string out;
  text_lines(p, 0, out);
  return out;
}

std::string to_latex(const Proof& p) {
  std::string out = "\\begin{prooftree}\n";
  latex_lines(p, out);
  return out + "\\end{prooftree}\n";
}

}  // namespace nestedk
