// Command line front end: prove, check, elim-cut, translate, completion,
// countermodel.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "nestedk/io.hpp"
#include "nestedk/prover.hpp"
#include "nestedk/rewriter.hpp"
#include "nestedk/translate.hpp"

using namespace nestedk;

namespace {

enum Exit { kOk = 0, kRefuted = 1, kUnknown = 2, kUsage = 64, kDataErr = 65, kIoErr = 74 };

struct ExitError : std::runtime_error {
  ExitError(int code, const std::string& message) : std::runtime_error(message), code(code) {}
  int code;
};

struct Options {
  std::string axioms;
  std::string system = "k-hat";
  bool cut = false;
  std::optional<std::size_t> cut_rank;
  std::string format = "json";
  std::string in;
  std::string out;
  std::string goal;
  std::string from = "hilbert";
  std::string to = "4";
  std::size_t upto = 30;
  std::size_t max_worlds = 4;
  bool dot = false;
};

AxiomSet axioms_of(const Options& o) {
  try {
    return parse_axioms(o.axioms);
  } catch (const std::invalid_argument& e) {
    throw ExitError(kUsage, std::string("--axioms: ") + e.what());
  }
}

SystemSpec system_of(const Options& o, const std::string& name) {
  SystemSpec sys;
  sys.axioms = axioms_of(o);
  if (name == "k" || name == "k-hat") {
    sys.family = Family::DiaK;
  } else if (name == "4" || name == "4-hat") {
    sys.family = Family::Dia4;
  } else {
    throw ExitError(kUsage, "unknown system '" + name + "' (k, k-hat, 4, 4-hat)");
  }
  sys.completed = name.size() > 2;
  sys.cut_allowed = o.cut;
  sys.cut_rank_bound = o.cut_rank;
  return sys;
}

std::string read_input(const std::string& path) {
  std::ostringstream buf;
  if (path.empty() || path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw ExitError(kIoErr, "cannot read " + path);
    buf << in.rdbuf();
  }
  return buf.str();
}

Json read_json(const std::string& path) {
  std::string text = read_input(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ExitError(kDataErr, (path.empty() ? std::string("stdin") : path) + ": byte " +
                                  std::to_string(e.byte) + ": malformed JSON");
  }
}

void write_output(const Options& o, const std::string& text) {
  if (o.out.empty() || o.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(o.out);
  if (!out || !(out << text)) throw ExitError(kIoErr, "cannot write " + o.out);
}

void emit_proof(const Options& o, const Proof& p, const SystemSpec& sys) {
  if (auto v = check(p, sys)) {
    throw std::logic_error("refusing to emit a proof that fails to check: " + v->reason);
  }
  if (o.format == "latex") {
    write_output(o, to_latex(p));
  } else if (o.format == "text") {
    write_output(o, to_text(p));
  } else {
    write_output(o, to_json(p).dump(2) + "\n");
  }
}

Sequent goal_of(const Options& o) {
  try {
    return parse_sequent(o.goal);
  } catch (const ParseError& e) {
    throw ExitError(kUsage, "--goal: " + std::string(e.what()) + " at " +
                                std::to_string(e.position()));
  }
}

template <class F>
auto parsed(const std::string& where, F&& f) {
  try {
    return f();
  } catch (const FormatError& e) {
    throw ExitError(kDataErr, where + ": " + e.what());
  } catch (const HilbertError& e) {
    throw ExitError(kDataErr, where + ": " + e.what());
  }
}

std::string violation_text(const Violation& v) {
  std::string path = "[";
  for (std::size_t i = 0; i < v.node.size(); ++i) path += (i ? "," : "") + std::to_string(v.node[i]);
  return "violation at node " + path + "]: " + v.reason;
}

int run_prove(const Options& o) {
  SystemSpec sys = system_of(o, o.system);
  if (sys.cut_allowed) throw ExitError(kUsage, "proof search is cut-free; drop --cut");
  SearchResult r = prove(goal_of(o), sys);
  switch (r.outcome) {
    case Outcome::Proved: emit_proof(o, *r.proof, sys); return kOk;
    case Outcome::Refuted: {
      Json j = to_json(*r.countermodel);
      write_output(o, o.dot ? to_dot(r.countermodel->model, r.countermodel->world)
                            : j.dump(2) + "\n");
      return kRefuted;
    }
    case Outcome::Unknown: std::cerr << "unknown: " << r.reason << "\n"; return kUnknown;
  }
  return kUnknown;
}

int run_check(const Options& o) {
  SystemSpec sys = system_of(o, o.system);
  Proof p = parsed(o.in, [&] { return proof_from_json(read_json(o.in)); });
  if (auto v = check(p, sys)) {
    std::cout << violation_text(*v) << "\n";
    return kRefuted;
  }
  std::cout << "ok: height " << height(p) << ", cut rank " << cut_rank(p) << ", " << p.size()
            << " nodes under " << to_string(sys) << "\n";
  return kOk;
}

int run_elim_cut(const Options& o) {
  AxiomSet x = axioms_of(o);
  SystemSpec with_cut{Family::DiaK, x, true, true, std::nullopt};
  Proof p = parsed(o.in, [&] { return proof_from_json(read_json(o.in)); });
  if (auto v = check(p, with_cut)) {
    std::cerr << "input does not check under " << to_string(with_cut) << ": " << violation_text(*v)
              << "\n";
    return kRefuted;
  }
  CutStats stats;
  Proof free = eliminate_cuts(p, with_cut, &stats);
  std::cerr << stats.reductions << " reductions in " << stats.stages << " stages\n";
  emit_proof(o, free, SystemSpec{Family::DiaK, x, true, false, std::nullopt});
  return kOk;
}

int run_translate(const Options& o) {
  AxiomSet x = axioms_of(o);
  SystemSpec k_hat{Family::DiaK, x, true, false, std::nullopt};
  SystemSpec k_cut{Family::DiaK, x, true, true, std::nullopt};
  Json j = read_json(o.in);
  Proof p = parsed(o.in, [&] {
    if (o.from == "hilbert") return hilbert_to_nested(hilbert_from_json(j), x);
    if (o.from == "k" || o.from == "k-hat") return proof_from_json(j);
    throw ExitError(kUsage, "--from must be hilbert, k or k-hat");
  });
  if (o.from != "hilbert") {
    SystemSpec source = system_of(o, o.from);
    source.cut_allowed = true;
    if (auto v = check(p, source)) {
      std::cerr << "input does not check under " << to_string(source) << ": " << violation_text(*v)
                << "\n";
      return kRefuted;
    }
  }
  if (o.to == "k-hat" && o.cut) {
    emit_proof(o, p, k_cut);
    return kOk;
  }
  Proof free = p.cut_count() ? eliminate_cuts(p, k_cut) : p;
  if (o.to == "k-hat") {
    emit_proof(o, free, k_hat);
    return kOk;
  }
  Proof four = k_to_4(free);
  if (o.to == "4-hat") {
    emit_proof(o, four, SystemSpec{Family::Dia4, x, true, false, std::nullopt});
    return kOk;
  }
  if (o.to != "4") throw ExitError(kUsage, "--to must be k-hat, 4 or 4-hat");
  emit_proof(o, collapse_completion(four, x), SystemSpec{Family::Dia4, x, false, false, std::nullopt});
  return kOk;
}

int run_completion(const Options& o) {
  std::string line;
  for (auto n : completion_upto(axioms_of(o), o.upto)) {
    if (!line.empty()) line += " ";
    line += std::to_string(n);
  }
  std::cout << line << "\n";
  return kOk;
}

int run_countermodel(const Options& o) {
  if (o.max_worlds > 5) throw ExitError(kUsage, "--max-worlds is at most 5");
  Formula goal = Formula::top();
  try {
    goal = parse_formula(o.goal);
  } catch (const ParseError& e) {
    throw ExitError(kUsage, "--goal: " + std::string(e.what()));
  }
  auto cm = find_countermodel(goal, axioms_of(o), o.max_worlds);
  if (!cm) {
    std::cout << "no countermodel with at most " << o.max_worlds << " worlds\n";
    return kRefuted;
  }
  write_output(o, o.dot ? to_dot(cm->model, cm->world) : to_json(*cm).dump(2) + "\n");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nested sequent prover for K with quasi-transitivity axioms"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub, bool system) {
    sub->add_option("--axioms", o.axioms, "Axiom indices, e.g. 2,3");
    if (system) {
      sub->add_option("--system", o.system, "k, k-hat, 4 or 4-hat")
          ->check(CLI::IsMember({"k", "k-hat", "4", "4-hat"}));
      sub->add_flag("--cut", o.cut, "Allow cut");
      sub->add_option("--cut-rank", o.cut_rank, "Largest admitted cut degree");
    }
    sub->add_option("--format", o.format, "json, latex or text")
        ->check(CLI::IsMember({"json", "latex", "text"}));
    sub->add_option("--out", o.out, "Output file (default stdout)");
  };

  auto* prove_cmd = app.add_subcommand("prove", "Search for a cut-free proof");
  common(prove_cmd, true);
  prove_cmd->add_option("--goal", o.goal, "Formula or nested sequent")->required();
  prove_cmd->add_flag("--dot", o.dot, "Print countermodels as DOT");

  auto* check_cmd = app.add_subcommand("check", "Check a proof in JSON");
  common(check_cmd, true);
  check_cmd->add_option("--in", o.in, "Proof file (default stdin)");

  auto* elim_cmd = app.add_subcommand("elim-cut", "Eliminate cuts under the completed system");
  common(elim_cmd, false);
  elim_cmd->add_option("--in", o.in, "Proof file (default stdin)");

  auto* translate_cmd = app.add_subcommand("translate", "Translate between systems");
  common(translate_cmd, false);
  translate_cmd->add_flag("--cut", o.cut, "Keep cuts (only with --to k-hat)");
  translate_cmd->add_option("--in", o.in, "Input file (default stdin)");
  translate_cmd->add_option("--from", o.from, "hilbert, k or k-hat")
      ->check(CLI::IsMember({"hilbert", "k", "k-hat"}));
  translate_cmd->add_option("--to", o.to, "k-hat, 4 or 4-hat")
      ->check(CLI::IsMember({"k-hat", "4", "4-hat"}));

  auto* completion_cmd = app.add_subcommand("completion", "List the completion of an axiom set");
  completion_cmd->add_option("--axioms", o.axioms, "Axiom indices, e.g. 2,3")->required();
  completion_cmd->add_option("--upto", o.upto, "Largest index listed");

  auto* cm_cmd = app.add_subcommand("countermodel", "Search small closed models");
  cm_cmd->add_option("--axioms", o.axioms, "Axiom indices, e.g. 2,3");
  cm_cmd->add_option("--goal", o.goal, "Formula")->required();
  cm_cmd->add_option("--max-worlds", o.max_worlds, "At most 5");
  cm_cmd->add_flag("--dot", o.dot, "Print as DOT");
  cm_cmd->add_option("--out", o.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*prove_cmd) return run_prove(o);
    if (*check_cmd) return run_check(o);
    if (*elim_cmd) return run_elim_cut(o);
    if (*translate_cmd) return run_translate(o);
    if (*completion_cmd) return run_completion(o);
    if (*cm_cmd) return run_countermodel(o);
  } catch (const ExitError& e) {
    std::cerr << "nestedk: " << e.what() << "\n";
    return e.code;
  }
  return kUsage;
}
