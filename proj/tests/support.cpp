#include "support.hpp"

#include "nestedk/prover.hpp"
#include "nestedk/semantics.hpp"

namespace nestedk::testing {

Formula f(const char* text) { return parse_formula(text); }
Sequent s(const char* text) { return parse_sequent(text); }

SystemSpec k_system(AxiomSet x, bool completed, bool cut) {
  SystemSpec sys;
  sys.family = Family::DiaK;
  sys.axioms = std::move(x);
  sys.completed = completed;
  sys.cut_allowed = cut;
  return sys;
}

SystemSpec four_system(AxiomSet x, bool completed) {
  SystemSpec sys;
  sys.family = Family::Dia4;
  sys.axioms = std::move(x);
  sys.completed = completed;
  return sys;
}

Formula random_formula(std::mt19937& rng, std::size_t atoms, std::size_t modal, std::size_t size) {
  static const char* names[] = {"a", "b", "c"};
  auto pick = [&](std::size_t k) { return std::uniform_int_distribution<std::size_t>(0, k - 1)(rng); };
  if (size <= 1) {
    AtomId id = intern_atom(names[pick(atoms)]);
    return pick(2) ? Formula::atom(id) : Formula::neg_atom(id);
  }
  std::size_t choice = pick(modal > 0 ? 4 : 2);
  if (choice >= 2) {
    Formula body = random_formula(rng, atoms, modal - 1, size - 1);
    return choice == 2 ? Formula::box(body) : Formula::dia(body);
  }
  std::size_t left = 1 + pick(size - 1);
  // Split the modal budget so the additive degree stays within bounds.
  std::size_t lm = modal == 0 ? 0 : pick(modal + 1);
  Formula l = random_formula(rng, atoms, lm, left);
  Formula r = random_formula(rng, atoms, modal - lm, size - left);
  return choice == 0 ? Formula::conj(l, r) : Formula::disj(l, r);
}

std::set<std::size_t> completion_fixpoint(const AxiomSet& x, std::size_t bound) {
  std::set<std::size_t> cur;
  for (auto n : x) {
    if (n <= bound) cur.insert(n);
  }
  for (;;) {
    std::set<std::size_t> next = cur;
    for (auto m : cur) {
      for (auto n : cur) {
        if (m + n - 1 <= bound) next.insert(m + n - 1);
      }
    }
    if (next == cur) return cur;
    cur = std::move(next);
  }
}

std::vector<HilbertCase> hilbert_corpus() {
  using H = HilbertProof;
  Formula p = f("p"), q = f("q"), r = f("r");
  std::vector<HilbertCase> out;
  auto add = [&](H h, AxiomSet x) { out.push_back({std::move(h), std::move(x)}); };
  auto self = [&](Formula a) { return H::taut(implies(a, a)); };

  for (AxiomSet x : {AxiomSet{2}, AxiomSet{3}, AxiomSet{2, 3}}) {
    std::size_t n = *x.rbegin();
    Formula ax = axiom_4n(n, p);
    add(H::ax_4(n, p), x);
    add(H::ax_4(n, f("[]q")), x);
    // 4n(p) again, through two modus ponens steps.
    add(H::mp(H::mp(H::taut(implies(ax, implies(implies(q, q), ax))), H::ax_4(n, p)), self(q)),
        x);
    add(H::nec(H::ax_4(n, q)), x);
    Formula boxed = Formula::box(axiom_4n(n, q));
    add(H::mp(H::mp(H::taut(implies(boxed, implies(implies(r, r), boxed))),
                    H::nec(H::ax_4(n, q))),
              self(r)),
        x);
    // []<>^n p -> []<>p by k.
    add(H::mp(H::ax_k(dia_power(n, p), Formula::dia(p)), H::nec(H::ax_4(n, p))), x);
  }
  // <><><>p -> <>p from 4_2 twice by hypothetical syllogism.
  {
    Formula p3 = dia_power(3, p), p2 = dia_power(2, p), p1 = Formula::dia(p);
    Formula chain = implies(implies(p3, p2), implies(implies(p2, p1), implies(p3, p1)));
    add(H::mp(H::mp(H::taut(chain), H::ax_4(2, p1)), H::ax_4(2, p)), {2});
  }
  add(H::ax_k(p, q), {2});
  add(H::ax_k(f("[]p"), f("p & q")), {3});
  add(H::nec(H::ax_k(p, q)), {2});
  Formula em_p = Formula::disj(p, negate(p)), em_q = Formula::disj(q, negate(q));
  add(H::mp(H::taut(implies(em_p, em_q)), H::taut(em_p)), {2});
  add(H::nec(H::nec(H::taut(em_q))), {3});
  add(H::mp(H::ax_k(q, q), H::nec(self(q))), {2, 3});
  return out;
}

std::vector<Occurrence> occurrences(const Sequent& s) {
  std::vector<Occurrence> out;
  for (const auto& path : nodes(s)) {
    const auto& fs = s.at(path).formulas;
    for (std::uint32_t i = 0; i < fs.size(); ++i) out.push_back({path, i});
  }
  return out;
}

std::vector<Path> nodes(const Sequent& s) {
  std::vector<Path> out{{}};
  for (std::size_t k = 0; k < out.size(); ++k) {
    Path p = out[k];
    for (std::uint32_t i = 0; i < s.at(p).children.size(); ++i) out.push_back(concat(p, {i}));
  }
  return out;
}

bool valid_upto(const Sequent& s, const AxiomSet& x, std::size_t worlds) {
  return !find_countermodel(form_of(s), x, worlds).has_value();
}

std::vector<ProofCase> random_proofs(std::mt19937& rng, std::size_t count) {
  using H = HilbertProof;
  static const AxiomSet choices[] = {{2}, {3}, {2, 3}};
  std::vector<ProofCase> out;
  Budget budget;
  budget.max_steps = 20000;
  while (out.size() < count) {
    AxiomSet x = choices[rng() % 3];
    auto hat = completion_upto(x, 5);
    std::size_t n = hat[rng() % hat.size()];
    Formula a = random_formula(rng, 2, 2, 1 + rng() % 4);
    Formula b = random_formula(rng, 2, 1, 1 + rng() % 3);
    std::optional<Proof> p;
    switch (rng() % 4) {
      case 0: {
        auto r = prove(singleton(Formula::disj(a, negate(a))), k_system(x, true), budget);
        if (r.proof) p = r.proof;
        break;
      }
      case 1: {
        auto r = prove(singleton(Formula::disj(axiom_4n(n, a), b)), k_system(x, true), budget);
        if (r.proof) p = r.proof;
        break;
      }
      case 2: {
        Formula c = Formula::disj(b, negate(b));
        H h = H::mp(H::taut(implies(c, Formula::disj(a, negate(a)))), H::taut(c));
        if (rng() % 2) h = H::nec(h);
        p = hilbert_to_nested(h, x);
        break;
      }
      default: {
        std::size_t raw = *std::next(x.begin(), static_cast<std::ptrdiff_t>(rng() % x.size()));
        H h = H::ax_4(raw, a);
        if (rng() % 2) h = H::nec(h);
        p = hilbert_to_nested(h, x);
        break;
      }
    }
    if (!p) continue;
    if (rng() % 2) {
      Sequent wrapper = singleton(random_formula(rng, 2, 1, 2));
      wrapper.children.push_back(singleton(b));
      Path at = rng() % 2 ? Path{} : Path{0};
      p = lift_into_context(*p, wrapper, at);
    }
    out.push_back({*p, x});
  }
  return out;
}

}  // namespace nestedk::testing
