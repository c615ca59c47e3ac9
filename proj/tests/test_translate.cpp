#include <doctest.h>

#include "nestedk/rewriter.hpp"
#include "nestedk/semantics.hpp"
#include "support.hpp"

using namespace nestedk;
using nestedk::testing::f;
using nestedk::testing::four_system;
using nestedk::testing::k_system;
using nestedk::testing::s;
using H = HilbertProof;

namespace {

void require_valid(const Proof& p, const SystemSpec& sys) {
  auto v = check(p, sys);
  if (v) FAIL_CHECK("violation at depth " << v->node.size() << ": " << v->reason);
}

bool uses(const Proof& p, RuleKind kind, std::size_t n) {
  if (p.rule().kind == kind && p.rule().n == n) return true;
  for (const auto& q : p.premises()) {
    if (uses(q, kind, n)) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("axiom derivations") {
  Proof one = derive_axiom_4n(1, f("p"));
  CHECK(one.conclusion() == s("<>~p | []p"));
  CHECK(height(one) == 3);
  CHECK(one.rule().kind == RuleKind::Or);
  CHECK(one.premises()[0].rule().kind == RuleKind::Box);
  CHECK(one.premises()[0].premises()[0].rule().kind == RuleKind::DiaK);
  CHECK(one.premises()[0].premises()[0].premises()[0].rule().kind == RuleKind::Id);

  Proof two = derive_axiom_4n(2, f("p"));
  CHECK(height(two) == 4);
  CHECK(uses(two, RuleKind::DiaK, 2));
  require_valid(two, k_system({2}));

  Proof boxed = derive_axiom_4n(2, f("[]q"));
  CHECK(height(boxed) == height(two) + 2);
  require_valid(boxed, k_system({2}));
}

TEST_CASE("tautologies") {
  CHECK(is_tautology(f("p | ~p")));
  CHECK(is_tautology(f("[]p | ~[]p")));
  CHECK(is_tautology(f("(p -> q) -> (~q -> ~p)")));
  CHECK_FALSE(is_tautology(f("[]p | <>p")));
  CHECK_FALSE(is_tautology(f("p | q")));
  CHECK_THROWS_AS(conclusion(H::taut(f("p"))), HilbertError);
}

TEST_CASE("hilbert steps") {
  Proof ax = hilbert_to_nested(H::ax_4(2, f("p")), {2});
  CHECK(ax.conclusion() == singleton(axiom_4n(2, f("p"))));
  CHECK(ax.cut_count() == 0);
  require_valid(ax, k_system({2}));
  CHECK_THROWS_AS(hilbert_to_nested(H::ax_4(3, f("p")), {2}), HilbertError);

  Proof mp = hilbert_to_nested(H::mp(H::taut(f("(p | ~p) -> (q | ~q)")), H::taut(f("p | ~p"))), {2});
  CHECK(mp.conclusion() == s("q | ~q"));
  CHECK(mp.cut_count() == 1);
  require_valid(mp, k_system({2}, false, true));
  CHECK_THROWS_AS(conclusion(H::mp(H::taut(f("p | ~p")), H::taut(f("q | ~q")))), HilbertError);

  Proof atomic = hilbert_to_nested(
      H::mp(H::mp(H::taut(f("(p|~p) -> ((p|~p) -> (q|~q))")), H::taut(f("p|~p"))), H::taut(f("p|~p"))),
      {2});
  CHECK(atomic.cut_count() == 2);

  Proof nec = hilbert_to_nested(H::nec(H::taut(f("p | ~p"))), {2});
  CHECK(nec.conclusion() == s("[](p | ~p)"));
  CHECK(nec.cut_count() == 0);
  CHECK(nec.rule().kind == RuleKind::Box);
  require_valid(nec, k_system({}));

  Proof k = hilbert_to_nested(H::ax_k(f("a"), f("[]b")), {2});
  CHECK(k.conclusion() == singleton(axiom_k(f("a"), f("[]b"))));
  require_valid(k, k_system({}));
}

TEST_CASE("lifting into a context") {
  Proof id(s("p, ~p"), id_rule({}, 0, 1));
  Sequent box_hole = s("[]");
  Proof lifted = lift_into_context(id, box_hole, {0});
  CHECK(lifted.conclusion() == s("[p, ~p]"));
  CHECK(lifted.rule().kind == RuleKind::Id);
  require_valid(lifted, k_system({}));

  Proof beside = lift_into_context(id, s("q, []"), {0});
  CHECK(beside.conclusion() == s("q, [p, ~p]"));

  Proof ax = derive_axiom_4n(2, f("p"));
  Proof deep = lift_into_context(ax, s("r, [s], []"), {1});
  CHECK(deep.conclusion() == s("r, [s], [<>~p | [][]p]"));
  require_valid(deep, k_system({2}));
}

TEST_CASE("propagation translated to the modular system") {
  Proof ax = derive_axiom_4n(2, f("p"));
  Proof four = k_to_4(ax);
  CHECK(four.conclusion() == ax.conclusion());
  CHECK(uses(four, RuleKind::Dia4, 2));
  require_valid(four, four_system({2}));

  Proof only_one = derive_axiom_4n(1, f("p & q"));
  Proof same = k_to_4(only_one);
  CHECK(same.size() == only_one.size());
  require_valid(same, four_system({}));

  Proof three = derive_axiom_4n(3, f("p"));
  require_valid(three, k_system({2}, true));
  Proof three4 = k_to_4(three);
  CHECK(uses(three4, RuleKind::Dia4, 3));
  require_valid(three4, four_system({2}, true));
  CHECK(check(three4, four_system({2})).has_value());

  Proof cut = hilbert_to_nested(H::mp(H::taut(f("(p | ~p) -> (q | ~q)")), H::taut(f("p | ~p"))), {2});
  CHECK_THROWS_AS(k_to_4(cut), std::invalid_argument);
}

TEST_CASE("collapsing the completion") {
  Proof three4 = k_to_4(derive_axiom_4n(3, f("p")));
  Proof raw = collapse_completion(three4, {2});
  CHECK(raw.conclusion() == three4.conclusion());
  CHECK_FALSE(uses(raw, RuleKind::Dia4, 3));
  CHECK(uses(raw, RuleKind::Dia4, 2));
  require_valid(raw, four_system({2}));

  Proof five4 = k_to_4(derive_axiom_4n(5, f("p")));
  require_valid(five4, four_system({3}, true));
  Proof raw5 = collapse_completion(five4, {3});
  CHECK_FALSE(uses(raw5, RuleKind::Dia4, 5));
  CHECK(uses(raw5, RuleKind::Dia4, 3));
  require_valid(raw5, four_system({3}));

  Proof seven4 = k_to_4(derive_axiom_4n(7, f("p")));
  require_valid(collapse_completion(seven4, {3}), four_system({3}));
  require_valid(collapse_completion(seven4, {2}), four_system({2}));

  Proof two4 = k_to_4(derive_axiom_4n(2, f("p")));
  CHECK(collapse_completion(two4, {2}).size() == two4.size());
}

TEST_CASE("the whole pipeline on the corpus") {
  for (const auto& [h, x] : nestedk::testing::hilbert_corpus()) {
    Formula goal = conclusion(h);
    Proof p = hilbert_to_nested(h, x);
    REQUIRE(p.conclusion() == singleton(goal));
    require_valid(p, k_system(x, false, true));
    Proof free = eliminate_cuts(p, k_system(x, true, true));
    CHECK(free.cut_count() == 0);
    require_valid(free, k_system(x, true));
    Proof raw = collapse_completion(k_to_4(free), x);
    CHECK(raw.conclusion() == singleton(goal));
    require_valid(raw, four_system(x));
  }
}
