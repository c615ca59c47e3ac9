#include <doctest.h>

#include "nestedk/semantics.hpp"
#include "nestedk/translate.hpp"
#include "support.hpp"

using namespace nestedk;
using nestedk::testing::f;
using nestedk::testing::k_system;
using nestedk::testing::four_system;
using nestedk::testing::s;

TEST_CASE("premises follow the rule schemas") {
  CHECK(premises_of(s("p | q"), or_rule({}, 0)) == std::vector<Sequent>{s("p, q")});
  auto both = premises_of(s("r, p & q"), and_rule({}, 1));
  REQUIRE(both.size() == 2);
  CHECK(both[0] == s("r, p"));
  CHECK(both[1] == s("r, q"));
  CHECK(premises_of(s("[]p, q"), box_rule({}, 0))[0] == s("q, [p]"));
  CHECK(premises_of(s("<>a, []"), dia_k_rule({}, 0, {0}))[0] == s("<>a, [a]"));
  CHECK(premises_of(s("<>a, [b, []]"), dia_k_rule({}, 0, {0, 0}))[0] == s("<>a, [b, [a]]"));
  CHECK(premises_of(s("<>a, [b, []]"), dia_4_rule({}, 0, {0}))[0] == s("<>a, [<>a, b, []]"));
  auto cut = premises_of(s("{}"), cut_rule({}, f("p")));
  CHECK(cut[0] == s("p"));
  CHECK(cut[1] == s("~p"));
  CHECK(premises_of(s("p, ~p, [q]"), id_rule({}, 0, 1)).empty());
}

TEST_CASE("schema mismatches are rejected") {
  CHECK_THROWS_AS(premises_of(s("p & q"), or_rule({}, 0)), RuleError);
  CHECK_THROWS_AS(premises_of(s("p, ~q"), id_rule({}, 0, 1)), RuleError);
  CHECK_THROWS_AS(premises_of(s("<>a"), dia_k_rule({}, 0, {0})), PathError);
  CHECK_THROWS_AS(premises_of(s("p"), or_rule({}, 3)), RuleError);
  RuleInstance bad = dia_4_rule({}, 0, {});
  CHECK_THROWS_AS(premises_of(s("<>a"), bad), RuleError);
}

TEST_CASE("premises are deterministic") {
  Sequent c = s("<>a, [b, [c]], [d]");
  RuleInstance r = dia_k_rule({}, 0, {0, 0});
  CHECK(identical(premises_of(c, r)[0], premises_of(c, r)[0]));
}

TEST_CASE("the axiom derivation checks only where it should") {
  Proof p = derive_axiom_4n(2, f("a"));
  CHECK(p.conclusion() == s("<>~a | [][]a"));
  CHECK_FALSE(check(p, k_system({2})));
  auto v = check(p, four_system({2}));
  REQUIRE(v.has_value());
  CHECK(v->node == std::vector<std::size_t>{0, 0, 0});
  CHECK(v->reason.find("dia_k(2)") != std::string::npos);
  CHECK(check(p, k_system({3})).has_value());
  CHECK(check(p, k_system({3}, true)).has_value());
  CHECK_FALSE(check(p, k_system({2}, true)));
}

TEST_CASE("identity and measures") {
  Proof id(s("p, ~p, [q]"), id_rule({}, 0, 1));
  CHECK_FALSE(check(id, k_system({})));
  CHECK(height(id) == 0);
  CHECK(cut_rank(id) == 0);

  Proof em(s("p | ~p"), or_rule({}, 0), {Proof(s("p, ~p"), id_rule({}, 0, 1))});
  CHECK_FALSE(check(em, k_system({})));
  CHECK(height(em) == 1);

  Proof left(s("[]p, p, ~p"), id_rule({}, 1, 2));
  Proof right(s("<>~p, p, ~p"), id_rule({}, 1, 2));
  Proof cut(s("p, ~p"), cut_rule({}, f("[]p")), {left, right});
  CHECK(cut_rank(cut) == 1);
  CHECK(cuts_of_rank(cut, 1) == 1);
  CHECK(cuts_of_rank(cut, 0) == 0);
  CHECK(check(cut, k_system({})).has_value());
  CHECK_FALSE(check(cut, k_system({}, false, true)));
  SystemSpec bounded = k_system({}, false, true);
  bounded.cut_rank_bound = 0;
  CHECK(check(cut, bounded).has_value());
}

TEST_CASE("check reports wrong premises with a path") {
  Proof leaf(s("p, ~p"), id_rule({}, 0, 1));
  Proof bad(s("(p | ~p), q"), or_rule({}, 0), {leaf});
  auto v = check(bad, k_system({}));
  REQUIRE(v.has_value());
  CHECK(v->node.empty());
  Proof nested(s("[]((p | ~p) | q)"), box_rule({}, 0),
               {Proof(s("[(p | ~p) | q]"), or_rule({0}, 0), {Proof(s("[p | ~p, q]"), or_rule({0}, 0), {leaf})})});
  auto w = check(nested, k_system({}));
  REQUIRE(w.has_value());
  CHECK(w->node == std::vector<std::size_t>{0, 0});
}

TEST_CASE("dia_k(1) belongs to every system") {
  Proof p = derive_axiom_4n(1, f("p"));
  CHECK_FALSE(check(p, k_system({})));
  CHECK_FALSE(check(p, four_system({2})));
}

TEST_CASE("admission") {
  CHECK(k_system({2}).admits(RuleKind::DiaK, 2));
  CHECK_FALSE(k_system({2}).admits(RuleKind::DiaK, 3));
  CHECK(k_system({2}, true).admits(RuleKind::DiaK, 3));
  CHECK_FALSE(four_system({2}).admits(RuleKind::DiaK, 2));
  CHECK(four_system({2}).admits(RuleKind::Dia4, 2));
  CHECK_FALSE(four_system({2}).admits(RuleKind::Dia4, 3));
  CHECK(four_system({2}, true).admits(RuleKind::Dia4, 3));
  CHECK_FALSE(k_system({2}).admits(RuleKind::Cut, 0));
}

TEST_CASE("accepted proofs are valid on closed frames") {
  for (std::size_t n = 1; n <= 3; ++n) {
    Proof p = derive_axiom_4n(n, f("p & []q"));
    AxiomSet x = n > 1 ? AxiomSet{n} : AxiomSet{};
    REQUIRE_FALSE(check(p, k_system(x)));
    CHECK(nestedk::testing::valid_upto(p.conclusion(), x, 4));
  }
}

TEST_CASE("reroot follows a reordered conclusion") {
  Proof p = derive_axiom_4n(2, f("a")).premises()[0];
  Sequent shuffled = s("[][]a, <>~a");
  CHECK_FALSE(identical(shuffled, p.conclusion()));
  REQUIRE(shuffled == p.conclusion());
  CHECK(identical(reroot(p, p.conclusion()).conclusion(), p.conclusion()));
  Proof r = reroot(p, shuffled);
  CHECK(identical(r.conclusion(), shuffled));
  CHECK(r.rule().principal[0] == 0);
  CHECK_FALSE(check(r, k_system({2})));
}
