#include <doctest.h>

#include "nestedk/semantics.hpp"
#include "support.hpp"

using namespace nestedk;
using nestedk::testing::f;
using nestedk::testing::s;

TEST_CASE("parse and print") {
  CHECK(to_string(s("{}")) == "{}");
  CHECK(s("p, [q, []], r").formulas.size() == 2);
  CHECK(to_string(s("p, [q, []]")) == "p, [q, []]");
  CHECK(s("[ ]").children.size() == 1);
  CHECK(s("[[]]").at({0}).children.size() == 1);
  CHECK_THROWS_AS(s("p, [q"), ParseError);
  for (const char* text : {"p, [q, [r, ~p]], [[]]", "<>a, [b, [[]]]", "[]p, []"}) {
    CHECK(identical(s(to_string(s(text)).c_str()), s(text)));
  }
}

TEST_CASE("multiset equality ignores order at every level") {
  CHECK(s("p, q, [a, [b], [c]]") == s("[[c], a, [b]], q, p"));
  CHECK_FALSE(s("p, p") == s("p"));
  CHECK_FALSE(s("[p], [q]") == s("[p, q]"));
  CHECK_FALSE(identical(s("p, q"), s("q, p")));
}

TEST_CASE("plug") {
  CHECK(plug(s("p, []"), {0}, s("{}")) == s("p, []"));
  CHECK(plug(s("p, [q]"), {0}, s("r")) == s("p, [q, r]"));
  Sequent out = plug(s("[[]]"), {0, 0}, s("a, [b]"));
  CHECK(out == s("[[a, [b]]]"));
  CHECK(form_of(out) == Formula::disj(Formula::bottom(),
                                      Formula::box(Formula::disj(
                                          Formula::bottom(),
                                          Formula::box(Formula::disj(
                                              Formula::disj(f("a"), Formula::bottom()),
                                              Formula::box(Formula::disj(f("b"), Formula::bottom()))))))));
  CHECK_THROWS_AS(plug(s("p"), {0}, s("q")), PathError);
}

TEST_CASE("form_of is literal") {
  CHECK(form_of(s("{}")) == Formula::bottom());
  CHECK(form_of(s("p")) == Formula::disj(f("p"), Formula::bottom()));
  CHECK(form_of(s("p, [q]")) == Formula::disj(Formula::disj(f("p"), Formula::bottom()),
                                              Formula::box(Formula::disj(f("q"), Formula::bottom()))));
}

TEST_CASE("equal sequents have equivalent forms") {
  Sequent a = s("p, [q, [~p]], [r]");
  Sequent b = s("[r], [[~p], q], p");
  Formula eq = Formula::conj(implies(form_of(a), form_of(b)), implies(form_of(b), form_of(a)));
  CHECK_FALSE(find_countermodel(eq, {}, 3).has_value());
}

TEST_CASE("depth and chains") {
  CHECK(depth_of({}) == 0);
  CHECK(depth_of({0}) == 1);
  CHECK(depth_of({0, 1, 0}) == 3);
  CHECK(chain_positions(s("[[]]"), {}, 2).size() == 1);
  CHECK(chain_positions(s("[a], [b]"), {}, 1).size() == 2);
  CHECK(chain_positions(s("[[x], [y]]"), {}, 2).size() == 2);
  CHECK(chain_positions(s("[[x], [y]], [z]"), {}, 2).size() == 2);
  CHECK(chain_positions(s("p"), {}, 1).empty());
}

TEST_CASE("match gives an isomorphism") {
  Sequent a = s("p, q, [a, [b]], [c]");
  Sequent b = s("[c], [[b], a], q, p");
  Relocation r = match(a, b);
  for (const auto& o : nestedk::testing::occurrences(a)) {
    Occurrence to = r.formula_or_throw(o);
    CHECK(b.at(to.node).formulas[to.index] == a.at(o.node).formulas[o.index]);
  }
  CHECK_THROWS(match(a, s("p")));
}

TEST_CASE("editor relocations") {
  Sequent a = s("p, q, [a], [b]");
  SequentEditor ed(a);
  ed.remove_formula({{}, 0});
  ed.move_content({1}, {0});
  Sequent out = ed.result();
  CHECK(out == s("q, [a, b]"));
  Relocation r = ed.relocation();
  CHECK_FALSE(r.formula({{}, 0}).has_value());
  Occurrence moved = r.formula_or_throw({{1}, 0});
  CHECK(out.at(moved.node).formulas[moved.index] == f("b"));

  SequentEditor sink(a);
  sink.sink({0}, 3);
  CHECK(sink.result() == s("p, q, [[[a]]], [b]"));
  Path deep = sink.relocation().node_or_throw({0});
  CHECK(deep.size() == 3);
}
