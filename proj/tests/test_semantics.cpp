#include <doctest.h>

#include "nestedk/semantics.hpp"
#include "support.hpp"

using namespace nestedk;
using nestedk::testing::f;
using nestedk::testing::s;

namespace {

Relation chain(std::size_t length) {
  Relation r;
  for (World w = 0; w < length; ++w) r.insert({w, w + 1});
  return r;
}

}  // namespace

TEST_CASE("frame closure") {
  Relation r = close_frame(3, chain(2), {2});
  CHECK(r.count({0, 2}));
  CHECK(r.size() == 3);

  Relation t = close_frame(4, chain(3), {2});
  Relation want = chain(3);
  want.insert({{0, 2}, {1, 3}, {0, 3}});
  CHECK(t == want);

  Relation q = close_frame(4, chain(3), {3});
  want = chain(3);
  want.insert({0, 3});
  CHECK(q == want);

  CHECK(is_closed(4, t, {2}));
  CHECK_FALSE(is_closed(4, chain(3), {2}));
  CHECK(close_frame(4, t, {2}) == t);
  CHECK(close_frame(4, chain(3), {}) == chain(3));
}

TEST_CASE("evaluation") {
  KripkeModel m;
  m.worlds = 2;
  CHECK(eval(m, 0, f("[]p")));
  CHECK_FALSE(eval(m, 0, f("<>p")));
  m.edges = {{0, 1}};
  m.valuation[intern_atom("p")] = {1};
  CHECK(eval(m, 0, f("<>p")));
  CHECK_FALSE(eval(m, 0, f("p")));
  CHECK_THROWS_AS(eval(m, 5, f("p")), std::out_of_range);
  CHECK(truth_set(m, f("p")) == std::vector<bool>{false, true});

  KripkeModel c;
  c.worlds = 4;
  c.edges = close_frame(4, chain(3), {2});
  c.valuation[intern_atom("p")] = {0, 1, 2, 3};
  for (World w = 0; w < 4; ++w) CHECK(eval(c, w, form_of(s("<>~p | [][]p"))));
}

TEST_CASE("countermodel search") {
  CHECK_FALSE(find_countermodel(f("<><>p -> <>p"), {2}, 4).has_value());
  auto cm = find_countermodel(f("<><>p -> <>p"), {3}, 4);
  REQUIRE(cm.has_value());
  // Smallest first: the cycle 0 <-> 1 with p at 0 beats the three-world chain.
  CHECK(cm->model.worlds == 2);
  CHECK_FALSE(eval(cm->model, cm->world, f("<><>p -> <>p")));
  CHECK(is_closed(cm->model.worlds, cm->model.edges, {3}));
  CHECK_FALSE(find_countermodel(f("p | ~p"), {}, 4).has_value());
  CHECK_FALSE(find_countermodel(f("p | ~p"), {2, 3}, 3).has_value());
  CHECK(find_countermodel(f("p"), {}, 1).has_value());
  CHECK_THROWS(find_countermodel(f("p"), {}, 6));
}

TEST_CASE("closure under the axioms implies closure under the completion") {
  for (const AxiomSet& x : {AxiomSet{2}, AxiomSet{3}}) {
    auto hat = completion_upto(x, 8);
    AxiomSet big(hat.begin(), hat.end());
    for (std::uint32_t mask = 0; mask < (1U << 9); ++mask) {
      Relation r;
      for (World u = 0; u < 3; ++u) {
        for (World v = 0; v < 3; ++v) {
          if (mask >> (u * 3 + v) & 1U) r.insert({u, v});
        }
      }
      Relation closed = close_frame(3, r, x);
      CHECK(close_frame(3, closed, big) == closed);
    }
  }
}

TEST_CASE("dot output") {
  KripkeModel m;
  m.worlds = 2;
  m.edges = {{0, 1}};
  m.valuation[intern_atom("p")] = {1};
  std::string dot = to_dot(m, 0);
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("->") != std::string::npos);
}
