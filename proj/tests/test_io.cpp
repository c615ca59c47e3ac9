#include <doctest.h>

#include "nestedk/io.hpp"
#include "nestedk/prover.hpp"
#include "support.hpp"

using namespace nestedk;
using nestedk::testing::f;
using nestedk::testing::four_system;
using nestedk::testing::k_system;
using nestedk::testing::s;

TEST_CASE("proofs round trip through json") {
  Proof p = derive_axiom_4n(2, f("p & []q"));
  Json j = to_json(p);
  CHECK(j["rule"]["name"] == "or");
  Proof back = proof_from_json(Json::parse(j.dump()));
  CHECK(identical(back.conclusion(), p.conclusion()));
  CHECK(back.size() == p.size());
  CHECK_FALSE(check(back, k_system({2})));

  auto r = prove(singleton(f("<><><>a -> <>a")), four_system({2}));
  REQUIRE(r.proof.has_value());
  CHECK_FALSE(check(proof_from_json(to_json(*r.proof)), four_system({2})));

  Proof cut = hilbert_to_nested(
      HilbertProof::mp(HilbertProof::taut(f("(p | ~p) -> (q | ~q)")), HilbertProof::taut(f("p | ~p"))), {2});
  Proof cut_back = proof_from_json(to_json(cut));
  CHECK(cut_back.cut_count() == 1);
  CHECK_FALSE(check(cut_back, k_system({2}, false, true)));
}

TEST_CASE("malformed proofs name the offending field") {
  Json j = to_json(derive_axiom_4n(1, f("p")));
  j["premises"][0]["rule"]["name"] = "weird";
  try {
    proof_from_json(j);
    FAIL("expected a format error");
  } catch (const FormatError& e) {
    CHECK(e.where() == "/premises/0/rule/name");
  }
  Json k = to_json(derive_axiom_4n(1, f("p")));
  k["premises"][0]["sequent"] = "p, [";
  CHECK_THROWS_AS(proof_from_json(k), FormatError);
  Json m = to_json(derive_axiom_4n(1, f("p")));
  m["rule"].erase("principal");
  CHECK_THROWS_AS(proof_from_json(m), FormatError);
  CHECK_THROWS_AS(proof_from_json(Json::array()), FormatError);
}

TEST_CASE("hilbert proofs round trip") {
  using H = HilbertProof;
  for (const auto& [h, x] : nestedk::testing::hilbert_corpus()) {
    H back = hilbert_from_json(Json::parse(to_json(h).dump()));
    CHECK(conclusion(back) == conclusion(h));
  }
  Json bad = {{"step", "ax4"}, {"n", "two"}, {"a", "p"}};
  CHECK_THROWS_AS(hilbert_from_json(bad), FormatError);
  Json nested = {{"step", "nec"}, {"sub", {{"step", "taut"}, {"formula", "p |"}}}};
  try {
    hilbert_from_json(nested);
    FAIL("expected a format error");
  } catch (const FormatError& e) {
    CHECK(e.where() == "/sub/formula");
  }
}

TEST_CASE("models and rendering") {
  KripkeModel m;
  m.worlds = 2;
  m.edges = {{0, 1}};
  m.valuation[intern_atom("p")] = {1};
  Json j = to_json(Countermodel{m, 0});
  CHECK(j["worlds"] == 2);
  CHECK(j["edges"][0] == Json::array({0, 1}));
  CHECK(j["valuation"]["p"] == Json::array({1}));
  CHECK(j["world"] == 0);

  Proof p = derive_axiom_4n(2, f("p"));
  std::string tex = to_latex(p);
  CHECK(tex.find("\\begin{prooftree}") == 0);
  CHECK(tex.find("\\Diamond_{k2}") != std::string::npos);
  std::string text = to_text(p);
  CHECK(text.find("dia_k2") != std::string::npos);
  CHECK(std::count(text.begin(), text.end(), '\n') == static_cast<long>(p.size()));
}
