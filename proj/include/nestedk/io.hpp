#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "nestedk/kernel.hpp"
#include "nestedk/semantics.hpp"
#include "nestedk/translate.hpp"

namespace nestedk {

using Json = nlohmann::json;

/// Malformed input; `where` is a JSON pointer to the offending value.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& where, const std::string& message)
      : std::runtime_error(where + ": " + message), where_(where) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

Json to_json(const RuleInstance& r);
Json to_json(const Proof& p);
Json to_json(const HilbertProof& h);
Json to_json(const KripkeModel& m);
Json to_json(const Countermodel& c);

Proof proof_from_json(const Json& j);
HilbertProof hilbert_from_json(const Json& j);

/// One line per node, premises indented below their conclusion.
std::string to_text(const Proof& p);

/// A bussproofs prooftree environment.
std::string to_latex(const Proof& p);

}  // namespace nestedk
