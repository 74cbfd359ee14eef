#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "epistemic/counterfactual.hpp"
#include "epistemic/decision.hpp"
#include "epistemic/structure.hpp"

namespace epistemic {

inline constexpr int kFormatVersion = 1;

/// Canonical JSON text of a structure document: states, agents and relation
/// pairs sorted by name, two-space indentation, trailing newline. Equal
/// structures always serialize to identical bytes.
std::string serialize_structure(const InformationStructure& s);

/// As above, plus the provenance section (origin hash and one label per
/// counterfactual state, sorted by state name).
std::string serialize_structure(const CounterfactualStructure& c);

using ParsedStructure = std::variant<InformationStructure, CounterfactualStructure>;

/// Parses a structure document. Documents with a provenance section yield a
/// CounterfactualStructure. Throws ParseError on malformed JSON (with the
/// byte offset) and InputError on schema or reference errors.
ParsedStructure parse_structure(std::string_view text);

/// The structure itself, whichever alternative was parsed.
const InformationStructure& underlying(const ParsedStructure& parsed);

/// "fnv1a64:<16 hex digits>" over the canonical serialization.
std::string structure_hash(const InformationStructure& s);

struct DecisionDocument {
  std::vector<Action> actions;
  DecisionFamily family;
};

/// Canonical JSON text of a decision document. Tables are keyed by canonical
/// event strings over `s`.
std::string serialize_decisions(const InformationStructure& s, const DecisionDocument& doc);

/// Parses a decision document against the structure its events refer to.
/// Every agent of `s` needs a table; every table action must be declared.
DecisionDocument parse_decisions(std::string_view text, const InformationStructure& s);

}  // namespace epistemic
