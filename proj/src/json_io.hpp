#pragma once

#include <optional>
#include <string>
#include <variant>

#include <json.hpp>

#include "convergence.hpp"
#include "fixpoint.hpp"
#include "parametric.hpp"
#include "search.hpp"
#include "space.hpp"

namespace genmetric {

// Output objects keep their insertion order so emitted documents are
// schema-stable and diffable.
using Json = nlohmann::ordered_json;

// ---- document parsing ------------------------------------------------
// All parsers throw InputError with a field-level diagnostic. Rationals are
// strings, decimal ("2.5") or fraction ("5/2").

Json parse_json_text(const std::string& text);

// Finite space: {"points": ["a", ...], "d": [["0", "1"], ...]}
// Parametric:   {"family": "satish_rpm"|"abs_plus_c"|"shifted",
//                "params": {...}, "domain": {"lo","hi","lo_open","hi_open"},
//                "step": r, "base": <space document, shifted only>}
using AnySpace = std::variant<FiniteSpace, ParametricSpace>;
AnySpace space_from_json(const Json& doc);
AnySpace space_from_text(const std::string& text);
FiniteSpace finite_space_from_json(const Json& doc);
// Materializes parametric spaces.
FiniteSpace materialized(const AnySpace& space);

Json space_to_json(const FiniteSpace& space);

// {"map": {"a": "b", ...}}, total on the space's points.
SelfMap map_from_json(const FiniteSpace& space, const Json& doc);

// {"prefix": [...], "tail": null | {"constant": p} | {"periodic": [p, ...]}}
// For a finite carrier the points are labels. For a parametric carrier they
// are exact coordinates; the referenced coordinates (sequence, candidate)
// are collected into a small exact distance table so the convergence
// machinery runs on one code path.
Seq sequence_from_json(const FiniteSpace& space, const Json& doc);

struct ParametricProblem {
  FiniteSpace slice;  // exact distances among every referenced coordinate
  Seq seq;
  std::optional<int> candidate;
};
ParametricProblem parametric_problem_from_json(const ParametricSpace& space,
                                               const Json& sequence_doc,
                                               const std::optional<std::string>& candidate);

Json sequence_to_json(const FiniteSpace& space, const Seq& seq);

// {"require": [...], "forbid": [...], "max_points": n, "values": [...],
//  "mode": {"exhaustive": true} | {"seed": n, "budget": n},
//  "semantics": "distinct"|"pairs"}
SearchQuery query_from_json(const Json& doc);

// ---- report serialization --------------------------------------------

Json witness_to_json(const Witness& w);
Json verdict_to_json(const ClassVerdict& v);
Json report_to_json(const ClassificationReport& report);
Json convergence_to_json(const ConvergenceVerdict& v);
Json contraction_to_json(const ContractionCertificate& cert);
Json trace_to_json(const FiniteSpace& space, const IterationTrace& trace);
Json theorem_to_json(const FiniteSpace& space, const TheoremCertificate& cert);
Json fixpoint_outcome_to_json(const FiniteSpace& space, const FixpointOutcome& outcome);
Json separation_to_json(const SeparationWitness& witness);
Json suite_to_json(const FiniteSpace& space, const SuiteResult& result);
Json hypothesis_failure_to_json(const HypothesisError& err);

}  // namespace genmetric
