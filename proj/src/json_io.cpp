#include "json_io.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace genmetric {

namespace {

[[noreturn]] void fail(const std::string& message) { throw InputError(message); }

const Json& field(const Json& doc, const char* name) {
  if (!doc.is_object()) fail("expected an object with field \"" + std::string(name) + "\"");
  auto it = doc.find(name);
  if (it == doc.end()) fail("missing field \"" + std::string(name) + "\"");
  return *it;
}

std::string string_field(const Json& doc, const char* name) {
  const Json& v = field(doc, name);
  if (!v.is_string()) fail("field \"" + std::string(name) + "\" must be a string");
  return v.get<std::string>();
}

Rat rational_field(const Json& doc, const char* name) {
  const Json& v = field(doc, name);
  if (!v.is_string()) {
    fail("field \"" + std::string(name) +
         "\" must be a rational string (\"2.5\" or \"5/2\")");
  }
  auto q = try_parse_rational(v.get<std::string>());
  if (!q) {
    fail("field \"" + std::string(name) + "\": malformed rational \"" +
         v.get<std::string>() + "\"");
  }
  return *q;
}

bool bool_field(const Json& doc, const char* name, bool fallback) {
  if (!doc.is_object() || !doc.contains(name)) return fallback;
  const Json& v = doc[name];
  if (!v.is_boolean()) fail("field \"" + std::string(name) + "\" must be a boolean");
  return v.get<bool>();
}

Rat rational_entry(const Json& v, const std::string& where) {
  if (!v.is_string()) fail(where + " must be a rational string");
  auto q = try_parse_rational(v.get<std::string>());
  if (!q) fail(where + ": malformed rational \"" + v.get<std::string>() + "\"");
  return *q;
}

}  // namespace

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(std::string("JSON parse error: ") + e.what());
  }
}

FiniteSpace finite_space_from_json(const Json& doc) {
  const Json& points_json = field(doc, "points");
  if (!points_json.is_array() || points_json.empty()) {
    fail("\"points\" must be a nonempty array of labels");
  }
  std::vector<std::string> points;
  for (const Json& p : points_json) {
    if (!p.is_string()) fail("\"points\" entries must be strings");
    points.push_back(p.get<std::string>());
  }
  const Json& rows = field(doc, "d");
  if (!rows.is_array() || rows.size() != points.size()) {
    fail("\"d\" must be a " + std::to_string(points.size()) + "x" +
         std::to_string(points.size()) + " table");
  }
  std::vector<std::vector<Rat>> table;
  for (size_t i = 0; i < rows.size(); ++i) {
    const Json& row = rows[i];
    if (!row.is_array() || row.size() != points.size()) {
      fail("\"d\" row " + std::to_string(i) + " must have " +
           std::to_string(points.size()) + " entries");
    }
    std::vector<Rat> out;
    for (size_t j = 0; j < row.size(); ++j) {
      out.push_back(rational_entry(row[j], "d[" + std::to_string(i) + "][" +
                                               std::to_string(j) + "]"));
    }
    table.push_back(std::move(out));
  }
  return FiniteSpace::from_rows(std::move(points), table);
}

namespace {

Interval interval_from_json(const Json& doc) {
  Interval iv;
  iv.lo = rational_field(doc, "lo");
  iv.hi = rational_field(doc, "hi");
  iv.lo_open = bool_field(doc, "lo_open", false);
  iv.hi_open = bool_field(doc, "hi_open", false);
  if (iv.empty()) fail("\"domain\" is empty");
  return iv;
}

ParametricSpace parametric_from_json(const Json& doc, int depth) {
  if (depth > 8) fail("\"base\" nesting too deep");
  std::string family = string_field(doc, "family");
  if (family == "satish_rpm") {
    const Json& params = field(doc, "params");
    return ParametricSpace::satish_rpm(rational_field(params, "a"),
                                       rational_field(params, "alpha"),
                                       interval_from_json(field(doc, "domain")),
                                       rational_field(doc, "step"));
  }
  if (family == "abs_plus_c") {
    const Json& params = field(doc, "params");
    return ParametricSpace::abs_plus_c(rational_field(params, "c"),
                                       interval_from_json(field(doc, "domain")),
                                       rational_field(doc, "step"));
  }
  if (family == "shifted") {
    const Json& params = field(doc, "params");
    Rat alpha = rational_field(params, "alpha");
    const Json& base = field(doc, "base");
    if (base.is_object() && base.contains("family")) {
      return ParametricSpace::shifted(parametric_from_json(base, depth + 1), alpha);
    }
    fail("\"shifted\" with a finite base is a finite space; load it as one");
  }
  fail("unknown family \"" + family +
       "\" (expected satish_rpm, abs_plus_c or shifted)");
}

}  // namespace

AnySpace space_from_json(const Json& doc) {
  if (!doc.is_object()) fail("space document must be an object");
  if (doc.contains("family")) {
    // shifted over a finite base collapses to a plain shifted table.
    if (string_field(doc, "family") == "shifted" && doc.contains("base") &&
        doc["base"].is_object() && !doc["base"].contains("family")) {
      const Json& params = field(doc, "params");
      Rat alpha = rational_field(params, "alpha");
      FiniteSpace base = finite_space_from_json(field(doc, "base"));
      return shift_space(base, alpha);
    }
    return parametric_from_json(doc, 0);
  }
  return finite_space_from_json(doc);
}

AnySpace space_from_text(const std::string& text) {
  return space_from_json(parse_json_text(text));
}

FiniteSpace materialized(const AnySpace& space) {
  if (const auto* finite = std::get_if<FiniteSpace>(&space)) return *finite;
  return std::get<ParametricSpace>(space).materialize();
}

Json space_to_json(const FiniteSpace& space) {
  Json doc;
  doc["points"] = space.points();
  Json rows = Json::array();
  for (int i = 0; i < space.size(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < space.size(); ++j) {
      row.push_back(format_rational(space.d(i, j)));
    }
    rows.push_back(std::move(row));
  }
  doc["d"] = std::move(rows);
  return doc;
}

SelfMap map_from_json(const FiniteSpace& space, const Json& doc) {
  const Json& table = field(doc, "map");
  if (!table.is_object()) fail("\"map\" must be an object of point -> point");
  SelfMap map;
  map.image.assign(static_cast<size_t>(space.size()), -1);
  for (auto it = table.begin(); it != table.end(); ++it) {
    int from = space.require(it.key());
    if (!it.value().is_string()) fail("map image of \"" + it.key() + "\" must be a label");
    int to = space.require(it.value().get<std::string>());
    map.image[static_cast<size_t>(from)] = to;
  }
  for (int i = 0; i < space.size(); ++i) {
    if (map.image[static_cast<size_t>(i)] < 0) {
      fail("map is not total: no image for point \"" + space.label(i) + "\"");
    }
  }
  return map;
}

namespace {

Seq sequence_from_labels(const Json& doc, const std::function<int(const std::string&)>& resolve) {
  const Json& prefix = field(doc, "prefix");
  if (!prefix.is_array() || prefix.empty()) {
    fail("\"prefix\" must be a nonempty array of points");
  }
  Seq seq;
  for (const Json& p : prefix) {
    if (!p.is_string()) fail("\"prefix\" entries must be strings");
    seq.prefix.push_back(resolve(p.get<std::string>()));
  }
  const Json& tail = field(doc, "tail");
  if (tail.is_null()) {
    seq.tail = TailKind::None;
    return seq;
  }
  if (!tail.is_object()) fail("\"tail\" must be null or an object");
  if (tail.contains("constant")) {
    if (!tail["constant"].is_string()) fail("\"tail.constant\" must be a point");
    seq.tail = TailKind::Constant;
    seq.cycle.push_back(resolve(tail["constant"].get<std::string>()));
    return seq;
  }
  if (tail.contains("periodic")) {
    const Json& cycle = tail["periodic"];
    if (!cycle.is_array() || cycle.empty()) {
      fail("\"tail.periodic\" must be a nonempty array of points");
    }
    seq.tail = TailKind::Periodic;
    for (const Json& p : cycle) {
      if (!p.is_string()) fail("\"tail.periodic\" entries must be strings");
      seq.cycle.push_back(resolve(p.get<std::string>()));
    }
    return seq;
  }
  fail("\"tail\" must be null, {\"constant\": p} or {\"periodic\": [p, ...]}");
}

}  // namespace

Seq sequence_from_json(const FiniteSpace& space, const Json& doc) {
  return sequence_from_labels(doc, [&](const std::string& label) {
    return space.require(label);
  });
}

ParametricProblem parametric_problem_from_json(
    const ParametricSpace& space, const Json& sequence_doc,
    const std::optional<std::string>& candidate) {
  // Collect every referenced coordinate, then build one exact slice table.
  std::vector<Rat> coords;
  auto intern = [&](const Rat& x) {
    if (!space.in_domain(x)) {
      fail("coordinate " + format_rational(x) + " is outside the space's domain");
    }
    for (size_t i = 0; i < coords.size(); ++i) {
      if (coords[i] == x) return static_cast<int>(i);
    }
    coords.push_back(x);
    return static_cast<int>(coords.size() - 1);
  };

  Seq raw = sequence_from_labels(sequence_doc, [&](const std::string& text) {
    auto q = try_parse_rational(text);
    if (!q) fail("sequence point \"" + text + "\" is not a rational coordinate");
    return intern(*q);
  });
  std::optional<int> cand_index;
  if (candidate) {
    auto q = try_parse_rational(*candidate);
    if (!q) fail("candidate \"" + *candidate + "\" is not a rational coordinate");
    cand_index = intern(*q);
  }

  const size_t n = coords.size();
  std::vector<std::string> labels;
  for (const Rat& x : coords) labels.push_back(format_point_label(x));
  std::vector<Rat> table(n * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i; j < n; ++j) {
      Rat v = space.dist(coords[i], coords[j]);
      table[i * n + j] = v;
      table[j * n + i] = std::move(v);
    }
  }
  return ParametricProblem{FiniteSpace(std::move(labels), std::move(table)),
                           std::move(raw), cand_index};
}

Json sequence_to_json(const FiniteSpace& space, const Seq& seq) {
  Json doc;
  Json prefix = Json::array();
  for (int p : seq.prefix) prefix.push_back(space.label(p));
  doc["prefix"] = std::move(prefix);
  switch (seq.tail) {
    case TailKind::None:
      doc["tail"] = nullptr;
      break;
    case TailKind::Constant:
      doc["tail"] = Json{{"constant", space.label(seq.cycle[0])}};
      break;
    case TailKind::Periodic: {
      Json cycle = Json::array();
      for (int p : seq.cycle) cycle.push_back(space.label(p));
      doc["tail"] = Json{{"periodic", std::move(cycle)}};
      break;
    }
  }
  return doc;
}

SearchQuery query_from_json(const Json& doc) {
  SearchQuery query;
  auto tags = [&](const char* name) {
    const Json& arr = field(doc, name);
    if (!arr.is_array()) fail(std::string("\"") + name + "\" must be an array of class tags");
    std::vector<ClassTag> out;
    for (const Json& t : arr) {
      if (!t.is_string()) fail(std::string("\"") + name + "\" entries must be strings");
      auto tag = parse_class_tag(t.get<std::string>());
      if (!tag) fail("unknown class tag \"" + t.get<std::string>() + "\"");
      out.push_back(*tag);
    }
    return out;
  };
  query.require = tags("require");
  query.forbid = tags("forbid");

  const Json& max_points = field(doc, "max_points");
  if (!max_points.is_number_unsigned() || max_points.get<uint64_t>() < 1) {
    fail("\"max_points\" must be a positive integer");
  }
  query.max_points = static_cast<int>(max_points.get<uint64_t>());

  const Json& values = field(doc, "values");
  if (!values.is_array() || values.empty()) {
    fail("\"values\" must be a nonempty array of rational strings");
  }
  for (size_t i = 0; i < values.size(); ++i) {
    query.values.push_back(rational_entry(values[i], "values[" + std::to_string(i) + "]"));
  }

  const Json& mode = field(doc, "mode");
  if (mode.is_object() && mode.contains("exhaustive") &&
      mode["exhaustive"].is_boolean() && mode["exhaustive"].get<bool>()) {
    query.mode.exhaustive = true;
  } else if (mode.is_object() && mode.contains("seed") && mode.contains("budget")) {
    query.mode.exhaustive = false;
    if (!mode["seed"].is_number_unsigned() || !mode["budget"].is_number_unsigned()) {
      fail("\"mode.seed\" and \"mode.budget\" must be nonnegative integers");
    }
    query.mode.seed = mode["seed"].get<uint64_t>();
    query.mode.budget = mode["budget"].get<uint64_t>();
  } else {
    fail("\"mode\" must be {\"exhaustive\": true} or {\"seed\": n, \"budget\": n}");
  }

  if (doc.contains("semantics")) {
    auto sem = parse_semantics(string_field(doc, "semantics"));
    if (!sem) fail("\"semantics\" must be \"distinct\" or \"pairs\"");
    query.semantics = sem;
  }
  return query;
}

// ---- report serialization --------------------------------------------

Json witness_to_json(const Witness& w) {
  Json doc;
  doc["axiom"] = w.axiom;
  Json points;
  for (const auto& [role, label] : w.points) points[role] = label;
  doc["points"] = std::move(points);
  doc["lhs"] = format_rational(w.lhs);
  doc["rhs"] = format_rational(w.rhs);
  return doc;
}

Json verdict_to_json(const ClassVerdict& v) {
  Json doc;
  doc["class"] = std::string(class_name(v.tag));
  if (is_rectangular(v.tag)) doc["semantics"] = std::string(semantics_name(v.semantics));
  doc["holds"] = v.holds;
  if (v.witness) doc["witness"] = witness_to_json(*v.witness);
  return doc;
}

Json report_to_json(const ClassificationReport& report) {
  Json doc;
  Json verdicts;
  for (const auto& v : report.verdicts) {
    verdicts[std::string(class_name(v.tag))] = verdict_to_json(v);
  }
  doc["verdicts"] = std::move(verdicts);
  doc["zero_self_set"] = report.zero_self_set;
  Json disc = Json::array();
  for (ClassTag tag : report.semantics_discrepancies) {
    disc.push_back(std::string(class_name(tag)));
  }
  doc["semantics_discrepancies"] = std::move(disc);
  return doc;
}

Json convergence_to_json(const ConvergenceVerdict& v) {
  Json doc;
  doc["mode"] = std::string(mode_name(v.mode));
  doc["outcome"] = std::string(outcome_name(v.outcome));
  doc["inconclusive"] = v.outcome == Outcome::Inconclusive;
  if (v.limit_estimate) doc["limit_estimate"] = format_rational(*v.limit_estimate);
  doc["epsilon"] = format_rational(v.epsilon);
  doc["window"] = v.window;
  doc["detail"] = v.detail;
  return doc;
}

Json contraction_to_json(const ContractionCertificate& cert) {
  Json doc;
  doc["condition"] = std::string(condition_name(cert.condition));
  doc["k_min"] = cert.k_min.is_finite ? format_rational(cert.k_min.value)
                                      : std::string("inf");
  doc["admissible"] = cert.admissible;
  doc["binding_pair"] = Json::array();
  return doc;
}

Json trace_to_json(const FiniteSpace& space, const IterationTrace& trace) {
  Json doc;
  Json orbit = Json::array();
  for (int p : trace.orbit) orbit.push_back(space.label(p));
  doc["orbit"] = std::move(orbit);
  auto series = [](const std::vector<Rat>& xs) {
    Json out = Json::array();
    for (const Rat& x : xs) out.push_back(format_rational(x));
    return out;
  };
  doc["rho_n"] = series(trace.rho);
  doc["rho_star_n"] = series(trace.rho_star);
  doc["rho_prime_n"] = series(trace.rho_prime);
  switch (trace.termination) {
    case TerminationKind::FixedPoint:
      doc["terminated"] = Json{{"fixed_point", space.label(trace.fixed_point)}};
      break;
    case TerminationKind::CycleDetected:
      doc["terminated"] = Json{{"cycle_detected", trace.cycle_period}};
      break;
    case TerminationKind::BudgetExhausted:
      doc["terminated"] = "budget_exhausted";
      break;
  }
  return doc;
}

Json theorem_to_json(const FiniteSpace& space, const TheoremCertificate& cert) {
  Json doc;
  doc["condition"] = std::string(condition_name(cert.condition));
  Json c = contraction_to_json(cert.certificate);
  c["binding_pair"] = Json::array({space.label(cert.certificate.binding_pair.first),
                                   space.label(cert.certificate.binding_pair.second)});
  doc["certificate"] = std::move(c);
  doc["fixed_point"] = cert.fixed_point >= 0 ? Json(space.label(cert.fixed_point))
                                             : Json(nullptr);
  doc["self_distance_zero"] = cert.self_distance_zero;
  doc["unique"] = cert.unique;
  Json checks = Json::array();
  for (const auto& check : cert.bound_checks) {
    Json cj;
    cj["name"] = check.name;
    cj["pass"] = check.pass;
    if (!check.steps.empty()) {
      Json steps = Json::array();
      for (const auto& step : check.steps) {
        steps.push_back(Json{{"n", step.n},
                             {"lhs", format_rational(step.lhs)},
                             {"rhs", format_rational(step.rhs)},
                             {"pass", step.pass}});
      }
      cj["steps"] = std::move(steps);
    }
    checks.push_back(std::move(cj));
  }
  doc["bound_checks"] = std::move(checks);
  doc["all_audits_pass"] = cert.all_audits_pass;
  doc["trace"] = trace_to_json(space, cert.trace);
  return doc;
}

Json fixpoint_outcome_to_json(const FiniteSpace& space, const FixpointOutcome& outcome) {
  if (outcome.theorem) return theorem_to_json(space, *outcome.theorem);
  Json doc;
  Json c = contraction_to_json(outcome.certificate);
  c["binding_pair"] = Json::array({space.label(outcome.certificate.binding_pair.first),
                                   space.label(outcome.certificate.binding_pair.second)});
  doc["condition"] = std::string(condition_name(outcome.certificate.condition));
  doc["certificate"] = std::move(c);
  doc["admissible"] = false;
  doc["detail"] = "contraction constant is not admissible; no theorem applies";
  return doc;
}

Json separation_to_json(const SeparationWitness& witness) {
  Json doc;
  doc["found"] = true;
  doc["space"] = space_to_json(witness.space);
  doc["report"] = report_to_json(witness.report);
  doc["canonical"] = witness.canonical;
  return doc;
}

Json suite_to_json(const FiniteSpace& space, const SuiteResult& result) {
  Json doc;
  doc["space_is_mml"] = result.space_is_mml;
  Json items = Json::array();
  for (const auto& report : result.items) {
    Json item;
    item["item"] = report.item;
    item["instances_run"] = report.instances_run;
    item["premise_hits"] = report.premise_hits;
    if (report.counterexample) {
      const auto& ce = *report.counterexample;
      Json cj;
      cj["equation"] = ce.equation;
      cj["sequence"] = sequence_to_json(space, ce.seq_a);
      if (ce.seq_b) cj["sequence_b"] = sequence_to_json(space, *ce.seq_b);
      if (ce.candidate_a) cj["candidate"] = space.label(*ce.candidate_a);
      if (ce.candidate_b) cj["candidate_b"] = space.label(*ce.candidate_b);
      item["counterexample"] = std::move(cj);
    } else {
      item["counterexample"] = nullptr;
    }
    items.push_back(std::move(item));
  }
  doc["items"] = std::move(items);
  return doc;
}

Json hypothesis_failure_to_json(const HypothesisError& err) {
  Json doc;
  doc["hypothesis"] = std::string(class_name(err.cls));
  doc["holds"] = false;
  doc["detail"] = err.what();
  if (err.witness) doc["witness"] = witness_to_json(*err.witness);
  return doc;
}

}  // namespace genmetric
