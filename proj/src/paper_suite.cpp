#include "paper_suite.hpp"

#include <sstream>

#include "convergence.hpp"
#include "fixpoint.hpp"
#include "search.hpp"

namespace genmetric {

namespace {

const char* kMlNotMmlJson = R"({
  "points": ["1", "2", "3", "4", "5"],
  "d": [
    ["3", "2", "2", "2", "2"],
    ["2", "0", "2", "2", "2"],
    ["2", "2", "0", "2", "2"],
    ["2", "2", "2", "0", "2"],
    ["2", "2", "2", "2", "0"]
  ]
})";

const char* kRmlNotRmmlJson = R"({
  "points": ["1", "2", "3", "4", "5"],
  "d": [
    ["5", "5/2", "5/2", "5/2", "5/2"],
    ["5/2", "0", "5/2", "5/2", "5/2"],
    ["5/2", "5/2", "0", "5/2", "5/2"],
    ["5/2", "5/2", "5/2", "0", "5/2"],
    ["5/2", "5/2", "5/2", "5/2", "0"]
  ]
})";

std::string role_of(const Witness& w, const char* role) {
  for (const auto& [r, label] : w.points) {
    if (r == role) return label;
  }
  return "";
}

std::string witness_brief(const Witness& w) {
  std::ostringstream os;
  os << w.axiom << " at";
  for (const auto& [role, label] : w.points) os << " " << role << "=" << label;
  os << ": lhs " << format_rational(w.lhs) << ", rhs " << format_rational(w.rhs);
  return os.str();
}

struct ItemRunner {
  PaperSuiteResult result;

  void item(const std::string& id, const std::function<std::string()>& body) {
    SuiteItemResult item;
    item.id = id;
    try {
      item.detail = body();  // empty string means pass
      item.pass = item.detail.empty();
      if (item.pass) item.detail = "ok";
    } catch (const std::exception& e) {
      item.pass = false;
      item.detail = std::string("exception: ") + e.what();
    }
    if (!item.pass) ++result.failed;
    result.items.push_back(std::move(item));
  }
};

std::string expect(bool ok, const std::string& message) {
  return ok ? std::string() : message;
}

}  // namespace

FiniteSpace fixture_ml_not_mml() {
  return finite_space_from_json(parse_json_text(kMlNotMmlJson));
}

FiniteSpace fixture_rml_not_rmml() {
  return finite_space_from_json(parse_json_text(kRmlNotRmmlJson));
}

ParametricSpace fixture_step_grid() {
  return ParametricSpace::satish_rpm(Rat(3), Rat(3), Interval{Rat(0), Rat(3), false, false},
                                     Rat(1, 2));
}

ParametricSpace fixture_abs_grid() {
  return ParametricSpace::abs_plus_c(Rat(2), Interval{Rat(0), Rat(1), true, true},
                                     Rat(1, 4));
}

FiniteSpace fixture_all_ones(int n) {
  std::vector<Rat> zeros(static_cast<size_t>(n) * static_cast<size_t>(n), Rat(0));
  FiniteSpace zero_space(SpaceEnumerator::labels(n), std::move(zeros));
  return shift_space(zero_space, Rat(1));
}

FiniteSpace fixture_max_pm() {
  std::vector<std::string> points = {"1", "2", "3"};
  std::vector<Rat> table;
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) table.emplace_back(std::max(i, j));
  }
  return FiniteSpace(std::move(points), std::move(table));
}

PaperSuiteResult run_paper_suite() {
  ItemRunner r;
  const auto ml_space = fixture_ml_not_mml();
  const auto rml_space = fixture_rml_not_rmml();

  r.item("ml_not_mml_space_loads", [&] {
    if (ml_space.size() != 5) return std::string("expected 5 points");
    auto report = classify(ml_space);
    std::vector<std::string> expected = {"2", "3", "4", "5"};
    return expect(report.zero_self_set == expected,
                  "zero self-distance set should be {2,3,4,5}");
  });

  r.item("ml_not_mml_is_ml", [&] {
    return expect(check_axioms(ml_space, ClassTag::ML).holds,
                  "the 5-point example must satisfy the metric-like axioms");
  });

  r.item("ml_not_mml_msigma3_witness", [&] {
    auto res = check_axioms(ml_space, ClassTag::MML);
    if (res.holds) return std::string("MML unexpectedly holds");
    const Witness& w = *res.witness;
    if (w.axiom != "mσ3") return "expected axiom mσ3, got " + witness_brief(w);
    bool points_ok = role_of(w, "x") == "2" && role_of(w, "y") == "3" &&
                     role_of(w, "z") == "1";
    bool values_ok = w.lhs == 2 && w.rhs == 1;
    return expect(points_ok && values_ok,
                  "expected x=2, y=3, z=1 with lhs 2, rhs 1; got " + witness_brief(w));
  });

  r.item("rml_not_rmml_is_rml_all_pairs", [&] {
    return expect(check_axioms(rml_space, ClassTag::RML, PairSemantics::AllPairs).holds,
                  "the 5/2 example must satisfy the RML axioms (all pairs)");
  });

  r.item("rml_not_rmml_witness_all_pairs", [&] {
    auto res = check_axioms(rml_space, ClassTag::RMML, PairSemantics::AllPairs);
    if (res.holds) return std::string("RMML (all pairs) unexpectedly holds");
    const Witness& w = *res.witness;
    bool points_ok = role_of(w, "x") == "2" && role_of(w, "y") == "3" &&
                     role_of(w, "u") == "1" && role_of(w, "v") == "1";
    bool values_ok = w.lhs == Rat(5, 2) && w.rhs == 0;
    return expect(w.axiom == "mr3" && points_ok && values_ok,
                  "expected mr3 at x=2, y=3, u=v=1 with lhs 5/2, rhs 0; got " +
                      witness_brief(w));
  });

  r.item("rml_not_rmml_distinct_pairs_holds", [&] {
    if (!check_axioms(rml_space, ClassTag::RMML, PairSemantics::DistinctPairs).holds) {
      return std::string("RMML (distinct pairs) should hold on the 5/2 example");
    }
    auto report = classify(rml_space);
    bool flagged = std::find(report.semantics_discrepancies.begin(),
                             report.semantics_discrepancies.end(),
                             ClassTag::RMML) != report.semantics_discrepancies.end();
    return expect(flagged, "the RMML semantics discrepancy must be surfaced");
  });

  r.item("step_grid_values", [&] {
    FiniteSpace grid = fixture_step_grid().materialize();
    if (grid.size() != 7) return std::string("expected the 7-point grid");
    int one = grid.require("1"), two = grid.require("2");
    if (grid.d(one, two) != 6) {
      return "d(1,2) should be (3*3+1+2)/2 = 6, got " + format_rational(grid.d(one, two));
    }
    return expect(grid.d(one, one) == 1, "d(1,1) should be 1");
  });

  r.item("step_grid_is_rpm", [&] {
    FiniteSpace grid = fixture_step_grid().materialize();
    return expect(check_axioms(grid, ClassTag::RPM).holds,
                  "the step-family grid must satisfy the RPM axioms");
  });

  r.item("step_grid_not_rm", [&] {
    FiniteSpace grid = fixture_step_grid().materialize();
    auto res = check_axioms(grid, ClassTag::RM);
    if (res.holds) return std::string("RM unexpectedly holds on the grid");
    const Witness& w = *res.witness;
    // Self-distance equals the coordinate, so d(x,x) != 0 away from zero.
    bool self_violation = w.axiom == "R1" && role_of(w, "x") == role_of(w, "y") &&
                          w.lhs == parse_rational(role_of(w, "x")) && w.rhs == 0;
    int one = grid.require("1");
    return expect(self_violation && grid.d(one, one) == 1,
                  "expected an R1 self-distance witness and d(1,1) = 1 != 0; got " +
                      witness_brief(w));
  });

  r.item("abs_grid_values", [&] {
    FiniteSpace grid = fixture_abs_grid().materialize();
    if (grid.size() != 3) return std::string("expected points {1/4, 1/2, 3/4}");
    int lo = grid.require("0.25"), hi = grid.require("0.75");
    if (grid.d(lo, hi) != Rat(5, 2)) {
      return "d(1/4,3/4) should be 5/2, got " + format_rational(grid.d(lo, hi));
    }
    return expect(check_axioms(grid, ClassTag::RMML, PairSemantics::AllPairs).holds,
                  "the |x-y|+2 grid must satisfy the RMML axioms");
  });

  r.item("shift_preserves_rmml", [&] {
    FiniteSpace grid = fixture_abs_grid().materialize();
    for (const Rat& alpha : {Rat(1), Rat(1, 2)}) {
      FiniteSpace shifted = shift_space(grid, alpha);
      for (PairSemantics sem : {PairSemantics::AllPairs, PairSemantics::DistinctPairs}) {
        if (!check_axioms(shifted, ClassTag::RMML, sem).holds) {
          return "shift by " + format_rational(alpha) + " lost RMML (" +
                 std::string(semantics_name(sem)) + ")";
        }
      }
    }
    return expect(check_axioms(fixture_all_ones(3), ClassTag::RMML).holds,
                  "the shifted zero space must satisfy the RMML axioms");
  });

  r.item("limits_not_unique", [&] {
    FiniteSpace ones = fixture_all_ones(2);
    Seq constant_a{{0}, TailKind::Constant, {0}};
    auto to_b = sigma_limit_test(ones, constant_a, 1, default_epsilon(), kDefaultWindow);
    auto to_a = sigma_limit_test(ones, constant_a, 0, default_epsilon(), kDefaultWindow);
    return expect(to_a.outcome == Outcome::Holds && to_b.outcome == Outcome::Holds,
                  "the constant sequence must converge to both points of the "
                  "constant-1 space");
  });

  r.item("symmetric_implies_sigma", [&] {
    FiniteSpace ones = fixture_all_ones(2);
    Seq constant_a{{0}, TailKind::Constant, {0}};
    auto sym = symmetric_limit_test(ones, constant_a, 1, default_epsilon(), kDefaultWindow);
    auto sig = sigma_limit_test(ones, constant_a, 1, default_epsilon(), kDefaultWindow);
    return expect(sym.outcome == Outcome::Holds && sig.outcome == Outcome::Holds,
                  "symmetric convergence must imply plain convergence");
  });

  r.item("suite_on_mml_fixtures", [&] {
    for (const FiniteSpace& space : {fixture_all_ones(3), fixture_max_pm()}) {
      SuiteResult suite = mml_theorem_suite(space, 42, 200);
      long hits = 0;
      for (const auto& report : suite.items) {
        hits += report.premise_hits;
        if (report.counterexample) {
          return "item " + std::to_string(report.item) +
                 " found a counterexample on an MML space: " +
                 report.counterexample->equation;
        }
      }
      if (hits == 0) return std::string("suite premises never fired; generation is vacuous");
    }
    return std::string();
  });

  r.item("implication_lattice_small_sweep", [&] {
    // Every table on up to 3 points over {0, 1, 2}; each lattice edge must
    // have zero counterexamples.
    const std::vector<Rat> values = {Rat(0), Rat(1), Rat(2)};
    const std::vector<std::pair<ClassInstance, ClassInstance>> edges = [] {
      using CI = ClassInstance;
      constexpr auto D = PairSemantics::DistinctPairs;
      constexpr auto A = PairSemantics::AllPairs;
      std::vector<std::pair<CI, CI>> e;
      e.emplace_back(CI(ClassTag::Metric), CI(ClassTag::PM));
      e.emplace_back(CI(ClassTag::PM), CI(ClassTag::MML));
      e.emplace_back(CI(ClassTag::MML), CI(ClassTag::ML));
      for (PairSemantics s : {D, A}) {
        e.emplace_back(CI(ClassTag::Metric), CI(ClassTag::RM, s));
        e.emplace_back(CI(ClassTag::RM, s), CI(ClassTag::RPM, s));
        e.emplace_back(CI(ClassTag::RMML, s), CI(ClassTag::RML, s));
      }
      for (ClassTag tag : {ClassTag::RM, ClassTag::RPM, ClassTag::RML, ClassTag::RMML}) {
        e.emplace_back(CI(tag, A), CI(tag, D));
      }
      return e;
    }();
    std::string failure;
    for (int n = 1; n <= 3 && failure.empty(); ++n) {
      SpaceEnumerator en(n, values);
      for (uint64_t i = 0; i < en.total_u64() && failure.empty(); ++i) {
        FiniteSpace space = en.at(i);
        for (const auto& [from, to] : edges) {
          if (check_axioms(space, from.tag, from.sem).holds &&
              !check_axioms(space, to.tag, to.sem).holds) {
            failure = std::string(class_name(from.tag)) + " => " +
                      std::string(class_name(to.tag)) + " broken at n=" +
                      std::to_string(n) + " index " + std::to_string(i);
            break;
          }
        }
      }
    }
    return failure;
  });

  r.item("banach_certificate", [&] {
    FiniteSpace space = FiniteSpace::from_rows(
        {"a", "b", "c"}, {{Rat(0), Rat(2), Rat(1)},
                          {Rat(2), Rat(2), Rat(2)},
                          {Rat(1), Rat(2), Rat(1)}});
    SelfMap map{{0, 2, 0}};  // a -> a, b -> c, c -> a
    auto outcome = verify_theorem(space, map, Condition::Banach, 1,
                                  PairSemantics::AllPairs);
    if (!outcome.certificate.admissible || outcome.certificate.k_min.value != Rat(1, 2)) {
      return std::string("expected an admissible Banach constant of 1/2");
    }
    const auto& tc = *outcome.theorem;
    return expect(tc.fixed_point == 0 && tc.self_distance_zero && tc.unique &&
                      tc.all_audits_pass,
                  "expected fixed point a with zero self-distance, uniqueness and "
                  "clean envelope audits");
  });

  r.item("max_self_certificate", [&] {
    FiniteSpace space = FiniteSpace::from_rows(
        {"a", "b", "c"}, {{Rat(3), Rat(1), Rat(2)},
                          {Rat(1), Rat(1), Rat(2)},
                          {Rat(2), Rat(2), Rat(0)}});
    SelfMap map{{1, 2, 2}};  // a -> b, b -> c, c -> c
    auto banach = contraction_constant(space, map, Condition::Banach,
                                       PairSemantics::AllPairs);
    if (banach.admissible) return std::string("Banach should not be admissible here");
    auto outcome = verify_theorem(space, map, Condition::MaxSelf, 0,
                                  PairSemantics::AllPairs);
    if (!outcome.certificate.admissible || outcome.certificate.k_min.value != Rat(2, 3)) {
      return std::string("expected an admissible max-self constant of 2/3");
    }
    const auto& tc = *outcome.theorem;
    return expect(tc.fixed_point == 2 && tc.self_distance_zero && tc.unique &&
                      tc.all_audits_pass,
                  "expected fixed point c with clean audits");
  });

  r.item("max_displacement_certificate", [&] {
    FiniteSpace space = FiniteSpace::from_rows(
        {"a", "b", "c"}, {{Rat(0), Rat(2), Rat(2)},
                          {Rat(2), Rat(1), Rat(1)},
                          {Rat(2), Rat(1), Rat(0)}});
    SelfMap map{{1, 2, 2}};  // a -> b, b -> c, c -> c
    auto outcome = verify_theorem(space, map, Condition::MaxDisplacement, 0,
                                  PairSemantics::AllPairs);
    if (!outcome.certificate.admissible || outcome.certificate.k_min.value != Rat(1, 2)) {
      return std::string("expected an admissible max-displacement constant of 1/2");
    }
    const auto& tc = *outcome.theorem;
    return expect(tc.fixed_point == 2 && tc.self_distance_zero && tc.unique &&
                      tc.all_audits_pass,
                  "expected fixed point c with clean audits");
  });

  return r.result;
}

Json paper_suite_to_json(const PaperSuiteResult& result) {
  Json doc;
  Json items = Json::array();
  for (const auto& item : result.items) {
    items.push_back(Json{{"id", item.id}, {"pass", item.pass}, {"detail", item.detail}});
  }
  doc["items"] = std::move(items);
  doc["passed"] = static_cast<int>(result.items.size()) - result.failed;
  doc["failed"] = result.failed;
  return doc;
}

}  // namespace genmetric
