// Acceptance suite: nine exact criteria, each timed against its budget and
// reported as one pass/fail line. Run with no arguments for the whole list
// or with a single criterion number. Exit code is the number of failures.
//
// Criterion 7's negative-control half asserts that the symmetric-convergence
// suite finds a counterexample on the 5-point metric-like fixture. On that
// particular space every sequence satisfying any of the four premises is
// eventually constant (self-distances are 0 except one 3, off-diagonals are
// all 2, so certified limits force eventual constancy), hence all four
// conclusions hold and no counterexample can exist. The assertion is kept as
// stated and the line stays honestly red; the machinery itself demonstrably
// finds counterexamples on other non-MML spaces (see unit_convergence).

#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "convergence.hpp"
#include "fixpoint.hpp"
#include "json_io.hpp"
#include "oracles.hpp"
#include "paper_suite.hpp"
#include "search.hpp"

using namespace genmetric;

namespace {

struct Criterion {
  int number;
  std::string title;
  long budget_ms;
  std::function<std::string()> body;  // empty string = pass
};

std::string check(bool ok, const std::string& what) {
  return ok ? std::string() : what;
}

const std::vector<Rat> kGrid = {Rat(0), Rat(1), Rat(2)};

std::optional<Witness> verdict_witness(const ClassificationReport& report, ClassTag tag) {
  for (const auto& v : report.verdicts) {
    if (v.tag == tag) return v.witness;
  }
  return std::nullopt;
}

bool verdict_holds(const ClassificationReport& report, ClassTag tag) {
  for (const auto& v : report.verdicts) {
    if (v.tag == tag) return v.holds;
  }
  return false;
}

std::string role_of(const Witness& w, const char* role) {
  for (const auto& [r, label] : w.points) {
    if (r == role) return label;
  }
  return "";
}

// ---- criterion bodies --------------------------------------------------

std::string criterion_1() {
  FiniteSpace space = fixture_ml_not_mml();
  ClassificationReport report = classify(space);
  if (!verdict_holds(report, ClassTag::ML)) return "ML should hold";
  if (verdict_holds(report, ClassTag::MML)) return "MML should fail";
  auto witness = verdict_witness(report, ClassTag::MML);
  if (!witness) return "missing MML witness";
  if (witness->axiom != "mσ3") return "wrong axiom: " + witness->axiom;
  if (role_of(*witness, "x") != "2" || role_of(*witness, "z") != "1" ||
      role_of(*witness, "y") != "3") {
    return "wrong witness points";
  }
  if (witness->lhs != 2 || witness->rhs != 1) return "wrong witness values";
  if (!oracle::witness_violates(space, *witness)) return "witness does not recompute";
  return "";
}

std::string criterion_2() {
  FiniteSpace space = fixture_rml_not_rmml();
  auto rml = check_axioms(space, ClassTag::RML, PairSemantics::AllPairs);
  if (!rml.holds) return "RML (all pairs) should hold";
  auto rmml = check_axioms(space, ClassTag::RMML, PairSemantics::AllPairs);
  if (rmml.holds) return "RMML (all pairs) should fail";
  if (rmml.witness->rhs != 0) return "witness rhs should be 0";
  if (role_of(*rmml.witness, "u") != "1" || role_of(*rmml.witness, "v") != "1") {
    return "witness should pass through u = v = 1";
  }
  if (!check_axioms(space, ClassTag::RMML, PairSemantics::DistinctPairs).holds) {
    return "RMML (distinct pairs) should hold";
  }
  ClassificationReport report = classify(space);
  bool flagged = false;
  for (ClassTag tag : report.semantics_discrepancies) {
    if (tag == ClassTag::RMML) flagged = true;
  }
  return check(flagged, "semantics discrepancy not documented in the report");
}

std::string criterion_3() {
  FiniteSpace grid = fixture_step_grid().materialize();
  if (grid.size() != 7) return "expected the 7-point grid";
  if (!check_axioms(grid, ClassTag::RPM).holds) return "RPM should hold";
  auto rm = check_axioms(grid, ClassTag::RM);
  if (rm.holds) return "RM should fail";
  const Witness& w = *rm.witness;
  // self-distance equals the coordinate on this family
  if (w.axiom != "R1" || role_of(w, "x") != role_of(w, "y")) {
    return "expected an R1 self-distance witness";
  }
  if (w.lhs != parse_rational(role_of(w, "x"))) return "witness value mismatch";
  int one = grid.require("1");
  if (grid.d(one, one) != 1) return "d(1,1) should be 1";
  if (grid.d(one, one) == 0) return "d(1,1) must differ from 0";
  return "";
}

std::string criterion_4() {
  long shifted_count = 0;
  for (int n = 1; n <= 3; ++n) {
    SpaceEnumerator en(n, kGrid);
    for (uint64_t i = 0; i < en.total_u64(); ++i) {
      FiniteSpace space = en.at(i);
      for (PairSemantics sem : {PairSemantics::DistinctPairs, PairSemantics::AllPairs}) {
        if (!check_axioms(space, ClassTag::RMML, sem).holds) continue;
        for (const Rat& alpha : {Rat(1), Rat(1, 2)}) {
          ++shifted_count;
          if (!check_axioms(shift_space(space, alpha), ClassTag::RMML, sem).holds) {
            std::ostringstream os;
            os << "shift by " << format_rational(alpha) << " lost RMML (" <<
                semantics_name(sem) << ") at n=" << n << " index " << i;
            return os.str();
          }
        }
      }
    }
  }
  return check(shifted_count > 0, "no RMML spaces enumerated");
}

std::string criterion_5() {
  using CI = ClassInstance;
  constexpr auto D = PairSemantics::DistinctPairs;
  constexpr auto A = PairSemantics::AllPairs;
  std::vector<std::pair<CI, CI>> edges;
  edges.emplace_back(CI(ClassTag::Metric), CI(ClassTag::PM));
  edges.emplace_back(CI(ClassTag::PM), CI(ClassTag::MML));
  edges.emplace_back(CI(ClassTag::MML), CI(ClassTag::ML));
  edges.emplace_back(CI(ClassTag::Metric), CI(ClassTag::RM, D));
  for (PairSemantics s : {D, A}) {
    edges.emplace_back(CI(ClassTag::RM, s), CI(ClassTag::RPM, s));
    edges.emplace_back(CI(ClassTag::RMML, s), CI(ClassTag::RML, s));
  }
  for (ClassTag tag : {ClassTag::RM, ClassTag::RPM, ClassTag::RML, ClassTag::RMML}) {
    edges.emplace_back(CI(tag, A), CI(tag, D));
  }
  for (int n = 1; n <= 3; ++n) {
    SpaceEnumerator en(n, kGrid);
    for (uint64_t i = 0; i < en.total_u64(); ++i) {
      FiniteSpace space = en.at(i);
      for (const auto& [from, to] : edges) {
        if (check_axioms(space, from.tag, from.sem).holds &&
            !check_axioms(space, to.tag, to.sem).holds) {
          std::ostringstream os;
          os << class_name(from.tag) << "(" << semantics_name(from.sem) << ") => "
             << class_name(to.tag) << "(" << semantics_name(to.sem)
             << ") broken at n=" << n << " index " << i;
          return os.str();
        }
      }
    }
  }
  return "";
}

std::string criterion_6() {
  SpaceEnumerator en(3, kGrid);
  long admissible = 0;
  for (uint64_t i = 0; i < en.total_u64(); ++i) {
    FiniteSpace space = en.at(i);
    if (!check_axioms(space, ClassTag::RML, PairSemantics::AllPairs).holds) continue;
    for (int code = 0; code < 27; ++code) {
      SelfMap map;
      int rest = code;
      for (int p = 0; p < 3; ++p) {
        map.image.push_back(rest % 3);
        rest /= 3;
      }
      for (Condition cond :
           {Condition::Banach, Condition::MaxSelf, Condition::MaxDisplacement}) {
        auto cert = contraction_constant(space, map, cond, PairSemantics::AllPairs);
        if (!cert.admissible) continue;
        ++admissible;
        int fixed = -1;
        for (int x0 = 0; x0 < 3; ++x0) {
          auto outcome = verify_theorem(space, map, cond, x0, PairSemantics::AllPairs);
          if (!outcome.theorem) return "admissible but no theorem run";
          const auto& tc = *outcome.theorem;
          std::ostringstream at;
          at << " (space " << i << ", map " << code << ", condition "
             << condition_name(cond) << ", start " << x0 << ")";
          if (tc.fixed_point < 0) return "no fixed point reached" + at.str();
          if (space.d(tc.fixed_point, tc.fixed_point) != 0) {
            return "fixed point with nonzero self-distance" + at.str();
          }
          if (!tc.unique) return "fixed point not unique" + at.str();
          if (fixed < 0) fixed = tc.fixed_point;
          if (fixed != tc.fixed_point) return "different limits per start" + at.str();
          if (cond == Condition::Banach) {
            for (const auto& check_entry : tc.bound_checks) {
              if (!check_entry.pass) {
                return "envelope audit failed: " + check_entry.name + at.str();
              }
            }
          } else if (!tc.all_audits_pass) {
            return "audit failed" + at.str();
          }
        }
      }
    }
  }
  return check(admissible > 0, "sweep found no admissible certificates");
}

std::string criterion_7() {
  // positive half: both modified metric-like fixtures, 1000 instances per
  // item, zero counterexamples
  for (const FiniteSpace& space : {fixture_all_ones(3), fixture_max_pm()}) {
    SuiteResult result = mml_theorem_suite(space, 4242, 1000);
    long hits = 0;
    for (const auto& item : result.items) {
      if (item.instances_run != 1000) return "instance count mismatch";
      if (item.counterexample) {
        return "item " + std::to_string(item.item) +
               " produced a counterexample on an MML fixture: " +
               item.counterexample->equation;
      }
      hits += item.premise_hits;
    }
    if (hits == 0) return "premises never fired on an MML fixture";
  }
  // negative control, as stated: at least one certified counterexample on
  // the 5-point metric-like fixture (see the header comment; convergence on
  // that space is degenerate, so this stays red)
  SuiteResult control = mml_theorem_suite(fixture_ml_not_mml(), 4242, 1000,
                                          /*allow_non_mml=*/true);
  if (control.space_is_mml) return "control fixture unexpectedly MML";
  for (const auto& item : control.items) {
    if (item.counterexample) return "";
  }
  return "negative control found no counterexample (unattainable on this fixture: "
         "all certified premises force eventually-constant sequences)";
}

std::string criterion_8() {
  SearchQuery q;
  q.require = {ClassTag::ML};
  q.forbid = {ClassTag::MML};
  q.max_points = 2;
  q.values = kGrid;
  q.mode.exhaustive = true;
  auto witness = find_separation(q);
  if (!witness) return "no ML-not-MML witness found";
  if (!oracle::space_in_class(witness->space, ClassTag::ML) ||
      oracle::space_in_class(witness->space, ClassTag::MML)) {
    return "witness does not revalidate";
  }

  SearchQuery hopeless;
  hopeless.require = {ClassTag::Metric};
  hopeless.forbid = {ClassTag::ML};
  hopeless.max_points = 2;
  hopeless.values = kGrid;
  hopeless.mode.exhaustive = true;
  auto fast = find_separation(hopeless);
  if (fast.has_value()) return "lattice fast-path should yield none";
  SearchOptions brute;
  brute.use_lattice_fastpath = false;
  auto slow = find_separation(hopeless, brute);
  return check(!slow.has_value(), "fast-path disagrees with brute force");
}

std::string criterion_9() {
  std::string cli;
  if (const char* env = std::getenv("GENMETRIC_CLI")) {
    cli = env;
  } else {
    // fall back to the sibling build layout: <build>/tests/acceptance
    // next to <build>/genmetric
    char exe[4096];
    ssize_t len = readlink("/proc/self/exe", exe, sizeof(exe) - 1);
    if (len <= 0) return "GENMETRIC_CLI not set and no /proc/self/exe";
    exe[len] = '\0';
    std::string dir(exe);
    dir.erase(dir.find_last_of('/'));
    cli = dir + "/../genmetric";
  }
  std::string command = std::string("GENMETRIC_MUTATION=drop-msigma3-subtraction ") +
                        cli + " paper-suite > /dev/null 2>&1";
  int status = std::system(command.c_str());
  int exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  if (exit_code != 1) {
    return "mutated paper-suite should exit 1, got " + std::to_string(exit_code);
  }
  std::string clean = std::string(cli) + " paper-suite > /dev/null 2>&1";
  status = std::system(clean.c_str());
  exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return check(exit_code == 0, "clean paper-suite should exit 0");
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<Criterion> criteria = {
      {1, "5-point metric-like example: exact classification and witness", 1000,
       criterion_1},
      {2, "5-point rectangular example under both pair semantics", 1000, criterion_2},
      {3, "step-family grid: RPM without RM", 1000, criterion_3},
      {4, "shift preservation over all small RMML tables", 10000, criterion_4},
      {5, "implication lattice over all small tables", 60000, criterion_5},
      {6, "fixed-point theorems over all small RML tables and maps", 120000,
       criterion_6},
      {7, "symmetric-convergence suite: clean positives, certified negative", 30000,
       criterion_7},
      {8, "separation search with lattice fast-path agreement", 10000, criterion_8},
      {9, "mutation sanity through the CLI", 5000, criterion_9},
  };

  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);

  int failures = 0;
  for (const auto& criterion : criteria) {
    if (only != 0 && criterion.number != only) continue;
    auto start = std::chrono::steady_clock::now();
    std::string failure = criterion.body();
    auto elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
    if (failure.empty() && elapsed_ms > criterion.budget_ms) {
      failure = "exceeded time budget of " + std::to_string(criterion.budget_ms) + " ms";
    }
    bool pass = failure.empty();
    if (!pass) ++failures;
    std::cout << "criterion " << criterion.number << ": " << (pass ? "PASS" : "FAIL")
              << " (" << elapsed_ms << " ms) - " << criterion.title;
    if (!pass) std::cout << " :: " << failure;
    std::cout << "\n";
  }
  return failures;
}
