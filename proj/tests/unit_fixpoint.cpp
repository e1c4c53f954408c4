#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixpoint.hpp"
#include "json_io.hpp"
#include "oracles.hpp"
#include "paper_suite.hpp"
#include "search.hpp"

using namespace genmetric;

namespace {

constexpr auto kPairs = PairSemantics::AllPairs;

// the 3-point star used by the documented examples: zero self-distances,
// d(a,b) = d(a,c) = 1, d(b,c) = 2
FiniteSpace star_space() {
  return FiniteSpace::from_rows({"a", "b", "c"}, {{Rat(0), Rat(1), Rat(1)},
                                                  {Rat(1), Rat(0), Rat(2)},
                                                  {Rat(1), Rat(2), Rat(0)}});
}

// Brute-force k over all maps of every RML(pairs) table with the given
// points/values, compared against contraction_constant.
void kmin_agreement_sweep(int n, const std::vector<Rat>& values) {
  SpaceEnumerator en(n, values);
  int maps = 1;
  for (int i = 0; i < n; ++i) maps *= n;
  for (uint64_t index = 0; index < en.total_u64(); ++index) {
    FiniteSpace space = en.at(index);
    if (!check_axioms(space, ClassTag::RML, kPairs).holds) continue;
    for (int code = 0; code < maps; ++code) {
      SelfMap map;
      int rest = code;
      for (int i = 0; i < n; ++i) {
        map.image.push_back(rest % n);
        rest /= n;
      }
      for (Condition cond :
           {Condition::Banach, Condition::MaxSelf, Condition::MaxDisplacement}) {
        auto cert = contraction_constant(space, map, cond, kPairs);
        KMin expected = oracle::kmin_by_ratio_scan(space, map, cond);
        REQUIRE(cert.k_min.is_finite == expected.is_finite);
        if (cert.k_min.is_finite) {
          REQUIRE(cert.k_min.value == expected.value);
          // the binding pair is tight: lhs == k * rhs there
          auto [x, y] = cert.binding_pair;
          Rat lhs = space.d(map.apply(x), map.apply(y));
          Rat rhs = condition_rhs(space, map, cond, x, y);
          REQUIRE(lhs == cert.k_min.value * rhs);
        }
      }
    }
  }
}

}  // namespace

TEST_CASE("contraction constants match the exhaustive ratio oracle") {
  kmin_agreement_sweep(2, {Rat(0), Rat(1), Rat(2)});
  kmin_agreement_sweep(3, {Rat(0), Rat(1)});
}

TEST_CASE("constant map: every ratio collapses to zero") {
  FiniteSpace space = star_space();
  SelfMap to_a{{0, 0, 0}};
  auto cert = contraction_constant(space, to_a, Condition::Banach, kPairs);
  CHECK(cert.k_min.is_finite);
  CHECK(cert.k_min.value == 0);
  CHECK(cert.admissible);
  CHECK(oracle::kmin_by_ratio_scan(space, to_a, Condition::Banach).value == 0);
}

TEST_CASE("identity map: k_min is exactly 1, not admissible") {
  FiniteSpace space = fixture_ml_not_mml();
  SelfMap identity{{0, 1, 2, 3, 4}};
  auto cert = contraction_constant(space, identity, Condition::Banach, kPairs);
  CHECK(cert.k_min.is_finite);
  CHECK(cert.k_min.value == 1);
  CHECK(!cert.admissible);
}

TEST_CASE("zero denominator with positive numerator forces infinity") {
  // d(b,b) = 0 but the swap sends (b,b) to (a,a) with d(a,a) = 1
  FiniteSpace space = FiniteSpace::from_rows(
      {"a", "b"}, {{Rat(1), Rat(1)}, {Rat(1), Rat(0)}});
  REQUIRE(check_axioms(space, ClassTag::RML, kPairs).holds);
  SelfMap swap{{1, 0}};
  auto cert = contraction_constant(space, swap, Condition::Banach, kPairs);
  CHECK(!cert.k_min.is_finite);
  CHECK(!cert.admissible);
  CHECK(cert.binding_pair == std::pair<int, int>{1, 1});
}

TEST_CASE("hypothesis failure raises with a witness") {
  // d(a,b) = 0 between distinct points breaks r1
  FiniteSpace space = FiniteSpace::from_rows(
      {"a", "b"}, {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}});
  SelfMap id{{0, 1}};
  CHECK_THROWS_AS(contraction_constant(space, id, Condition::Banach, kPairs),
                  HypothesisError);
  try {
    contraction_constant(space, id, Condition::Banach, kPairs);
  } catch (const HypothesisError& e) {
    CHECK(e.cls == ClassTag::RML);
    REQUIRE(e.witness.has_value());
    CHECK(oracle::witness_violates(space, *e.witness));
  }
}

TEST_CASE("picard iteration terminates exactly") {
  FiniteSpace space = star_space();

  SUBCASE("constant map reaches its point in one step") {
    IterationTrace trace = picard_iterate(space, SelfMap{{0, 0, 0}}, 1, 10);
    CHECK(trace.termination == TerminationKind::FixedPoint);
    CHECK(trace.fixed_point == 0);
    CHECK(trace.orbit == std::vector<int>{1, 0});
    CHECK(trace.rho == std::vector<Rat>{Rat(1)});
    CHECK(trace.rho_prime == std::vector<Rat>{Rat(0), Rat(0)});
  }

  SUBCASE("identity map fixes the start immediately") {
    FiniteSpace ml = fixture_ml_not_mml();
    IterationTrace trace = picard_iterate(ml, SelfMap{{0, 1, 2, 3, 4}}, 0, 10);
    CHECK(trace.termination == TerminationKind::FixedPoint);
    CHECK(trace.orbit == std::vector<int>{0});
    // no contraction claimed: the self-distance series may start positive
    CHECK(trace.rho_prime == std::vector<Rat>{Rat(3)});
  }

  SUBCASE("two-cycles are detected with period 2") {
    IterationTrace trace = picard_iterate(space, SelfMap{{1, 0, 2}}, 0, 10);
    CHECK(trace.termination == TerminationKind::CycleDetected);
    CHECK(trace.cycle_period == 2);
    CHECK(trace.orbit == std::vector<int>{0, 1, 0});
  }

  SUBCASE("budget exhaustion is reported, not hidden") {
    IterationTrace trace = picard_iterate(space, SelfMap{{1, 2, 2}}, 0, 1);
    CHECK(trace.termination == TerminationKind::BudgetExhausted);
  }

  SUBCASE("series recompute from the orbit") {
    IterationTrace trace = picard_iterate(space, SelfMap{{1, 2, 2}}, 0, 10);
    REQUIRE(trace.orbit == std::vector<int>{0, 1, 2});
    for (size_t i = 0; i + 1 < trace.orbit.size(); ++i) {
      CHECK(trace.rho[i] == space.d(trace.orbit[i], trace.orbit[i + 1]));
    }
    for (size_t i = 0; i + 2 < trace.orbit.size(); ++i) {
      CHECK(trace.rho_star[i] == space.d(trace.orbit[i], trace.orbit[i + 2]));
    }
    for (size_t i = 0; i < trace.orbit.size(); ++i) {
      CHECK(trace.rho_prime[i] == space.d(trace.orbit[i], trace.orbit[i]));
    }
  }
}

TEST_CASE("verified certificate for the documented contraction") {
  FiniteSpace space = star_space();
  SelfMap to_a{{0, 0, 0}};
  for (Condition cond :
       {Condition::Banach, Condition::MaxSelf, Condition::MaxDisplacement}) {
    for (int x0 = 0; x0 < 3; ++x0) {
      auto outcome = verify_theorem(space, to_a, cond, x0, kPairs);
      REQUIRE(outcome.theorem.has_value());
      const auto& tc = *outcome.theorem;
      CHECK(tc.fixed_point == 0);
      CHECK(tc.self_distance_zero);
      CHECK(tc.unique);
      CHECK(tc.all_audits_pass);
    }
  }
}

TEST_CASE("budget too small fails the audit instead of lying") {
  FiniteSpace space = star_space();
  SelfMap to_a{{0, 0, 0}};
  // one step from c lands on a but never observes Ta = a
  auto outcome = verify_theorem(space, to_a, Condition::Banach, 2, kPairs, 1);
  REQUIRE(outcome.theorem.has_value());
  CHECK(outcome.theorem->trace.termination == TerminationKind::BudgetExhausted);
  CHECK(!outcome.theorem->all_audits_pass);
  CHECK(outcome.theorem->fixed_point == -1);
}

TEST_CASE("max-displacement: the naive self-distance envelope is invalid") {
  // Admissible max-displacement contraction where rho'_1 > k * rho'_0
  // because rho'_0 = 0 while the first image has positive self-distance.
  // The audited bound uses max(rho'_0, rho_0) instead and passes.
  FiniteSpace space = FiniteSpace::from_rows(
      {"a", "b", "c"}, {{Rat(0), Rat(2), Rat(2)},
                        {Rat(2), Rat(1), Rat(1)},
                        {Rat(2), Rat(1), Rat(0)}});
  SelfMap map{{1, 2, 2}};
  auto cert = contraction_constant(space, map, Condition::MaxDisplacement, kPairs);
  REQUIRE(cert.admissible);
  REQUIRE(cert.k_min.value == Rat(1, 2));

  IterationTrace trace = picard_iterate(space, map, 0, 10);
  REQUIRE(trace.rho_prime.size() >= 2);
  CHECK(trace.rho_prime[0] == 0);
  CHECK(trace.rho_prime[1] == 1);  // breaks rho'_n <= k^n rho'_0 = 0

  auto outcome = verify_theorem(space, map, Condition::MaxDisplacement, 0, kPairs);
  REQUIRE(outcome.theorem.has_value());
  CHECK(outcome.theorem->all_audits_pass);
}

TEST_CASE("condition monotonicity: larger denominators never raise k") {
  SpaceEnumerator en(3, {Rat(0), Rat(1), Rat(2)});
  for (uint64_t index = 0; index < en.total_u64(); index += 7) {
    FiniteSpace space = en.at(index);
    if (!check_axioms(space, ClassTag::RML, kPairs).holds) continue;
    for (int code = 0; code < 27; ++code) {
      SelfMap map;
      int rest = code;
      for (int i = 0; i < 3; ++i) {
        map.image.push_back(rest % 3);
        rest /= 3;
      }
      auto banach = contraction_constant(space, map, Condition::Banach, kPairs);
      for (Condition weaker : {Condition::MaxSelf, Condition::MaxDisplacement}) {
        auto cert = contraction_constant(space, map, weaker, kPairs);
        if (!banach.k_min.is_finite) continue;  // infinity dominates everything
        REQUIRE(cert.k_min.is_finite);          // max-denominator >= banach's
        CHECK(cert.k_min.value <= banach.k_min.value);
      }
    }
  }
}

TEST_CASE("exhaustive theorem property on two-point tables") {
  // Every admissible (space, map, condition) over 2-point {0,1,2} tables
  // reaches one fixed point with zero self-distance from both starts.
  SpaceEnumerator en(2, {Rat(0), Rat(1), Rat(2)});
  long admissible_seen = 0;
  for (uint64_t index = 0; index < en.total_u64(); ++index) {
    FiniteSpace space = en.at(index);
    if (!check_axioms(space, ClassTag::RML, kPairs).holds) continue;
    for (int code = 0; code < 4; ++code) {
      SelfMap map{{code % 2, code / 2}};
      for (Condition cond :
           {Condition::Banach, Condition::MaxSelf, Condition::MaxDisplacement}) {
        auto cert = contraction_constant(space, map, cond, kPairs);
        if (!cert.admissible) continue;
        ++admissible_seen;
        int fixed = -1;
        for (int x0 = 0; x0 < 2; ++x0) {
          auto outcome = verify_theorem(space, map, cond, x0, kPairs);
          REQUIRE(outcome.theorem.has_value());
          const auto& tc = *outcome.theorem;
          REQUIRE(tc.all_audits_pass);
          REQUIRE(tc.unique);
          REQUIRE(space.d(tc.fixed_point, tc.fixed_point) == 0);
          if (fixed < 0) fixed = tc.fixed_point;
          REQUIRE(fixed == tc.fixed_point);  // same limit from every start
        }
      }
    }
  }
  CHECK(admissible_seen > 0);
}

TEST_CASE("map documents validate totality and labels") {
  FiniteSpace space = star_space();
  SelfMap map = map_from_json(space, parse_json_text(
      R"({"map": {"a": "a", "b": "a", "c": "b"}})"));
  CHECK(map.image == std::vector<int>{0, 0, 1});
  CHECK_THROWS_WITH_AS(
      map_from_json(space, parse_json_text(R"({"map": {"a": "a"}})")),
      doctest::Contains("not total"), InputError);
  CHECK_THROWS_WITH_AS(
      map_from_json(space, parse_json_text(R"({"map": {"a": "z", "b": "a", "c": "a"}})")),
      doctest::Contains("unknown point label"), InputError);
}
