#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"
#include "space.hpp"

namespace genmetric {

// A total self-map on a space's point set, by point index.
struct SelfMap {
  std::vector<int> image;

  int apply(int x) const { return image[static_cast<size_t>(x)]; }
};

enum class Condition { Banach, MaxSelf, MaxDisplacement };

std::string_view condition_name(Condition c);
std::optional<Condition> parse_condition(std::string_view name);

// Condition-specific denominator of the contraction inequality
//   d(Tx, Ty) <= k * rhs(x, y):
//   Banach:          d(x, y)
//   MaxSelf:         max{d(x,y), d(x,x), d(y,y)}
//   MaxDisplacement: max{d(x,y), d(x,Tx), d(y,Ty)}
Rat condition_rhs(const FiniteSpace& space, const SelfMap& map, Condition c, int x, int y);

// Smallest admissible contraction factor, or +infinity when no finite factor
// satisfies the inequality (some pair has rhs = 0 < lhs).
struct KMin {
  bool is_finite = true;
  Rat value;  // meaningful only when is_finite
};

struct ContractionCertificate {
  Condition condition;
  KMin k_min;
  bool admissible = false;       // k_min finite and < 1
  std::pair<int, int> binding_pair{0, 0};  // lex-first pair attaining k_min
};

// Exact maximum of lhs/rhs over all ordered pairs (x, y), diagonal included.
// Pairs with rhs = 0 = lhs contribute 0; rhs = 0 < lhs forces +infinity.
// Throws HypothesisError when the space fails the rectangular metric-like
// axioms under the given semantics.
ContractionCertificate contraction_constant(const FiniteSpace& space, const SelfMap& map,
                                            Condition condition, PairSemantics sem);

enum class TerminationKind { FixedPoint, CycleDetected, BudgetExhausted };

// The orbit x0, Tx0, T^2 x0, ... with its three diagnostic series:
//   rho[n]       = d(x_n, x_{n+1})
//   rho_star[n]  = d(x_n, x_{n+2})
//   rho_prime[n] = d(x_n, x_n)
// Iteration stops at the first fixed point, the first revisited point
// (cycle) or the step budget; on a finite space a visited-point lookup
// guarantees termination within |X| steps.
struct IterationTrace {
  std::vector<int> orbit;
  std::vector<Rat> rho;
  std::vector<Rat> rho_star;
  std::vector<Rat> rho_prime;
  TerminationKind termination = TerminationKind::BudgetExhausted;
  int fixed_point = -1;   // valid when termination == FixedPoint
  int cycle_period = 0;   // valid when termination == CycleDetected
};

IterationTrace picard_iterate(const FiniteSpace& space, const SelfMap& map, int x0,
                              long max_steps);

struct BoundStep {
  long n = 0;
  Rat lhs;
  Rat rhs;
  bool pass = false;
};

struct BoundCheck {
  std::string name;
  bool pass = false;
  std::vector<BoundStep> steps;  // empty for yes/no audits
};

// Everything the fixed-point theorems promise for an admissible certificate,
// audited on a concrete orbit: termination at a fixed point u, d(u,u) = 0,
// uniqueness (a scan of the map table, independent of the orbit), and the
// per-condition decay envelopes at every recorded step.
struct TheoremCertificate {
  Condition condition;
  ContractionCertificate certificate;
  IterationTrace trace;
  int fixed_point = -1;
  bool self_distance_zero = false;
  bool unique = false;
  std::vector<BoundCheck> bound_checks;
  bool all_audits_pass = false;
};

struct FixpointOutcome {
  ContractionCertificate certificate;
  std::optional<TheoremCertificate> theorem;  // present iff admissible
};

// Certifies the contraction hypothesis and, when admissible, runs the
// iteration and audits every promised conclusion. max_steps <= 0 selects the
// exact default |X| + 1. Throws HypothesisError when the space is not
// rectangular metric-like under the given semantics.
FixpointOutcome verify_theorem(const FiniteSpace& space, const SelfMap& map,
                               Condition condition, int x0, PairSemantics sem,
                               long max_steps = 0);

}  // namespace genmetric
