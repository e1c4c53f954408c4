#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rational.hpp"
#include "space.hpp"

namespace genmetric {

enum class TailKind { None, Constant, Periodic };

// A sequence over a finite space: an explicit prefix followed by an optional
// decidable tail. With a constant or periodic tail every limit question asked
// below is decided exactly; a bare prefix only supports finite-horizon
// judgments. Points are indices into the carrier space.
//
// Document loading requires a nonempty prefix; internally constructed
// sequences (subsequences) may have an empty one.
struct Seq {
  std::vector<int> prefix;
  TailKind tail = TailKind::None;
  std::vector<int> cycle;  // constant: one point; periodic: the repeating block

  bool decidable() const { return tail != TailKind::None; }
  size_t length_hint() const { return prefix.size() + cycle.size(); }
  // n-th term; for tail None, n must be within the prefix.
  int at(size_t n) const {
    if (n < prefix.size()) return prefix[n];
    return cycle[(n - prefix.size()) % cycle.size()];
  }
};

// The subsequence along indices offset, offset+stride, offset+2*stride, ...
// Requires a decidable tail; the result is again decidable.
Seq subsequence(const Seq& s, size_t offset, size_t stride);

enum class ConvergenceMode { Sigma, Symmetric, Cauchy };
enum class Outcome { Holds, Fails, Inconclusive };

std::string_view mode_name(ConvergenceMode m);
std::optional<ConvergenceMode> parse_mode(std::string_view name);
std::string_view outcome_name(Outcome o);

inline constexpr int kDefaultWindow = 8;
Rat default_epsilon();  // 1/1000

// Finite-horizon or exact judgment of one convergence question. For
// decidable tails the outcome is exact and epsilon/window play no role; for
// a bare prefix the outcome is Fails or Inconclusive (never Holds), judged
// on the trailing `window` terms against epsilon.
struct ConvergenceVerdict {
  ConvergenceMode mode = ConvergenceMode::Sigma;
  Outcome outcome = Outcome::Inconclusive;
  std::optional<Rat> limit_estimate;
  Rat epsilon;
  int window = kDefaultWindow;
  std::string detail;
};

// lim d(x_n, candidate) = d(candidate, candidate)?
ConvergenceVerdict sigma_limit_test(const FiniteSpace& space, const Seq& seq,
                                    int candidate, const Rat& epsilon, int window);

// lim d(x_n, candidate) = lim d(x_n, x_n) = d(candidate, candidate)?
ConvergenceVerdict symmetric_limit_test(const FiniteSpace& space, const Seq& seq,
                                        int candidate, const Rat& epsilon, int window);

// Does lim d(x_n, x_m) exist (n, m independent)? For a periodic tail the
// double limit exists iff d is constant across all pairs of cycle points,
// self-pairs included; limit_estimate carries the value when it exists.
ConvergenceVerdict cauchy_test(const FiniteSpace& space, const Seq& seq,
                               const Rat& epsilon, int window);

// Joint limit of d(x_n, y_n) for two sequences over the same space.
struct PairLimit {
  bool decidable = false;
  bool exists = false;
  Rat value;
};
PairLimit pair_sigma_limit(const FiniteSpace& space, const Seq& a, const Seq& b);

// Property harness for the four symmetric-convergence facts that hold in
// modified metric-like spaces:
//   1. symmetric convergence implies the Cauchy property;
//   2. a Cauchy sequence with a symmetric-convergent subsequence is itself
//      symmetric-convergent to the same point;
//   3. two Cauchy sequences have a joint distance limit;
//   4. symmetric-convergent pairs satisfy lim d(x_n, y_n) = d(x, y).
// Instances are drawn from the decidable families only, so every reported
// counterexample is certifiable. Throws HypothesisError when the space is
// not MML unless allow_non_mml is set (the facts can genuinely fail then).
struct SuiteCounterexample {
  int item = 0;
  Seq seq_a;
  std::optional<Seq> seq_b;
  std::optional<int> candidate_a;
  std::optional<int> candidate_b;
  std::string equation;  // the violated claim, with exact values
};

struct PropertyReport {
  int item = 0;
  long instances_run = 0;
  long premise_hits = 0;  // instances whose hypotheses were certified true
  std::optional<SuiteCounterexample> counterexample;
};

struct SuiteResult {
  bool space_is_mml = false;
  std::vector<PropertyReport> items;  // items 1..4 in order
};

SuiteResult mml_theorem_suite(const FiniteSpace& space, uint64_t seed, long instances,
                              bool allow_non_mml = false);

}  // namespace genmetric
