#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "rational.hpp"
#include "space.hpp"

namespace genmetric {

// A class together with the pair semantics its rectangular axioms run under.
// Semantics is normalized for non-rectangular tags so equality behaves.
struct ClassInstance {
  ClassTag tag;
  PairSemantics sem;

  ClassInstance(ClassTag t, PairSemantics s)
      : tag(t), sem(is_rectangular(t) ? s : PairSemantics::AllPairs) {}
  explicit ClassInstance(ClassTag t) : ClassInstance(t, default_semantics(t)) {}

  bool operator==(const ClassInstance& o) const = default;
};

// Reflexive-transitive closure of the verified implication lattice. Every
// edge is a theorem (triangle-type inequalities compose into quadrilateral
// ones; subtracted inequalities imply unsubtracted ones; the all-pairs
// quantifier implies the distinct-pairs one) and each is exhaustively
// re-verified over small spaces in the test suite.
bool implies(const ClassInstance& from, const ClassInstance& to);

// Every symmetric n x n table over a value list, random-access by index.
// The upper triangle (diagonal included, row-major) forms a base-|values|
// odometer; index 0 is the all-values[0] table and the last cell varies
// fastest, so ascending index is lexicographic order of the triangle.
class SpaceEnumerator {
 public:
  SpaceEnumerator(int n, std::vector<Rat> values);

  const mpz_class& total() const { return total_; }
  bool total_fits_u64() const;
  uint64_t total_u64() const;

  FiniteSpace at(uint64_t index) const;

  // Table for an explicit odometer state (one digit per upper-triangle
  // cell); used when the index space exceeds 64 bits.
  FiniteSpace from_digits(const std::vector<size_t>& digits) const;

  // Point labels "a", "b", ..., "z", then "p26", "p27", ...
  static std::vector<std::string> labels(int n);

  int cells() const { return cells_; }

 private:
  int n_;
  std::vector<Rat> values_;
  int cells_;
  mpz_class total_;
};

struct SearchMode {
  bool exhaustive = true;
  uint64_t seed = 0;
  uint64_t budget = 0;
};

struct SearchQuery {
  std::vector<ClassTag> require;
  std::vector<ClassTag> forbid;
  int max_points = 1;
  std::vector<Rat> values;
  SearchMode mode;
  std::optional<PairSemantics> semantics;  // applies to rectangular classes
};

struct SeparationWitness {
  FiniteSpace space;
  ClassificationReport report;
  // True when the witness is minimal in (point count, lexicographic table)
  // order within the search; exhaustive scans return the minimal hit,
  // randomized ones make no such promise.
  bool canonical = false;
};

struct SearchOptions {
  bool use_lattice_fastpath = true;
  // 0: GENMETRIC_THREADS if set, else hardware concurrency (capped at 8).
  int threads = 0;
};

// First table, in (point count, index) order, satisfying every `require`
// class and failing every `forbid` class; nullopt when the search space is
// exhausted or the randomized budget is spent. Queries contradicted by the
// implication lattice return nullopt without enumerating. Throws InputError
// on an overlapping require/forbid pair or invalid bounds.
//
// Exhaustive scans partition the index space into chunks processed
// concurrently; the returned witness is the globally smallest index among
// hits, so results are independent of thread count.
std::optional<SeparationWitness> find_separation(const SearchQuery& query,
                                                 const SearchOptions& options = {});

int resolve_thread_count(int requested);

}  // namespace genmetric
