#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace genmetric {

// A labeled point set with an exact symmetric distance table. This is the
// carrier for every distance flavor handled by the library; which axioms the
// table satisfies is decided afterwards by check_axioms.
//
// Symmetry and nonnegativity are shared by all supported classes, so they are
// enforced here once, at construction, and never re-tested by the checkers.
class FiniteSpace {
 public:
  // Takes a row-major n*n table. Throws InputError on duplicate labels, a
  // non-square table, a negative entry, or an asymmetric pair (the message
  // names the offending labels).
  FiniteSpace(std::vector<std::string> points, std::vector<Rat> table);

  static FiniteSpace from_rows(std::vector<std::string> points,
                               const std::vector<std::vector<Rat>>& rows);

  int size() const { return static_cast<int>(points_.size()); }
  const std::vector<std::string>& points() const { return points_; }
  const std::string& label(int i) const { return points_[static_cast<size_t>(i)]; }
  const Rat& d(int i, int j) const {
    return table_[static_cast<size_t>(i) * points_.size() + static_cast<size_t>(j)];
  }

  std::optional<int> find(std::string_view label) const;
  // Throws InputError naming the label when it is not a point of the space.
  int require(std::string_view label) const;

 private:
  std::vector<std::string> points_;
  std::vector<Rat> table_;
};

enum class ClassTag { Metric, PM, ML, MML, RM, RPM, RML, RMML };

inline constexpr std::array<ClassTag, 8> kAllClassTags = {
    ClassTag::Metric, ClassTag::PM,  ClassTag::ML,  ClassTag::MML,
    ClassTag::RM,     ClassTag::RPM, ClassTag::RML, ClassTag::RMML};

// Whether the intermediate points u, v of a rectangular inequality must be
// distinct from each other (they always avoid {x, y}).
enum class PairSemantics { DistinctPairs, AllPairs };

bool is_rectangular(ClassTag tag);

// RM and RPM are stated with "all distinct points u,v"; RML and RMML only
// exclude {x,y}. Non-rectangular tags return AllPairs (unused).
PairSemantics default_semantics(ClassTag tag);

std::string_view class_name(ClassTag tag);
std::optional<ClassTag> parse_class_tag(std::string_view name);
std::string_view semantics_name(PairSemantics sem);
std::optional<PairSemantics> parse_semantics(std::string_view name);

// A concrete axiom violation: the axiom identifier, the quantified points by
// role, and the two sides of the broken (in)equality, recomputable from the
// table.
struct Witness {
  std::string axiom;
  std::vector<std::pair<std::string, std::string>> points;  // role -> label
  Rat lhs;
  Rat rhs;
};

struct CheckResult {
  bool holds = false;
  std::optional<Witness> witness;
};

// Raised when an operation's class hypothesis fails on an otherwise valid
// input (e.g. a contraction certificate requested on a space that is not
// rectangular metric-like). Carries the violated class and its witness.
struct HypothesisError : std::runtime_error {
  HypothesisError(ClassTag cls_, std::optional<Witness> witness_, std::string message)
      : std::runtime_error(std::move(message)), cls(cls_), witness(std::move(witness_)) {}
  ClassTag cls;
  std::optional<Witness> witness;
};

// Exhaustively checks every axiom of the class over all required tuples and
// returns the first violation found. Axioms are visited in definition order;
// within an axiom, tuples are visited in lexicographic point order with the
// later roles innermost, so the returned witness is reproducible.
//
// Quantifiers over an empty pool (rectangular axioms on spaces too small to
// supply u, or a distinct pair u != v) are vacuously true. x = y instances
// are included: the definitions quantify over all x, y in X.
CheckResult check_axioms(const FiniteSpace& space, ClassTag tag, PairSemantics sem);
CheckResult check_axioms(const FiniteSpace& space, ClassTag tag);  // default semantics

struct ClassVerdict {
  ClassTag tag;
  PairSemantics semantics;  // the semantics the verdict was computed under
  bool holds = false;
  std::optional<Witness> witness;
};

struct ClassificationReport {
  std::vector<ClassVerdict> verdicts;  // one per tag, in kAllClassTags order
  std::vector<std::string> zero_self_set;
  // Rectangular tags whose verdict differs between the two pair semantics.
  // The definitions disagree on whether u = v is allowed, so the discrepancy
  // is surfaced instead of silently resolved.
  std::vector<ClassTag> semantics_discrepancies;
};

// One verdict per class. When semantics is given it applies to all four
// rectangular classes; otherwise each uses its own default.
ClassificationReport classify(const FiniteSpace& space,
                              std::optional<PairSemantics> semantics = std::nullopt);

// Points y with |d(center,y) - d(center,center)| < radius (strict). The
// center always belongs. Throws InputError on an unknown center or a
// non-positive radius.
std::vector<std::string> ball_members(const FiniteSpace& space, std::string_view center,
                                      const Rat& radius);

// Every entry increased by alpha. Throws InputError unless alpha > 0.
FiniteSpace shift_space(const FiniteSpace& space, const Rat& alpha);

// Deliberate axiom damage for suite self-checks: DropMSigma3Subtraction
// evaluates the modified metric-like inequality without its self-distance
// subtraction, which must make the built-in regression suite fail. Settable
// programmatically or through the GENMETRIC_MUTATION environment variable
// ("drop-msigma3-subtraction"); see README.
enum class Mutation { None, DropMSigma3Subtraction };
void set_mutation(Mutation m);
Mutation current_mutation();
std::optional<Mutation> parse_mutation(std::string_view name);

}  // namespace genmetric
