#include "space.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdlib>
#include <set>

namespace genmetric {

FiniteSpace::FiniteSpace(std::vector<std::string> points, std::vector<Rat> table)
    : points_(std::move(points)), table_(std::move(table)) {
  const size_t n = points_.size();
  if (n == 0) throw InputError("space has no points");
  {
    std::set<std::string> seen;
    for (const auto& p : points_) {
      if (!seen.insert(p).second) {
        throw InputError("duplicate point label \"" + p + "\"");
      }
    }
  }
  if (table_.size() != n * n) {
    throw InputError("distance table is not square: expected " + std::to_string(n) +
                     "x" + std::to_string(n) + " entries, got " +
                     std::to_string(table_.size()));
  }
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      const Rat& v = table_[i * n + j];
      if (v < 0) {
        throw InputError("negative distance at (" + points_[i] + ", " + points_[j] +
                         "): " + format_rational(v));
      }
      if (j > i && v != table_[j * n + i]) {
        throw InputError("asymmetric table at (" + points_[i] + ", " + points_[j] +
                         "): " + format_rational(v) + " vs " +
                         format_rational(table_[j * n + i]));
      }
    }
  }
}

FiniteSpace FiniteSpace::from_rows(std::vector<std::string> points,
                                   const std::vector<std::vector<Rat>>& rows) {
  const size_t n = points.size();
  std::vector<Rat> flat;
  flat.reserve(n * n);
  if (rows.size() != n) {
    throw InputError("distance table has " + std::to_string(rows.size()) +
                     " rows for " + std::to_string(n) + " points");
  }
  for (const auto& row : rows) {
    if (row.size() != n) {
      throw InputError("distance table row has " + std::to_string(row.size()) +
                       " entries for " + std::to_string(n) + " points");
    }
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return FiniteSpace(std::move(points), std::move(flat));
}

std::optional<int> FiniteSpace::find(std::string_view label) const {
  for (size_t i = 0; i < points_.size(); ++i) {
    if (points_[i] == label) return static_cast<int>(i);
  }
  return std::nullopt;
}

int FiniteSpace::require(std::string_view label) const {
  auto idx = find(label);
  if (!idx) throw InputError("unknown point label \"" + std::string(label) + "\"");
  return *idx;
}

bool is_rectangular(ClassTag tag) {
  switch (tag) {
    case ClassTag::RM:
    case ClassTag::RPM:
    case ClassTag::RML:
    case ClassTag::RMML:
      return true;
    default:
      return false;
  }
}

PairSemantics default_semantics(ClassTag tag) {
  switch (tag) {
    case ClassTag::RM:
    case ClassTag::RPM:
      return PairSemantics::DistinctPairs;
    default:
      return PairSemantics::AllPairs;
  }
}

std::string_view class_name(ClassTag tag) {
  switch (tag) {
    case ClassTag::Metric: return "METRIC";
    case ClassTag::PM: return "PM";
    case ClassTag::ML: return "ML";
    case ClassTag::MML: return "MML";
    case ClassTag::RM: return "RM";
    case ClassTag::RPM: return "RPM";
    case ClassTag::RML: return "RML";
    case ClassTag::RMML: return "RMML";
  }
  return "?";
}

std::optional<ClassTag> parse_class_tag(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  for (ClassTag tag : kAllClassTags) {
    if (upper == class_name(tag)) return tag;
  }
  return std::nullopt;
}

std::string_view semantics_name(PairSemantics sem) {
  return sem == PairSemantics::DistinctPairs ? "distinct" : "pairs";
}

std::optional<PairSemantics> parse_semantics(std::string_view name) {
  if (name == "distinct") return PairSemantics::DistinctPairs;
  if (name == "pairs") return PairSemantics::AllPairs;
  return std::nullopt;
}

namespace {

std::atomic<Mutation> g_mutation{Mutation::None};
std::atomic<bool> g_mutation_env_loaded{false};

void load_mutation_from_env() {
  if (g_mutation_env_loaded.exchange(true)) return;
  const char* env = std::getenv("GENMETRIC_MUTATION");
  if (env == nullptr) return;
  if (auto m = parse_mutation(env)) g_mutation.store(*m);
}

Witness make_witness(std::string axiom,
                     std::initializer_list<std::pair<const char*, int>> roles,
                     const FiniteSpace& s, Rat lhs, Rat rhs) {
  Witness w;
  w.axiom = std::move(axiom);
  for (const auto& [role, idx] : roles) {
    w.points.emplace_back(role, s.label(idx));
  }
  w.lhs = std::move(lhs);
  w.rhs = std::move(rhs);
  return w;
}

// x = y iff d(x,y) = 0, both directions, lexicographic over ordered pairs.
std::optional<Witness> check_self_identity(const FiniteSpace& s, const char* axiom) {
  for (int x = 0; x < s.size(); ++x) {
    for (int y = 0; y < s.size(); ++y) {
      if (x == y) {
        if (s.d(x, x) != 0) {
          return make_witness(axiom, {{"x", x}, {"y", y}}, s, s.d(x, x), 0);
        }
      } else if (s.d(x, y) == 0) {
        return make_witness(axiom, {{"x", x}, {"y", y}}, s, 0, 0);
      }
    }
  }
  return std::nullopt;
}

// d(x,y) = 0 implies x = y.
std::optional<Witness> check_zero_implies_equal(const FiniteSpace& s, const char* axiom) {
  for (int x = 0; x < s.size(); ++x) {
    for (int y = 0; y < s.size(); ++y) {
      if (x != y && s.d(x, y) == 0) {
        return make_witness(axiom, {{"x", x}, {"y", y}}, s, 0, 0);
      }
    }
  }
  return std::nullopt;
}

// x = y iff d(x,y) = d(x,x) = d(y,y). The forward direction is trivial, so
// the only failure mode is the equality triple holding for distinct points.
std::optional<Witness> check_equality_triple(const FiniteSpace& s, const char* axiom) {
  for (int x = 0; x < s.size(); ++x) {
    for (int y = 0; y < s.size(); ++y) {
      if (x != y && s.d(x, y) == s.d(x, x) && s.d(x, x) == s.d(y, y)) {
        return make_witness(axiom, {{"x", x}, {"y", y}}, s, s.d(x, y), s.d(x, x));
      }
    }
  }
  return std::nullopt;
}

// d(x,x) <= d(x,y).
std::optional<Witness> check_small_self(const FiniteSpace& s, const char* axiom) {
  for (int x = 0; x < s.size(); ++x) {
    for (int y = 0; y < s.size(); ++y) {
      if (s.d(x, x) > s.d(x, y)) {
        return make_witness(axiom, {{"x", x}, {"y", y}}, s, s.d(x, x), s.d(x, y));
      }
    }
  }
  return std::nullopt;
}

// d(x,y) <= d(x,z) + d(z,y) [- d(z,z)].
std::optional<Witness> check_triangle(const FiniteSpace& s, const char* axiom,
                                      bool subtract_middle, bool is_msigma3) {
  const bool mutated = is_msigma3 && current_mutation() == Mutation::DropMSigma3Subtraction;
  for (int x = 0; x < s.size(); ++x) {
    for (int y = 0; y < s.size(); ++y) {
      for (int z = 0; z < s.size(); ++z) {
        Rat rhs = s.d(x, z) + s.d(z, y);
        if (subtract_middle && !mutated) rhs -= s.d(z, z);
        if (s.d(x, y) > rhs) {
          return make_witness(axiom, {{"x", x}, {"y", y}, {"z", z}}, s, s.d(x, y),
                              std::move(rhs));
        }
      }
    }
  }
  return std::nullopt;
}

// d(x,y) <= d(x,u) + d(u,v) + d(v,y) [- d(u,u) - d(v,v)] over u,v outside
// {x,y}, with u != v under DistinctPairs. Empty pools are vacuously fine.
std::optional<Witness> check_quadrilateral(const FiniteSpace& s, const char* axiom,
                                           bool subtract_intermediates,
                                           PairSemantics sem) {
  for (int x = 0; x < s.size(); ++x) {
    for (int y = 0; y < s.size(); ++y) {
      for (int u = 0; u < s.size(); ++u) {
        if (u == x || u == y) continue;
        for (int v = 0; v < s.size(); ++v) {
          if (v == x || v == y) continue;
          if (sem == PairSemantics::DistinctPairs && v == u) continue;
          Rat rhs = s.d(x, u) + s.d(u, v) + s.d(v, y);
          if (subtract_intermediates) rhs -= s.d(u, u) + s.d(v, v);
          if (s.d(x, y) > rhs) {
            return make_witness(axiom, {{"x", x}, {"y", y}, {"u", u}, {"v", v}}, s,
                                s.d(x, y), std::move(rhs));
          }
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<Witness> first_violation(const FiniteSpace& s, ClassTag tag,
                                       PairSemantics sem) {
  switch (tag) {
    case ClassTag::Metric:
      if (auto w = check_self_identity(s, "M1")) return w;
      return check_triangle(s, "M3", false, false);
    case ClassTag::PM:
      if (auto w = check_equality_triple(s, "p1")) return w;
      if (auto w = check_small_self(s, "p2")) return w;
      return check_triangle(s, "p4", true, false);
    case ClassTag::ML:
      if (auto w = check_zero_implies_equal(s, "σ1")) return w;
      return check_triangle(s, "σ3", false, false);
    case ClassTag::MML:
      if (auto w = check_zero_implies_equal(s, "mσ1")) return w;
      return check_triangle(s, "mσ3", true, true);
    case ClassTag::RM:
      if (auto w = check_self_identity(s, "R1")) return w;
      return check_quadrilateral(s, "R3", false, sem);
    case ClassTag::RPM:
      if (auto w = check_equality_triple(s, "RP1")) return w;
      if (auto w = check_small_self(s, "RP2")) return w;
      return check_quadrilateral(s, "RP4", true, sem);
    case ClassTag::RML:
      if (auto w = check_zero_implies_equal(s, "r1")) return w;
      return check_quadrilateral(s, "r3", false, sem);
    case ClassTag::RMML:
      if (auto w = check_zero_implies_equal(s, "mr1")) return w;
      return check_quadrilateral(s, "mr3", true, sem);
  }
  return std::nullopt;
}

}  // namespace

void set_mutation(Mutation m) {
  g_mutation_env_loaded.store(true);
  g_mutation.store(m);
}

Mutation current_mutation() {
  load_mutation_from_env();
  return g_mutation.load();
}

std::optional<Mutation> parse_mutation(std::string_view name) {
  if (name.empty() || name == "none") return Mutation::None;
  if (name == "drop-msigma3-subtraction") return Mutation::DropMSigma3Subtraction;
  return std::nullopt;
}

CheckResult check_axioms(const FiniteSpace& space, ClassTag tag, PairSemantics sem) {
  auto witness = first_violation(space, tag, sem);
  if (witness) return CheckResult{false, std::move(witness)};
  return CheckResult{true, std::nullopt};
}

CheckResult check_axioms(const FiniteSpace& space, ClassTag tag) {
  return check_axioms(space, tag, default_semantics(tag));
}

ClassificationReport classify(const FiniteSpace& space,
                              std::optional<PairSemantics> semantics) {
  ClassificationReport report;
  for (ClassTag tag : kAllClassTags) {
    PairSemantics sem =
        is_rectangular(tag) ? semantics.value_or(default_semantics(tag))
                            : default_semantics(tag);
    CheckResult res = check_axioms(space, tag, sem);
    report.verdicts.push_back(
        ClassVerdict{tag, sem, res.holds, std::move(res.witness)});
    if (is_rectangular(tag)) {
      bool distinct = check_axioms(space, tag, PairSemantics::DistinctPairs).holds;
      bool pairs = check_axioms(space, tag, PairSemantics::AllPairs).holds;
      if (distinct != pairs) report.semantics_discrepancies.push_back(tag);
    }
  }
  for (int i = 0; i < space.size(); ++i) {
    if (space.d(i, i) == 0) report.zero_self_set.push_back(space.label(i));
  }
  return report;
}

std::vector<std::string> ball_members(const FiniteSpace& space, std::string_view center,
                                      const Rat& radius) {
  if (radius <= 0) {
    throw InputError("ball radius must be positive, got " + format_rational(radius));
  }
  int c = space.require(center);
  std::vector<std::string> members;
  for (int y = 0; y < space.size(); ++y) {
    Rat gap = space.d(c, y) - space.d(c, c);
    if (gap < 0) gap = -gap;
    if (gap < radius) members.push_back(space.label(y));
  }
  return members;
}

FiniteSpace shift_space(const FiniteSpace& space, const Rat& alpha) {
  if (alpha <= 0) {
    throw InputError("shift amount must be positive, got " + format_rational(alpha));
  }
  std::vector<Rat> table;
  table.reserve(static_cast<size_t>(space.size()) * static_cast<size_t>(space.size()));
  for (int i = 0; i < space.size(); ++i) {
    for (int j = 0; j < space.size(); ++j) {
      table.push_back(space.d(i, j) + alpha);
    }
  }
  return FiniteSpace(space.points(), std::move(table));
}

}  // namespace genmetric
