#include "convergence.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "rng.hpp"

namespace genmetric {

namespace {

Rat abs_gap(const Rat& a, const Rat& b) {
  Rat g = a - b;
  if (g < 0) g = -g;
  return g;
}

std::string seq_brief(const FiniteSpace& s, const Seq& q) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < q.prefix.size(); ++i) {
    if (i) os << ",";
    os << s.label(q.prefix[i]);
  }
  if (q.tail == TailKind::Constant) {
    os << (q.prefix.empty() ? "" : ";") << s.label(q.cycle[0]) << "...";
  } else if (q.tail == TailKind::Periodic) {
    os << (q.prefix.empty() ? "" : ";") << "[";
    for (size_t i = 0; i < q.cycle.size(); ++i) {
      if (i) os << ",";
      os << s.label(q.cycle[i]);
    }
    os << "]*";
  }
  os << ")";
  return os.str();
}

// Distinct values of d(p, candidate) over the tail cycle. One value means
// the limit exists and equals it.
std::optional<Rat> tail_limit_against(const FiniteSpace& s, const Seq& q, int candidate) {
  Rat first = s.d(q.cycle[0], candidate);
  for (size_t i = 1; i < q.cycle.size(); ++i) {
    if (s.d(q.cycle[i], candidate) != first) return std::nullopt;
  }
  return first;
}

std::optional<Rat> tail_self_limit(const FiniteSpace& s, const Seq& q) {
  Rat first = s.d(q.cycle[0], q.cycle[0]);
  for (size_t i = 1; i < q.cycle.size(); ++i) {
    if (s.d(q.cycle[i], q.cycle[i]) != first) return std::nullopt;
  }
  return first;
}

// Last min(window, len) prefix indices.
std::pair<size_t, size_t> window_range(const Seq& q, int window) {
  size_t len = q.prefix.size();
  size_t w = std::min(len, static_cast<size_t>(window));
  return {len - w, len};
}

}  // namespace

Seq subsequence(const Seq& s, size_t offset, size_t stride) {
  if (!s.decidable()) throw InputError("subsequence of an undecidable tail");
  if (stride == 0) throw InputError("subsequence stride must be positive");
  const size_t p = s.prefix.size();
  const size_t cycle_len = s.cycle.size();
  Seq t;
  // Terms drawn from the prefix stay in the new prefix.
  size_t i = 0;
  for (; offset + stride * i < p; ++i) {
    t.prefix.push_back(s.prefix[offset + stride * i]);
  }
  // From here on indices land in the cycle; positions advance by stride mod
  // cycle length, repeating with period cycle_len / gcd(stride, cycle_len).
  size_t q0 = (offset + stride * i - p) % cycle_len;
  size_t period = cycle_len / std::gcd(stride, cycle_len);
  for (size_t t_idx = 0; t_idx < period; ++t_idx) {
    t.cycle.push_back(s.cycle[(q0 + stride * t_idx) % cycle_len]);
  }
  t.tail = t.cycle.size() == 1 ? TailKind::Constant : TailKind::Periodic;
  return t;
}

std::string_view mode_name(ConvergenceMode m) {
  switch (m) {
    case ConvergenceMode::Sigma: return "sigma";
    case ConvergenceMode::Symmetric: return "symmetric";
    case ConvergenceMode::Cauchy: return "cauchy";
  }
  return "?";
}

std::optional<ConvergenceMode> parse_mode(std::string_view name) {
  if (name == "sigma") return ConvergenceMode::Sigma;
  if (name == "symmetric") return ConvergenceMode::Symmetric;
  if (name == "cauchy") return ConvergenceMode::Cauchy;
  return std::nullopt;
}

std::string_view outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Holds: return "holds";
    case Outcome::Fails: return "fails";
    case Outcome::Inconclusive: return "inconclusive";
  }
  return "?";
}

Rat default_epsilon() { return Rat(1, 1000); }

ConvergenceVerdict sigma_limit_test(const FiniteSpace& space, const Seq& seq,
                                    int candidate, const Rat& epsilon, int window) {
  if (epsilon <= 0) throw InputError("epsilon must be positive");
  if (window < 1) throw InputError("window must be at least 1");
  ConvergenceVerdict v;
  v.epsilon = epsilon;
  v.window = window;
  const Rat self = space.d(candidate, candidate);

  if (seq.decidable()) {
    auto limit = tail_limit_against(space, seq, candidate);
    if (!limit) {
      v.outcome = Outcome::Fails;
      v.detail = "d(x_n, " + space.label(candidate) +
                 ") oscillates over the tail; no limit exists";
      return v;
    }
    v.limit_estimate = *limit;
    if (*limit == self) {
      v.outcome = Outcome::Holds;
      v.detail = "lim d(x_n, " + space.label(candidate) + ") = " +
                 format_rational(*limit) + " = d(" + space.label(candidate) + ", " +
                 space.label(candidate) + ")";
    } else {
      v.outcome = Outcome::Fails;
      v.detail = "lim d(x_n, " + space.label(candidate) + ") = " +
                 format_rational(*limit) + " but d(" + space.label(candidate) + ", " +
                 space.label(candidate) + ") = " + format_rational(self);
    }
    return v;
  }

  auto [begin, end] = window_range(seq, window);
  for (size_t n = begin; n < end; ++n) {
    Rat gap = abs_gap(space.d(seq.prefix[n], candidate), self);
    if (gap >= epsilon) {
      v.outcome = Outcome::Fails;
      v.detail = "|d(x_" + std::to_string(n) + ", " + space.label(candidate) +
                 ") - d(cand, cand)| = " + format_rational(gap) + " >= epsilon";
      return v;
    }
  }
  v.outcome = Outcome::Inconclusive;
  v.detail = "holds so far: trailing window of " + std::to_string(end - begin) +
             " terms stays within epsilon; no tail to certify a limit";
  return v;
}

ConvergenceVerdict symmetric_limit_test(const FiniteSpace& space, const Seq& seq,
                                        int candidate, const Rat& epsilon, int window) {
  if (epsilon <= 0) throw InputError("epsilon must be positive");
  if (window < 1) throw InputError("window must be at least 1");
  ConvergenceVerdict v;
  v.mode = ConvergenceMode::Symmetric;
  v.epsilon = epsilon;
  v.window = window;
  const Rat self = space.d(candidate, candidate);

  if (seq.decidable()) {
    auto limit = tail_limit_against(space, seq, candidate);
    auto self_limit = tail_self_limit(space, seq);
    if (limit) v.limit_estimate = *limit;
    if (!limit || !self_limit) {
      v.outcome = Outcome::Fails;
      v.detail = std::string(!limit ? "d(x_n, candidate)" : "d(x_n, x_n)") +
                 " oscillates over the tail; no limit exists";
      return v;
    }
    if (*limit == self && *self_limit == self) {
      v.outcome = Outcome::Holds;
      v.detail = "lim d(x_n, cand) = lim d(x_n, x_n) = d(cand, cand) = " +
                 format_rational(self);
    } else {
      v.outcome = Outcome::Fails;
      v.detail = "lim d(x_n, cand) = " + format_rational(*limit) +
                 ", lim d(x_n, x_n) = " + format_rational(*self_limit) +
                 ", d(cand, cand) = " + format_rational(self);
    }
    return v;
  }

  auto [begin, end] = window_range(seq, window);
  for (size_t n = begin; n < end; ++n) {
    Rat gap1 = abs_gap(space.d(seq.prefix[n], candidate), self);
    Rat gap2 = abs_gap(space.d(seq.prefix[n], seq.prefix[n]), self);
    if (gap1 >= epsilon || gap2 >= epsilon) {
      v.outcome = Outcome::Fails;
      v.detail = "window term n=" + std::to_string(n) + " strays from d(cand, cand) by " +
                 format_rational(gap1 >= epsilon ? gap1 : gap2) + " >= epsilon";
      return v;
    }
  }
  v.outcome = Outcome::Inconclusive;
  v.detail = "holds so far: both trailing series stay within epsilon of d(cand, cand)";
  return v;
}

ConvergenceVerdict cauchy_test(const FiniteSpace& space, const Seq& seq,
                               const Rat& epsilon, int window) {
  if (epsilon <= 0) throw InputError("epsilon must be positive");
  if (window < 1) throw InputError("window must be at least 1");
  ConvergenceVerdict v;
  v.mode = ConvergenceMode::Cauchy;
  v.epsilon = epsilon;
  v.window = window;

  if (seq.decidable()) {
    // All pair distances among cycle points, self-pairs included: both
    // indices of d(x_n, x_m) run over the tail independently.
    Rat first = space.d(seq.cycle[0], seq.cycle[0]);
    for (size_t i = 0; i < seq.cycle.size(); ++i) {
      for (size_t j = 0; j < seq.cycle.size(); ++j) {
        const Rat& val = space.d(seq.cycle[i], seq.cycle[j]);
        if (val != first) {
          v.outcome = Outcome::Fails;
          v.detail = "pair distances oscillate over the tail: d(" +
                     space.label(seq.cycle[0]) + ", " + space.label(seq.cycle[0]) +
                     ") = " + format_rational(first) + " vs d(" +
                     space.label(seq.cycle[i]) + ", " + space.label(seq.cycle[j]) +
                     ") = " + format_rational(val);
          return v;
        }
      }
    }
    v.outcome = Outcome::Holds;
    v.limit_estimate = first;
    v.detail = "lim d(x_n, x_m) = " + format_rational(first);
    return v;
  }

  auto [begin, end] = window_range(seq, window);
  std::optional<Rat> lo, hi;
  for (size_t n = begin; n < end; ++n) {
    for (size_t m = begin; m < end; ++m) {
      Rat val = space.d(seq.prefix[n], seq.prefix[m]);
      if (!lo || val < *lo) lo = val;
      if (!hi || val > *hi) hi = val;
    }
  }
  if (lo && *hi - *lo >= epsilon) {
    v.outcome = Outcome::Fails;
    v.detail = "pair distances in the trailing window oscillate by " +
               format_rational(*hi - *lo) + " >= epsilon";
    return v;
  }
  v.outcome = Outcome::Inconclusive;
  v.detail = "holds so far: window oscillation below epsilon; no tail to certify";
  return v;
}

PairLimit pair_sigma_limit(const FiniteSpace& space, const Seq& a, const Seq& b) {
  PairLimit result;
  if (!a.decidable() || !b.decidable()) return result;
  result.decidable = true;
  // Past both prefixes the aligned pair (x_n, y_n) is periodic with period
  // lcm of the cycle lengths; the limit exists iff d is constant over one
  // such period.
  size_t start = std::max(a.prefix.size(), b.prefix.size());
  size_t period = std::lcm(a.cycle.size(), b.cycle.size());
  Rat first = space.d(a.at(start), b.at(start));
  for (size_t t = 1; t < period; ++t) {
    if (space.d(a.at(start + t), b.at(start + t)) != first) {
      result.exists = false;
      return result;
    }
  }
  result.exists = true;
  result.value = first;
  return result;
}

namespace {

Seq draw_seq(SplitMix64& rng, int n_points) {
  Seq s;
  size_t prefix_len = 1 + rng.bounded(3);
  for (size_t i = 0; i < prefix_len; ++i) {
    s.prefix.push_back(static_cast<int>(rng.bounded(static_cast<uint64_t>(n_points))));
  }
  if (rng.bounded(2) == 0) {
    s.tail = TailKind::Constant;
    s.cycle.push_back(static_cast<int>(rng.bounded(static_cast<uint64_t>(n_points))));
  } else {
    s.tail = TailKind::Periodic;
    size_t cycle_len = 1 + rng.bounded(3);
    for (size_t i = 0; i < cycle_len; ++i) {
      s.cycle.push_back(static_cast<int>(rng.bounded(static_cast<uint64_t>(n_points))));
    }
  }
  return s;
}

bool holds(const ConvergenceVerdict& v) { return v.outcome == Outcome::Holds; }

}  // namespace

SuiteResult mml_theorem_suite(const FiniteSpace& space, uint64_t seed, long instances,
                              bool allow_non_mml) {
  if (instances < 1) throw InputError("suite requires at least one instance");
  CheckResult mml = check_axioms(space, ClassTag::MML);
  if (!mml.holds && !allow_non_mml) {
    throw HypothesisError(ClassTag::MML, mml.witness,
                          "space is not modified metric-like; rerun with the "
                          "non-MML flag to probe it anyway");
  }

  SuiteResult result;
  result.space_is_mml = mml.holds;
  const Rat eps = default_epsilon();
  const int n = space.size();

  for (int item = 1; item <= 4; ++item) {
    PropertyReport report;
    report.item = item;
    for (long i = 0; i < instances; ++i) {
      SplitMix64 rng(mix_seed(seed, static_cast<uint64_t>(item),
                              static_cast<uint64_t>(i)));
      ++report.instances_run;
      switch (item) {
        case 1: {
          // symmetric convergence implies Cauchy
          Seq s = draw_seq(rng, n);
          for (int x = 0; x < n && !report.counterexample; ++x) {
            if (!holds(symmetric_limit_test(space, s, x, eps, kDefaultWindow))) continue;
            ++report.premise_hits;
            auto cauchy = cauchy_test(space, s, eps, kDefaultWindow);
            if (!holds(cauchy)) {
              SuiteCounterexample ce;
              ce.item = 1;
              ce.seq_a = s;
              ce.candidate_a = x;
              ce.equation = "x_n ->s " + space.label(x) + " for " + seq_brief(space, s) +
                            " but lim d(x_n, x_m) does not exist: " + cauchy.detail;
              report.counterexample = std::move(ce);
            }
          }
          break;
        }
        case 2: {
          // Cauchy + symmetric-convergent subsequence => symmetric-convergent
          Seq s = draw_seq(rng, n);
          size_t offset = rng.bounded(4);
          size_t stride = 1 + rng.bounded(3);
          Seq t = subsequence(s, offset, stride);
          if (!holds(cauchy_test(space, s, eps, kDefaultWindow))) break;
          for (int x = 0; x < n && !report.counterexample; ++x) {
            if (!holds(symmetric_limit_test(space, t, x, eps, kDefaultWindow))) continue;
            ++report.premise_hits;
            auto whole = symmetric_limit_test(space, s, x, eps, kDefaultWindow);
            if (!holds(whole)) {
              SuiteCounterexample ce;
              ce.item = 2;
              ce.seq_a = s;
              ce.seq_b = t;
              ce.candidate_a = x;
              ce.equation = "x_n is Cauchy with a subsequence ->s " + space.label(x) +
                            " but the whole sequence is not: " + whole.detail;
              report.counterexample = std::move(ce);
            }
          }
          break;
        }
        case 3: {
          // two Cauchy sequences have a joint distance limit
          Seq s = draw_seq(rng, n);
          Seq t = draw_seq(rng, n);
          if (!holds(cauchy_test(space, s, eps, kDefaultWindow))) break;
          if (!holds(cauchy_test(space, t, eps, kDefaultWindow))) break;
          ++report.premise_hits;
          PairLimit pl = pair_sigma_limit(space, s, t);
          if (!pl.exists && !report.counterexample) {
            SuiteCounterexample ce;
            ce.item = 3;
            ce.seq_a = s;
            ce.seq_b = t;
            ce.equation = "both " + seq_brief(space, s) + " and " + seq_brief(space, t) +
                          " are Cauchy but lim d(x_n, y_n) does not exist";
            report.counterexample = std::move(ce);
          }
          break;
        }
        case 4: {
          // symmetric-convergent pair: lim d(x_n, y_n) = d(x, y)
          Seq s = draw_seq(rng, n);
          Seq t = draw_seq(rng, n);
          for (int x = 0; x < n && !report.counterexample; ++x) {
            if (!holds(symmetric_limit_test(space, s, x, eps, kDefaultWindow))) continue;
            for (int y = 0; y < n && !report.counterexample; ++y) {
              if (!holds(symmetric_limit_test(space, t, y, eps, kDefaultWindow))) continue;
              ++report.premise_hits;
              PairLimit pl = pair_sigma_limit(space, s, t);
              if (!pl.exists || pl.value != space.d(x, y)) {
                SuiteCounterexample ce;
                ce.item = 4;
                ce.seq_a = s;
                ce.seq_b = t;
                ce.candidate_a = x;
                ce.candidate_b = y;
                ce.equation =
                    "x_n ->s " + space.label(x) + ", y_n ->s " + space.label(y) +
                    (pl.exists ? " but lim d(x_n, y_n) = " + format_rational(pl.value) +
                                     " != d(x, y) = " + format_rational(space.d(x, y))
                               : " but lim d(x_n, y_n) does not exist");
                report.counterexample = std::move(ce);
              }
            }
          }
          break;
        }
      }
    }
    result.items.push_back(std::move(report));
  }
  return result;
}

}  // namespace genmetric
