#include "fixpoint.hpp"

#include <algorithm>

namespace genmetric {

std::string_view condition_name(Condition c) {
  switch (c) {
    case Condition::Banach: return "banach";
    case Condition::MaxSelf: return "max-self";
    case Condition::MaxDisplacement: return "max-displacement";
  }
  return "?";
}

std::optional<Condition> parse_condition(std::string_view name) {
  if (name == "banach") return Condition::Banach;
  if (name == "max-self") return Condition::MaxSelf;
  if (name == "max-displacement") return Condition::MaxDisplacement;
  return std::nullopt;
}

Rat condition_rhs(const FiniteSpace& s, const SelfMap& t, Condition c, int x, int y) {
  switch (c) {
    case Condition::Banach:
      return s.d(x, y);
    case Condition::MaxSelf:
      return std::max({s.d(x, y), s.d(x, x), s.d(y, y)});
    case Condition::MaxDisplacement:
      return std::max({s.d(x, y), s.d(x, t.apply(x)), s.d(y, t.apply(y))});
  }
  return Rat(0);
}

ContractionCertificate contraction_constant(const FiniteSpace& space, const SelfMap& map,
                                            Condition condition, PairSemantics sem) {
  CheckResult rml = check_axioms(space, ClassTag::RML, sem);
  if (!rml.holds) {
    throw HypothesisError(ClassTag::RML, rml.witness,
                          "space is not rectangular metric-like (" +
                              std::string(semantics_name(sem)) + " semantics)");
  }
  ContractionCertificate cert;
  cert.condition = condition;
  cert.k_min = KMin{true, Rat(0)};
  bool have_binding = false;
  for (int x = 0; x < space.size(); ++x) {
    for (int y = 0; y < space.size(); ++y) {
      Rat lhs = space.d(map.apply(x), map.apply(y));
      Rat rhs = condition_rhs(space, map, condition, x, y);
      if (rhs == 0) {
        if (lhs > 0) {
          // No finite k satisfies lhs <= k * 0; the first such pair binds.
          cert.k_min = KMin{false, Rat(0)};
          cert.binding_pair = {x, y};
          cert.admissible = false;
          return cert;
        }
        if (!have_binding) {
          cert.binding_pair = {x, y};  // contributes ratio 0
          have_binding = true;
        }
        continue;
      }
      Rat ratio = lhs / rhs;
      if (!have_binding || ratio > cert.k_min.value) {
        cert.k_min.value = std::move(ratio);
        cert.binding_pair = {x, y};
        have_binding = true;
      }
    }
  }
  cert.admissible = cert.k_min.is_finite && cert.k_min.value < 1;
  return cert;
}

IterationTrace picard_iterate(const FiniteSpace& space, const SelfMap& map, int x0,
                              long max_steps) {
  if (max_steps < 1) throw InputError("max_steps must be at least 1");
  IterationTrace trace;
  std::vector<long> first_seen(static_cast<size_t>(space.size()), -1);
  int current = x0;
  trace.orbit.push_back(current);
  first_seen[static_cast<size_t>(current)] = 0;
  for (long step = 0; step < max_steps; ++step) {
    int next = map.apply(current);
    if (next == current) {
      trace.termination = TerminationKind::FixedPoint;
      trace.fixed_point = current;
      break;
    }
    long seen = first_seen[static_cast<size_t>(next)];
    if (seen >= 0) {
      trace.orbit.push_back(next);
      trace.termination = TerminationKind::CycleDetected;
      trace.cycle_period = static_cast<int>(static_cast<long>(trace.orbit.size()) - 1 - seen);
      break;
    }
    trace.orbit.push_back(next);
    first_seen[static_cast<size_t>(next)] = static_cast<long>(trace.orbit.size()) - 1;
    current = next;
  }
  const auto& orbit = trace.orbit;
  for (size_t n = 0; n + 1 < orbit.size(); ++n) {
    trace.rho.push_back(space.d(orbit[n], orbit[n + 1]));
  }
  for (size_t n = 0; n + 2 < orbit.size(); ++n) {
    trace.rho_star.push_back(space.d(orbit[n], orbit[n + 2]));
  }
  for (size_t n = 0; n < orbit.size(); ++n) {
    trace.rho_prime.push_back(space.d(orbit[n], orbit[n]));
  }
  return trace;
}

namespace {

// lhs_series[n] <= k^n * scale for every recorded n.
BoundCheck envelope_check(const std::string& name, const std::vector<Rat>& series,
                          const Rat& k, const Rat& scale) {
  BoundCheck check;
  check.name = name;
  check.pass = true;
  Rat kn = 1;
  for (size_t n = 0; n < series.size(); ++n) {
    BoundStep step;
    step.n = static_cast<long>(n);
    step.lhs = series[n];
    step.rhs = kn * scale;
    step.pass = step.lhs <= step.rhs;
    if (!step.pass) check.pass = false;
    check.steps.push_back(std::move(step));
    kn *= k;
  }
  return check;
}

BoundCheck flag_check(const std::string& name, bool pass) {
  BoundCheck check;
  check.name = name;
  check.pass = pass;
  return check;
}

}  // namespace

FixpointOutcome verify_theorem(const FiniteSpace& space, const SelfMap& map,
                               Condition condition, int x0, PairSemantics sem,
                               long max_steps) {
  FixpointOutcome outcome{contraction_constant(space, map, condition, sem), std::nullopt};
  if (!outcome.certificate.admissible) return outcome;

  if (max_steps <= 0) max_steps = space.size() + 1;
  TheoremCertificate tc;
  tc.condition = condition;
  tc.certificate = outcome.certificate;
  tc.trace = picard_iterate(space, map, x0, max_steps);
  const Rat& k = tc.certificate.k_min.value;

  bool reached = tc.trace.termination == TerminationKind::FixedPoint;
  tc.fixed_point = reached ? tc.trace.fixed_point : -1;
  tc.bound_checks.push_back(flag_check("orbit reaches a fixed point", reached));

  tc.self_distance_zero = reached && space.d(tc.fixed_point, tc.fixed_point) == 0;
  tc.bound_checks.push_back(
      flag_check("fixed point has zero self-distance", tc.self_distance_zero));

  // Uniqueness comes from the map table alone, not from the orbit.
  int fixed_count = 0;
  for (int v = 0; v < space.size(); ++v) {
    if (map.apply(v) == v) ++fixed_count;
  }
  tc.unique = reached && fixed_count == 1;
  tc.bound_checks.push_back(flag_check("fixed point is unique", tc.unique));

  const auto& tr = tc.trace;
  switch (condition) {
    case Condition::Banach: {
      if (!tr.rho.empty()) {
        tc.bound_checks.push_back(
            envelope_check("rho_n <= k^n rho_0", tr.rho, k, tr.rho[0]));
      }
      if (!tr.rho_star.empty()) {
        tc.bound_checks.push_back(
            envelope_check("rho*_n <= k^n rho*_0", tr.rho_star, k, tr.rho_star[0]));
      }
      tc.bound_checks.push_back(
          envelope_check("rho'_n <= k^n rho'_0", tr.rho_prime, k, tr.rho_prime[0]));
      break;
    }
    case Condition::MaxSelf: {
      // The condition applied at x = y gives d(Tx,Tx) <= k d(x,x) directly.
      tc.bound_checks.push_back(
          envelope_check("rho'_n <= k^n rho'_0", tr.rho_prime, k, tr.rho_prime[0]));
      tc.bound_checks.push_back(flag_check(
          "rho_n eventually 0 (fixed point with zero self-distance)",
          reached && tc.self_distance_zero));
      tc.bound_checks.push_back(flag_check(
          "rho*_n eventually 0 (fixed point with zero self-distance)",
          reached && tc.self_distance_zero));
      break;
    }
    case Condition::MaxDisplacement: {
      // At x = y the denominator is max{d(x,x), d(x,Tx)}, so the clean
      // rho'-envelope can fail even for admissible maps. The provable bound
      // chains d(Tx,Tx) <= k max{rho'_{n-1}, rho_{n-1}} with rho_n <= k^n
      // rho_0 into rho'_n <= k^n max(rho'_0, rho_0).
      if (!tr.rho.empty()) {
        tc.bound_checks.push_back(
            envelope_check("rho_n <= k^n rho_0", tr.rho, k, tr.rho[0]));
      }
      Rat scale = tr.rho_prime[0];
      if (!tr.rho.empty() && tr.rho[0] > scale) scale = tr.rho[0];
      tc.bound_checks.push_back(envelope_check("rho'_n <= k^n max(rho'_0, rho_0)",
                                               tr.rho_prime, k, scale));
      tc.bound_checks.push_back(flag_check(
          "rho_n eventually 0 (fixed point with zero self-distance)",
          reached && tc.self_distance_zero));
      tc.bound_checks.push_back(flag_check(
          "rho*_n eventually 0 (fixed point with zero self-distance)",
          reached && tc.self_distance_zero));
      break;
    }
  }

  tc.all_audits_pass = true;
  for (const auto& check : tc.bound_checks) {
    if (!check.pass) tc.all_audits_pass = false;
  }
  outcome.theorem = std::move(tc);
  return outcome;
}

}  // namespace genmetric
