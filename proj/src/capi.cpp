#include "genmetric.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "convergence.hpp"
#include "fixpoint.hpp"
#include "json_io.hpp"
#include "paper_suite.hpp"
#include "search.hpp"
#include "space.hpp"

using namespace genmetric;

struct gm_space {
  AnySpace value;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_error(char** errmsg, const std::string& message) {
  if (errmsg != nullptr) *errmsg = dup_string(message);
}

void set_json(char** json_out, const Json& doc) {
  if (json_out != nullptr) *json_out = dup_string(doc.dump());
}

// Every entry point funnels through here: exceptions become status codes and
// never cross the C boundary.
template <typename Fn>
gm_status guarded(char** errmsg, Fn&& fn) {
  try {
    return fn();
  } catch (const InputError& e) {
    set_error(errmsg, e.what());
    return GM_ERR_INPUT;
  } catch (const std::bad_alloc&) {
    set_error(errmsg, "out of memory");
    return GM_ERR_INTERNAL;
  } catch (const std::exception& e) {
    set_error(errmsg, e.what());
    return GM_ERR_INTERNAL;
  }
}

const FiniteSpace& finite_view(const gm_space* space, FiniteSpace& storage) {
  if (const auto* finite = std::get_if<FiniteSpace>(&space->value)) return *finite;
  storage = std::get<ParametricSpace>(space->value).materialize();
  return storage;
}

}  // namespace

extern "C" {

const char* gm_version(void) { return "genmetric 1.0.0"; }

gm_status gm_space_from_json(const char* json, gm_space** out, char** errmsg) {
  if (json == nullptr || out == nullptr) {
    set_error(errmsg, "null argument");
    return GM_ERR_INPUT;
  }
  return guarded(errmsg, [&] {
    auto space = space_from_text(json);
    *out = new gm_space{std::move(space)};
    return GM_OK;
  });
}

void gm_space_free(gm_space* space) { delete space; }

gm_status gm_space_to_json(const gm_space* space, char** json_out, char** errmsg) {
  if (space == nullptr || json_out == nullptr) {
    set_error(errmsg, "null argument");
    return GM_ERR_INPUT;
  }
  return guarded(errmsg, [&] {
    set_json(json_out, space_to_json(materialized(space->value)));
    return GM_OK;
  });
}

gm_status gm_space_shift(const gm_space* space, const char* alpha, gm_space** out,
                         char** errmsg) {
  if (space == nullptr || alpha == nullptr || out == nullptr) {
    set_error(errmsg, "null argument");
    return GM_ERR_INPUT;
  }
  return guarded(errmsg, [&] {
    Rat a = parse_rational(alpha);
    *out = new gm_space{AnySpace(shift_space(materialized(space->value), a))};
    return GM_OK;
  });
}

gm_status gm_space_ball(const gm_space* space, const char* center, const char* radius,
                        char** json_out, char** errmsg) {
  if (space == nullptr || center == nullptr || radius == nullptr || json_out == nullptr) {
    set_error(errmsg, "null argument");
    return GM_ERR_INPUT;
  }
  return guarded(errmsg, [&] {
    FiniteSpace storage({"?"}, {Rat(0)});
    const FiniteSpace& finite = finite_view(space, storage);
    auto members = ball_members(finite, center, parse_rational(radius));
    Json doc;
    doc["center"] = center;
    doc["radius"] = radius;
    doc["members"] = members;
    set_json(json_out, doc);
    return GM_OK;
  });
}

gm_status gm_classify(const gm_space* space, const char* semantics,
                      const char* single_class, char** json_out, char** errmsg) {
  if (space == nullptr || json_out == nullptr) {
    set_error(errmsg, "null argument");
    return GM_ERR_INPUT;
  }
  return guarded(errmsg, [&]() -> gm_status {
    std::optional<PairSemantics> sem;
    if (semantics != nullptr) {
      sem = parse_semantics(semantics);
      if (!sem) throw InputError("semantics must be \"distinct\" or \"pairs\"");
    }
    FiniteSpace storage({"?"}, {Rat(0)});
    const FiniteSpace& finite = finite_view(space, storage);
    if (single_class != nullptr) {
      auto tag = parse_class_tag(single_class);
      if (!tag) throw InputError("unknown class tag \"" + std::string(single_class) + "\"");
      PairSemantics use =
          is_rectangular(*tag) ? sem.value_or(default_semantics(*tag))
                               : default_semantics(*tag);
      CheckResult res = check_axioms(finite, *tag, use);
      set_json(json_out, verdict_to_json(ClassVerdict{*tag, use, res.holds, res.witness}));
      return res.holds ? GM_OK : GM_NEGATIVE;
    }
    ClassificationReport report = classify(finite, sem);
    bool all_hold = true;
    for (const auto& v : report.verdicts) {
      if (!v.holds) all_hold = false;
    }
    set_json(json_out, report_to_json(report));
    return all_hold ? GM_OK : GM_NEGATIVE;
  });
}

gm_status gm_fixpoint(const gm_space* space, const char* map_json, const char* condition,
                      const char* x0, long max_steps, const char* semantics,
                      char** json_out, char** errmsg) {
  if (space == nullptr || map_json == nullptr || condition == nullptr ||
      json_out == nullptr) {
    set_error(errmsg, "null argument");
    return GM_ERR_INPUT;
  }
  return guarded(errmsg, [&]() -> gm_status {
    auto cond = parse_condition(condition);
    if (!cond) {
      throw InputError(
          "condition must be \"banach\", \"max-self\" or \"max-displacement\"");
    }
    PairSemantics sem = PairSemantics::AllPairs;
    if (semantics != nullptr) {
      auto parsed = parse_semantics(semantics);
      if (!parsed) throw InputError("semantics must be \"distinct\" or \"pairs\"");
      sem = *parsed;
    }
    FiniteSpace storage({"?"}, {Rat(0)});
    const FiniteSpace& finite = finite_view(space, storage);
    SelfMap map = map_from_json(finite, parse_json_text(map_json));
    int start = x0 != nullptr ? finite.require(x0) : 0;
    try {
      FixpointOutcome outcome = verify_theorem(finite, map, *cond, start, sem, max_steps);
      set_json(json_out, fixpoint_outcome_to_json(finite, outcome));
      bool ok = outcome.theorem && outcome.theorem->all_audits_pass;
      return ok ? GM_OK : GM_NEGATIVE;
    } catch (const HypothesisError& e) {
      set_json(json_out, hypothesis_failure_to_json(e));
      return GM_NEGATIVE;
    }
  });
}

gm_status gm_converge(const gm_space* space, const char* sequence_json, const char* mode,
                      const char* candidate, const char* epsilon, long window,
                      char** json_out, char** errmsg) {
  if (space == nullptr || sequence_json == nullptr || mode == nullptr ||
      json_out == nullptr) {
    set_error(errmsg, "null argument");
    return GM_ERR_INPUT;
  }
  return guarded(errmsg, [&]() -> gm_status {
    auto parsed_mode = parse_mode(mode);
    if (!parsed_mode) {
      throw InputError("mode must be \"sigma\", \"symmetric\" or \"cauchy\"");
    }
    bool needs_candidate = *parsed_mode != ConvergenceMode::Cauchy;
    if (needs_candidate && candidate == nullptr) {
      throw InputError("candidate point is required for sigma and symmetric modes");
    }
    Rat eps = epsilon != nullptr ? parse_rational(epsilon) : default_epsilon();
    int win = window > 0 ? static_cast<int>(window) : kDefaultWindow;
    Json seq_doc = parse_json_text(sequence_json);

    FiniteSpace problem_space({"?"}, {Rat(0)});
    Seq seq;
    std::optional<int> cand;
    if (const auto* finite = std::get_if<FiniteSpace>(&space->value)) {
      problem_space = *finite;
      seq = sequence_from_json(problem_space, seq_doc);
      if (candidate != nullptr) cand = problem_space.require(candidate);
    } else {
      auto problem = parametric_problem_from_json(
          std::get<ParametricSpace>(space->value), seq_doc,
          candidate != nullptr ? std::optional<std::string>(candidate) : std::nullopt);
      problem_space = std::move(problem.slice);
      seq = std::move(problem.seq);
      cand = problem.candidate;
    }

    ConvergenceVerdict verdict;
    switch (*parsed_mode) {
      case ConvergenceMode::Sigma:
        verdict = sigma_limit_test(problem_space, seq, *cand, eps, win);
        break;
      case ConvergenceMode::Symmetric:
        verdict = symmetric_limit_test(problem_space, seq, *cand, eps, win);
        break;
      case ConvergenceMode::Cauchy:
        verdict = cauchy_test(problem_space, seq, eps, win);
        break;
    }
    set_json(json_out, convergence_to_json(verdict));
    return verdict.outcome == Outcome::Holds ? GM_OK : GM_NEGATIVE;
  });
}

gm_status gm_mml_suite(const gm_space* space, unsigned long long seed, long instances,
                       int allow_non_mml, char** json_out, char** errmsg) {
  if (space == nullptr || json_out == nullptr) {
    set_error(errmsg, "null argument");
    return GM_ERR_INPUT;
  }
  return guarded(errmsg, [&]() -> gm_status {
    FiniteSpace storage({"?"}, {Rat(0)});
    const FiniteSpace& finite = finite_view(space, storage);
    try {
      SuiteResult result = mml_theorem_suite(finite, seed, instances, allow_non_mml != 0);
      set_json(json_out, suite_to_json(finite, result));
      for (const auto& item : result.items) {
        if (item.counterexample) return GM_NEGATIVE;
      }
      return GM_OK;
    } catch (const HypothesisError& e) {
      set_json(json_out, hypothesis_failure_to_json(e));
      return GM_NEGATIVE;
    }
  });
}

gm_status gm_search(const char* query_json, char** json_out, char** errmsg) {
  if (query_json == nullptr || json_out == nullptr) {
    set_error(errmsg, "null argument");
    return GM_ERR_INPUT;
  }
  return guarded(errmsg, [&]() -> gm_status {
    SearchQuery query = query_from_json(parse_json_text(query_json));
    auto witness = find_separation(query);
    if (witness) {
      set_json(json_out, separation_to_json(*witness));
      return GM_OK;
    }
    set_json(json_out, Json{{"found", false}});
    return GM_NEGATIVE;
  });
}

gm_status gm_paper_suite(char** json_out, char** errmsg) {
  if (json_out == nullptr) {
    set_error(errmsg, "null argument");
    return GM_ERR_INPUT;
  }
  return guarded(errmsg, [&]() -> gm_status {
    PaperSuiteResult result = run_paper_suite();
    set_json(json_out, paper_suite_to_json(result));
    return result.failed == 0 ? GM_OK : GM_NEGATIVE;
  });
}

gm_status gm_set_mutation(const char* name, char** errmsg) {
  if (name == nullptr) {
    set_error(errmsg, "null argument");
    return GM_ERR_INPUT;
  }
  auto m = parse_mutation(name);
  if (!m) {
    set_error(errmsg, "unknown mutation \"" + std::string(name) + "\"");
    return GM_ERR_INPUT;
  }
  set_mutation(*m);
  return GM_OK;
}

void gm_string_free(char* s) { std::free(s); }

}  // extern "C"
