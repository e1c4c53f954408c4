#pragma once

#include <string>
#include <vector>

#include "json_io.hpp"
#include "parametric.hpp"
#include "space.hpp"

namespace genmetric {

// Built-in regression suite over known results: the two 5-point separating
// examples, the step-family grid, the |x-y|+c grid, shift preservation,
// non-unique limits, the symmetric-convergence suite on small modified
// metric-like fixtures, and the implication-lattice sweep. Fixtures are
// embedded, so the suite runs with no input files.
struct SuiteItemResult {
  std::string id;
  bool pass = false;
  std::string detail;
};

struct PaperSuiteResult {
  std::vector<SuiteItemResult> items;
  int failed = 0;
};

PaperSuiteResult run_paper_suite();
Json paper_suite_to_json(const PaperSuiteResult& result);

// The embedded fixtures, reusable from tests.
// 5 points; distance 2 between distinct points; self-distance 0 except 3 at
// the first point. Metric-like but not modified metric-like.
FiniteSpace fixture_ml_not_mml();
// 5 points; 5/2 between distinct points; self-distance 5 at the first point,
// 0 elsewhere. Rectangular metric-like but not rectangular modified
// metric-like under the all-pairs reading.
FiniteSpace fixture_rml_not_rmml();
// satish_rpm(a=3, alpha=3) sampled on [0,3] at step 1/2.
ParametricSpace fixture_step_grid();
// abs_plus_c(c=2) sampled on (0,1) at step 1/4.
ParametricSpace fixture_abs_grid();
// The constant-1 table on n points (the zero space shifted by 1).
FiniteSpace fixture_all_ones(int n);
// d(x,y) = max(x,y) on {1,2,3}: a partial metric with nonzero self-distances.
FiniteSpace fixture_max_pm();

}  // namespace genmetric
