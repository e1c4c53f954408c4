/*
 * * genmetric: generalized metric spaces, executable.
 *
 * C interface to the engine: axiom verification with witnesses over eight
 * space classes, contraction certificates with audited Picard iteration,
 * exact convergence testing for decidable sequences, and separating-example
 * search over small finite spaces.
 *
 * Conventions:
 *   - All documents cross the boundary as JSON strings; schemas are in the
 *     README. Rationals travel as strings ("5/2", "2.5"), never as floats.
 *   - Functions return gm_status. GM_OK / GM_NEGATIVE both produce a result
 *     document in *json_out; GM_NEGATIVE marks a valid negative outcome
 *     (axioms fail, constant not admissible, witness absent, ...).
 *   - Strings returned through char** are heap-allocated; release them with
 *     gm_string_free. Error messages arrive through the optional errmsg
 *     out-parameter on GM_ERR_* returns.
 *   - gm_space handles are opaque and immutable; they may be shared across
 *     threads freely.
 */

#ifndef GENMETRIC_H
#define GENMETRIC_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gm_status {
  GM_OK = 0,           /* positive outcome */
  GM_NEGATIVE = 1,     /* valid negative outcome, result document set */
  GM_ERR_INPUT = 2,    /* malformed document, unknown label, bad argument */
  GM_ERR_INTERNAL = 3  /* unexpected failure */
} gm_status;

typedef struct gm_space gm_space;

const char* gm_version(void);

/* Parses a finite space document {"points": [...], "d": [[...]]} or a
 * parametric one {"family": ..., "params": ..., "domain": ..., "step": ...}.
 */
gm_status gm_space_from_json(const char* json, gm_space** out, char** errmsg);
void gm_space_free(gm_space* space);

/* The space as a finite table document; parametric spaces are sampled on
 * their grid first. */
gm_status gm_space_to_json(const gm_space* space, char** json_out, char** errmsg);

/* Every entry increased by alpha (a rational string, must be positive). */
gm_status gm_space_shift(const gm_space* space, const char* alpha, gm_space** out,
                         char** errmsg);

/* Members of the ball {y : |d(center,y) - d(center,center)| < radius}. */
gm_status gm_space_ball(const gm_space* space, const char* center, const char* radius,
                        char** json_out, char** errmsg);

/* Classification report over all eight classes, or a single-class verdict
 * when single_class is non-NULL ("METRIC", "PM", "ML", "MML", "RM", "RPM",
 * "RML", "RMML"). semantics is NULL (per-class defaults), "distinct" or
 * "pairs". GM_OK when everything asked about holds, GM_NEGATIVE otherwise. */
gm_status gm_classify(const gm_space* space, const char* semantics,
                      const char* single_class, char** json_out, char** errmsg);

/* Contraction certificate plus audited fixed-point run. condition is
 * "banach", "max-self" or "max-displacement"; x0 is a point label or NULL
 * for the first point; max_steps <= 0 selects the exact default. GM_OK when
 * the constant is admissible and every audit passes; GM_NEGATIVE when the
 * constant is not admissible, an audit fails, or the space is not
 * rectangular metric-like (the document says which). */
gm_status gm_fixpoint(const gm_space* space, const char* map_json, const char* condition,
                      const char* x0, long max_steps, const char* semantics,
                      char** json_out, char** errmsg);

/* Convergence verdict for a sequence document. mode is "sigma", "symmetric"
 * or "cauchy"; candidate is required for the first two. epsilon defaults to
 * 1/1000 and window to 8 when NULL / non-positive. GM_OK on holds,
 * GM_NEGATIVE on fails or inconclusive (the document carries the detail). */
gm_status gm_converge(const gm_space* space, const char* sequence_json, const char* mode,
                      const char* candidate, const char* epsilon, long window,
                      char** json_out, char** errmsg);

/* Property harness for the four symmetric-convergence facts in modified
 * metric-like spaces, over seeded decidable sequences. GM_NEGATIVE when a
 * counterexample is reported or (without allow_non_mml) the space is not
 * MML. */
gm_status gm_mml_suite(const gm_space* space, unsigned long long seed, long instances,
                       int allow_non_mml, char** json_out, char** errmsg);

/* Separating-example search from a query document. GM_OK with a witness,
 * GM_NEGATIVE with {"found": false}. */
gm_status gm_search(const char* query_json, char** json_out, char** errmsg);

/* Built-in regression suite (embedded fixtures, no files needed). GM_OK iff
 * every item passes. */
gm_status gm_paper_suite(char** json_out, char** errmsg);

/* Self-test hook: "none" or "drop-msigma3-subtraction". Also reachable via
 * the GENMETRIC_MUTATION environment variable. */
gm_status gm_set_mutation(const char* name, char** errmsg);

void gm_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* GENMETRIC_H */
