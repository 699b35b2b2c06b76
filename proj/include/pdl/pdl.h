#ifndef PDL_H
#define PDL_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

/*
 * C interface to the probabilistic-program verifier.
 *
 * Every function that can fail returns a pdl_status; PDL_OK means success.
 * On failure, pdl_last_error() returns a thread-local human-readable message
 * describing the most recent failure on the calling thread.
 *
 * Strings returned through char** out-parameters are heap-allocated and must
 * be released with pdl_string_free. Handles are released with their matching
 * *_free function; freeing NULL is a no-op.
 */

typedef enum pdl_status {
  PDL_OK = 0,
  PDL_ERR_SYNTAX,
  PDL_ERR_DUPLICATE_HEADER,
  PDL_ERR_UNKNOWN_DIRECTIVE,
  PDL_ERR_PROB_OUT_OF_RANGE,
  PDL_ERR_UNBOUND_VARIABLE,
  PDL_ERR_TYPE_MISMATCH,
  PDL_ERR_DIVISION_BY_ZERO,
  PDL_ERR_UNSUPPORTED,
  PDL_ERR_INEXACT_BUDGET,
  PDL_ERR_MISSING_VARIABLE,
  PDL_ERR_CYCLIC_CONSTRAINTS,
  PDL_ERR_MALFORMED_CONSTRAINT,
  PDL_ERR_BAD_INPUT,
  PDL_ERR_IO,
  PDL_ERR_INTERNAL
} pdl_status;

typedef struct pdl_task pdl_task;
typedef struct pdl_verdict pdl_verdict;
typedef struct pdl_oracle_report pdl_oracle_report;

const char* pdl_version(void);
const char* pdl_last_error(void);
void pdl_string_free(char* s);

/* ----------------------------------------------------------------- tasks */

pdl_status pdl_task_parse_string(const char* text, pdl_task** out);
pdl_status pdl_task_parse_file(const char* path, pdl_task** out);
void pdl_task_free(pdl_task* task);

/* Canonical rendering; parses back to a structurally equal task. */
pdl_status pdl_task_pretty(const pdl_task* task, char** out);

/* ------------------------------------------------------------ verification */

/* Builds the proof tree and solves its constraint system. unroll_budget
 * bounds how many live loop iterations are unrolled per path. */
pdl_status pdl_verify(const pdl_task* task, unsigned unroll_budget,
                      pdl_verdict** out);
void pdl_verdict_free(pdl_verdict* verdict);

/* "PROVED", "REFUTED_BY_SOLVER", or "INCONCLUSIVE"; static storage. */
const char* pdl_verdict_status(const pdl_verdict* verdict);
pdl_status pdl_verdict_claimed(const pdl_verdict* verdict, char** out);
pdl_status pdl_verdict_max_provable(const pdl_verdict* verdict, char** out);
long long pdl_verdict_elapsed_ms(const pdl_verdict* verdict);
int pdl_verdict_saw_undecided(const pdl_verdict* verdict);
int pdl_verdict_saw_budget_exhausted(const pdl_verdict* verdict);

pdl_status pdl_verdict_text(const pdl_verdict* verdict, char** out);
pdl_status pdl_verdict_json(const pdl_verdict* verdict, char** out);
pdl_status pdl_verdict_tree_text(const pdl_verdict* verdict, char** out);
pdl_status pdl_verdict_tree_json(const pdl_verdict* verdict, char** out);
/* One constraint per line, in proof pre-order, target bound last. */
pdl_status pdl_verdict_constraints_text(const pdl_verdict* verdict, char** out);
/* QF_LRA script asserting the system plus the claimed bound. */
pdl_status pdl_verdict_smtlib(const pdl_verdict* verdict, char** out);
/* Concatenated QF_NIA scripts for the validity checks left undecided. */
pdl_status pdl_verdict_validity_queries(const pdl_verdict* verdict, char** out);

/* ---------------------------------------------------------------- oracle */

/* Exact expected probability of the postcondition under the operational
 * semantics (demonic choices minimized). bind_names/bind_values give values
 * to inputs ("true"/"false" for bool, decimal integers for int); unbound
 * inputs are enumerated over the bounds @assume implies. */
pdl_status pdl_oracle(const pdl_task* task, const char* const* bind_names,
                      const char* const* bind_values, size_t nbinds,
                      unsigned unroll_budget, pdl_oracle_report** out);
void pdl_oracle_report_free(pdl_oracle_report* report);

pdl_status pdl_oracle_text(const pdl_oracle_report* report, char** out);
pdl_status pdl_oracle_json(const pdl_oracle_report* report, char** out);
pdl_status pdl_oracle_min_lower_bound(const pdl_oracle_report* report, char** out);
int pdl_oracle_all_exact(const pdl_oracle_report* report);

/* Path table for one fully bound initial state. */
pdl_status pdl_enumerate_paths_text(const pdl_task* task,
                                    const char* const* bind_names,
                                    const char* const* bind_values,
                                    size_t nbinds, unsigned unroll_budget,
                                    char** out);

#ifdef __cplusplus
}
#endif

#endif /* PDL_H */
