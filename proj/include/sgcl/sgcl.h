/* C interface to the sgcl library.
 *
 * Every function returns an sgcl_status; on failure sgcl_last_error() gives
 * a message for the calling thread. Strings returned through char** are
 * heap-allocated and must be released with sgcl_string_free. Handles are
 * opaque and released with their *_free function; freeing NULL is a no-op.
 */
#ifndef SGCL_H
#define SGCL_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SGCL_API __declspec(dllexport)
#else
#define SGCL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sgcl_status {
  SGCL_OK = 0,
  SGCL_ERR_SYNTAX = 1,
  SGCL_ERR_UNKNOWN_AGENT = 2,
  SGCL_ERR_SUBSCRIPT_RANGE = 3,
  SGCL_ERR_NOT_RATIONAL = 4,
  SGCL_ERR_OVERFLOW = 5,
  SGCL_ERR_UNKNOWN_STATE = 6,
  SGCL_ERR_FAILURE_STATE = 7,
  SGCL_ERR_BAD_PROFILE = 8,
  SGCL_ERR_SCHEMA = 9,
  SGCL_ERR_INVALID_GAME = 10,
  SGCL_ERR_IO = 11,
  SGCL_ERR_LIMIT = 12,
  SGCL_ERR_ARGUMENT = 13,
  SGCL_ERR_INTERNAL = 14
} sgcl_status;

typedef struct sgcl_formula sgcl_formula;
typedef struct sgcl_game sgcl_game;
typedef struct sgcl_proof sgcl_proof;

SGCL_API const char* sgcl_version(void);
SGCL_API const char* sgcl_last_error(void);
SGCL_API const char* sgcl_status_name(sgcl_status status);
SGCL_API void sgcl_string_free(char* s);

/* Formulas */
SGCL_API sgcl_status sgcl_formula_parse(const char* text, sgcl_formula** out);
SGCL_API sgcl_status sgcl_formula_render(const sgcl_formula* f, char** out);
SGCL_API void sgcl_formula_free(sgcl_formula* f);

/* Games. force != 0 skips validation on load. */
SGCL_API sgcl_status sgcl_game_load(const char* path, int force, sgcl_game** out);
SGCL_API sgcl_status sgcl_game_from_json(const char* text, int force, sgcl_game** out);
SGCL_API sgcl_status sgcl_game_to_json(const sgcl_game* g, char** out);
/* JSON array of {kind, message, state?, profile?}; empty when valid. */
SGCL_API sgcl_status sgcl_game_validate(const sgcl_game* g, char** violations_json);
SGCL_API sgcl_status sgcl_game_fig3(int n, sgcl_game** out);
SGCL_API void sgcl_game_free(sgcl_game* g);

/* Model checking */
SGCL_API sgcl_status sgcl_check(const sgcl_game* g, const char* state, const sgcl_formula* f, int* holds);
/* JSON array of state names. */
SGCL_API sgcl_status sgcl_extent(const sgcl_game* g, const sgcl_formula* f, char** states_json);
/* {"found": bool, "profile": {agent: action} | null, "guaranteed_survival": str | null} */
SGCL_API sgcl_status sgcl_witness(const sgcl_game* g, const char* state, const sgcl_formula* modality,
                                  char** witness_json);
/* pool_json: JSON array of formula strings. */
SGCL_API sgcl_status sgcl_audit_soundness(const sgcl_game* g, const char* pool_json, size_t budget, uint64_t seed,
                                          char** report_json);

/* Proofs */
SGCL_API sgcl_status sgcl_proof_load(const char* path, sgcl_proof** out);
SGCL_API sgcl_status sgcl_proof_from_json(const char* text, const char* base_dir, sgcl_proof** out);
SGCL_API sgcl_status sgcl_proof_to_json(const sgcl_proof* p, char** out);
/* system: "L" or "L+". */
SGCL_API sgcl_status sgcl_proof_set_system(sgcl_proof* p, const char* system);
/* {"ok": bool, "line": int | null (1-based), "reason": str, "conclusion": str | null, "lines": int} */
SGCL_API sgcl_status sgcl_proof_verify(const sgcl_proof* p, char** report_json, int* ok);
SGCL_API void sgcl_proof_free(sgcl_proof* p);

/* Canonical game of closure(seeds). seeds_json: JSON array of formula strings.
 * Report: {game, sidecar, diagnostics, structure, truth_lemma}. clean is set
 * when the game validates, no guard fired and the truth lemma audit is empty. */
SGCL_API sgcl_status sgcl_canonical(const char* seeds_json, const char* system, size_t max_closure,
                                    char** report_json, int* clean);
/* As above; zero_mu_floor != 0 gives rows with mu = 0 a small positive mass
 * on their targets (report "floor" holds it, null otherwise). */
SGCL_API sgcl_status sgcl_canonical_ex(const char* seeds_json, const char* system, size_t max_closure,
                                       int zero_mu_floor, char** report_json, int* clean);

/* Decision procedures. refuted is set for Refuted verdicts. */
SGCL_API sgcl_status sgcl_classify(const sgcl_formula* f, const char* system, size_t max_closure, char** verdict_json,
                                   int* refuted);
/* bounds_json: {"max_states", "max_actions", "agents", "grid": [str], "budget", "seed", "jobs"}; all optional. */
SGCL_API sgcl_status sgcl_bounded_search(const sgcl_formula* f, const char* bounds_json, char** verdict_json,
                                         int* refuted);
SGCL_API sgcl_status sgcl_demo_incompleteness(int n, char** report_json, int* ok);

#ifdef __cplusplus
}
#endif

#endif /* SGCL_H */
