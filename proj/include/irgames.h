/* C API for the imperfect-recall games library.
 *
 * All functions return a status code (IRG_*); every out-parameter string is
 * heap-allocated and must be released with irg_free. Handles are opaque and
 * released with the matching *_release function. Passing NULL for an out
 * parameter skips that output.
 */
#ifndef IRGAMES_H
#define IRGAMES_H

#ifdef __cplusplus
extern "C" {
#endif

#define IRG_OK 0           /* success / verification passed */
#define IRG_VERIFY_FAIL 1  /* ran fine, but the checked property does not hold */
#define IRG_USAGE 2        /* malformed call (NULL handle, unknown enum name) */
#define IRG_INPUT_ERROR 3  /* unparsable or invalid input data */
#define IRG_BUDGET 4       /* node or iteration budget exhausted */

typedef struct irg_game irg_game;
typedef struct irg_strategy irg_strategy;

const char* irg_version(void);
void irg_free(char* text);

/* Games ------------------------------------------------------------------ */
int irg_game_from_text(const char* text, irg_game** out_game, char** out_error);
int irg_game_builtin(const char* name, irg_game** out_game, char** out_error);
int irg_game_to_text(const irg_game* game, char** out_text);
/* Validation report; IRG_VERIFY_FAIL when invariants are violated. */
int irg_game_validate(const irg_game* game, char** out_report);
void irg_game_release(irg_game* game);
/* Newline-separated list of built-in game names. */
int irg_builtin_names(char** out_names);

/* Strategies --------------------------------------------------------------- */
int irg_strategy_from_text(const irg_game* game, const char* text,
                           irg_strategy** out_strategy, char** out_warnings,
                           char** out_error);
int irg_strategy_to_text(const irg_game* game, const irg_strategy* strategy,
                         char** out_text);
void irg_strategy_release(irg_strategy* strategy);

/* Operations. Reports are line-oriented "key: value" text. ------------------- */
int irg_eval(const irg_game* game, const irg_strategy* strategy, char** out_report,
             char** out_error);
int irg_poly(const irg_game* game, char** out_report, char** out_error);
/* Exact gradient field on the strategy lattice at the given resolution. */
int irg_gradient_grid(const irg_game* game, int resolution, const char* options,
                      char** out_report, char** out_error);
/* system: "gt" | "gdh" */
int irg_beliefs(const irg_game* game, const irg_strategy* strategy,
                const char* infoset_label, const char* system, char** out_report,
                char** out_error);
/* method: "kkt" | "exante" | "edt-dynamics"; options: "key=value ..." with keys
 * seed, max-iters, tol, restarts, grid, grid-seed, budget, eta, pure-cap. */
int irg_solve(const irg_game* game, const char* method, const char* options,
              char** out_report, char** out_error);
/* kind: "cdt" | "cdt-ws" | "edt"; epsilon: rational or decimal literal.
 * IRG_OK = verified, IRG_VERIFY_FAIL = gaps above epsilon. */
int irg_verify(const irg_game* game, const irg_strategy* strategy, const char* kind,
               const char* epsilon, const char* options, char** out_report,
               char** out_error);
/* KKT certificate at the given tolerance; IRG_VERIFY_FAIL when invalid. */
int irg_certify(const irg_game* game, const irg_strategy* strategy, const char* epsilon,
                char** out_report, char** out_error);
/* kind: "sat" | "common-payoff" | "kkt-cube" | "polytensor" | "polytensor-1is".
 * source_text is in the matching input format (DIMACS, irfamily, irpolytensor,
 * irpoly). Emits the self-contained reduction envelope. */
int irg_reduce(const char* kind, const char* source_text, const char* epsilon,
               char** out_text, char** out_error);
/* reduction_text: an irreduction envelope; solution_text: a strategy for the
 * embedded game. IRG_VERIFY_FAIL when the recovered object fails validation. */
int irg_recover(const char* reduction_text, const char* solution_text,
                char** out_report, char** out_error);
/* query: "exante" | "cdt_eq_value" | "edt_eq_value" | "infoset_eu_cdt" |
 * "infoset_eu_edt"; infoset_label may be NULL for the first three.
 * IRG_OK = yes, IRG_VERIFY_FAIL = no-evidence, IRG_BUDGET = inconclusive. */
int irg_decide(const irg_game* game, const char* query, const char* infoset_label,
               const char* target, const char* epsilon, const char* options,
               char** out_report, char** out_error);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* IRGAMES_H */
