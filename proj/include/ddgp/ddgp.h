/* C interface to the DDGP solver library.
 *
 * All functions returning ddgp_status report DDGP_OK on success; on failure
 * ddgp_last_error() returns a thread-local description of what went wrong.
 * Strings returned through char** are owned by the caller and must be
 * released with ddgp_string_free(); handles must be released with their
 * matching *_free function. Handles are immutable after creation and may be
 * shared between threads.
 */

#ifndef DDGP_DDGP_H
#define DDGP_DDGP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32) || defined(__CYGWIN__)
#ifdef DDGP_BUILD
#define DDGP_API __declspec(dllexport)
#else
#define DDGP_API __declspec(dllimport)
#endif
#else
#define DDGP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ddgp_status {
  DDGP_OK = 0,
  DDGP_ERR_ARGUMENT = 1,        /* bad parameter or precondition */
  DDGP_ERR_PARSE = 2,           /* malformed instance text */
  DDGP_ERR_INVALID_SCHEME = 3,  /* discretization conditions violated */
  DDGP_ERR_NO_ORDER = 4,        /* no discretization order exists */
  DDGP_ERR_BUDGET = 5,          /* node budget exhausted */
  DDGP_ERR_UNSATISFIABLE = 6,   /* generator could not meet its target */
  DDGP_ERR_DEGENERATE = 7,      /* degenerate or tangent configuration */
  DDGP_ERR_INTERNAL = 8
} ddgp_status;

DDGP_API const char* ddgp_version(void);
DDGP_API const char* ddgp_last_error(void);
DDGP_API void ddgp_string_free(char* text);

/* ------------------------------------------------------------------ */
/* Instances                                                            */

typedef struct ddgp_instance ddgp_instance;

/* Parses the instance text format (header `dgp <n> <K>`, `e <i> <j> <d>`
 * edges, optional `order` and `cluster` lines, `#` comments). */
DDGP_API ddgp_status ddgp_instance_parse(const char* text, ddgp_instance** out);
DDGP_API ddgp_status ddgp_instance_write(const ddgp_instance* instance,
                                         char** out_text);
DDGP_API void ddgp_instance_free(ddgp_instance* instance);

DDGP_API int ddgp_instance_vertex_count(const ddgp_instance* instance);
DDGP_API int ddgp_instance_dimension(const ddgp_instance* instance);
DDGP_API int ddgp_instance_edge_count(const ddgp_instance* instance);
DDGP_API int ddgp_instance_has_scheme(const ddgp_instance* instance);

/* Searches for a discretization order; dimension <= 0 means the instance's
 * own K. On success *out is a new instance carrying the found scheme. */
DDGP_API ddgp_status ddgp_instance_find_order(const ddgp_instance* instance,
                                              int dimension, uint64_t budget,
                                              ddgp_instance** out);

/* Classification report: validity, class (dmdgp / combinatorial_ddgp / ddgp /
 * not_discretizable), pruning-free flag and edge partition sizes. An
 * instance without a scheme is classified under a derived order. */
DDGP_API ddgp_status ddgp_classify_report_json(const ddgp_instance* instance,
                                               char** out_json);

/* ------------------------------------------------------------------ */
/* Branch-and-Prune enumeration                                         */

typedef struct ddgp_solve_options {
  double tol_trilateration; /* default 1e-9 */
  double tol_prune;         /* relative pruning-edge tolerance, default 1e-6 */
  uint64_t max_nodes;       /* tree-node budget, default 10^7 */
  int collect_all;          /* nonzero: enumerate all solutions (default) */
  int threads;              /* reserved; the search is deterministic */
} ddgp_solve_options;

DDGP_API void ddgp_solve_options_init(ddgp_solve_options* options);

typedef enum ddgp_solve_status {
  DDGP_SOLVE_NO = 0,
  DDGP_SOLVE_YES = 1,
  DDGP_SOLVE_BUDGET_EXCEEDED = 2
} ddgp_solve_status;

typedef struct ddgp_solve_result ddgp_solve_result;

/* Enumerates all incongruent realizations (mirror images distinct, initial
 * clique placed canonically). An instance without a scheme is solved under a
 * derived order; DDGP_ERR_NO_ORDER if none exists. */
DDGP_API ddgp_status ddgp_solve(const ddgp_instance* instance,
                                const ddgp_solve_options* options,
                                ddgp_solve_result** out);
DDGP_API void ddgp_solve_result_free(ddgp_solve_result* result);

DDGP_API ddgp_solve_status ddgp_solve_result_status(const ddgp_solve_result* r);
DDGP_API uint64_t ddgp_solve_result_count(const ddgp_solve_result* r);
DDGP_API int ddgp_solve_result_vertex_count(const ddgp_solve_result* r);
DDGP_API int ddgp_solve_result_dimension(const ddgp_solve_result* r);
/* a_rank: positions found for the vertex at the given 1-based rank that lead
 * to a full realization; 0 for ranks out of range. */
DDGP_API uint64_t ddgp_solve_result_a(const ddgp_solve_result* r, int rank);
DDGP_API uint64_t ddgp_solve_result_nodes(const ddgp_solve_result* r);
DDGP_API uint64_t ddgp_solve_result_width(const ddgp_solve_result* r);
DDGP_API int ddgp_solve_result_depth(const ddgp_solve_result* r);
DDGP_API uint64_t ddgp_solve_result_degenerate_count(const ddgp_solve_result* r);
/* Branch string of solution `index` ("+", "-", "=" per vertex after the
 * initial clique); owned by the result. NULL if out of range. */
DDGP_API const char* ddgp_solve_result_branch(const ddgp_solve_result* r,
                                              uint64_t index);
/* Copies the n*K coordinates of solution `index` row-major into buffer. */
DDGP_API ddgp_status ddgp_solve_result_coords(const ddgp_solve_result* r,
                                              uint64_t index, double* buffer);
/* Max over solutions and edges of the relative distance residual; 0 when
 * there are no solutions. */
DDGP_API double ddgp_solve_result_max_residual(const ddgp_solve_result* r);

DDGP_API ddgp_status ddgp_solve_report_json(const ddgp_solve_result* r,
                                            char** out_json);
/* One CSV row per (solution, vertex): solution,branch,vertex,x1..xK. */
DDGP_API ddgp_status ddgp_solve_csv(const ddgp_solve_result* r, char** out_csv);

/* A-priori count prediction compared against the enumeration, plus the
 * per-rank doubling recurrence check. */
DDGP_API ddgp_status ddgp_count_report_json(const ddgp_instance* instance,
                                            const ddgp_solve_options* options,
                                            char** out_json);

/* Order search report; when out_instance is nonnull and an order is found it
 * receives a new instance carrying the scheme. */
DDGP_API ddgp_status ddgp_order_report_json(const ddgp_instance* instance,
                                            int dimension, uint64_t budget,
                                            char** out_json,
                                            ddgp_instance** out_instance);

/* Max relative residual of the given realization (row-major n*K). */
DDGP_API ddgp_status ddgp_verify(const ddgp_instance* instance,
                                 const double* coords, double* out_max_residual);
DDGP_API ddgp_status ddgp_verify_report_json(const ddgp_instance* instance,
                                             const double* coords, double tol,
                                             char** out_json);

/* ------------------------------------------------------------------ */
/* Instance generation                                                  */

typedef enum ddgp_class_target {
  DDGP_CLASS_DMDGP = 0,
  DDGP_CLASS_COMBINATORIAL = 1,
  DDGP_CLASS_DDGP = 2
} ddgp_class_target;

typedef struct ddgp_generate_options {
  int n;
  int dimension;
  int class_target; /* ddgp_class_target */
  double pruning_edge_prob;
  uint64_t seed;
  double box; /* points sampled uniformly in [-box, box]^K */
} ddgp_generate_options;

DDGP_API void ddgp_generate_options_init(ddgp_generate_options* options);

/* Generates a YES instance of the requested class; equal seeds give
 * bit-identical results. The witness JSON carries the planted realization. */
DDGP_API ddgp_status ddgp_generate(const ddgp_generate_options* options,
                                   ddgp_instance** out_instance,
                                   char** out_witness_json);
/* Report describing the generated instance; paths may be NULL, in which case
 * the instance text and witness are embedded. */
DDGP_API ddgp_status ddgp_generate_report_json(
    const ddgp_generate_options* options, const char* instance_path,
    const char* witness_path, char** out_json);

/* ------------------------------------------------------------------ */
/* Trilateration                                                        */

typedef enum ddgp_trilat_kind {
  DDGP_TRILAT_NO_POSITION = 0,
  DDGP_TRILAT_TWO_POSITIONS = 1,
  DDGP_TRILAT_SINGLE_POSITION = 2,
  DDGP_TRILAT_DEGENERATE = 3
} ddgp_trilat_kind;

/* Intersects K spheres in R^K. base is row-major K*K (one point per row),
 * dist has K entries. For TWO_POSITIONS both output buffers are filled (plus
 * is the root with the larger free coordinate); for SINGLE_POSITION y_plus
 * holds the point. Buffers may be NULL if the caller only wants the kind. */
DDGP_API ddgp_status ddgp_trilaterate(int dimension, const double* base,
                                      const double* dist, double tol,
                                      ddgp_trilat_kind* out_kind, double* y_plus,
                                      double* y_minus);

/* ------------------------------------------------------------------ */
/* Weight-dependence experiment on the five-vertex family               */

DDGP_API void ddgp_analytic_probabilities(double* p0, double* p1, double* p2);

/* Number of positions of vertex 4 that extend to a full realization of the
 * family instance with the given d24, d34 (0, 1 or 2). Tangent or degenerate
 * configurations return DDGP_ERR_DEGENERATE. */
DDGP_API ddgp_status ddgp_family_event(double d24, double d34, double tol,
                                       int* out_event);

typedef enum ddgp_utopia_model {
  DDGP_UTOPIA_INDEPENDENT = 0,
  DDGP_UTOPIA_COUPLED = 1
} ddgp_utopia_model;

typedef struct ddgp_utopia_options {
  uint64_t samples;
  uint64_t seed;
  int model; /* ddgp_utopia_model */
  double tol;
  int threads; /* sample substreams make results thread-count independent */
} ddgp_utopia_options;

DDGP_API void ddgp_utopia_options_init(ddgp_utopia_options* options);

DDGP_API ddgp_status ddgp_utopia_report_json(const ddgp_utopia_options* options,
                                             char** out_json);
/* One CSV row per sample: sample,d24,d34,event. */
DDGP_API ddgp_status ddgp_utopia_csv(const ddgp_utopia_options* options,
                                     char** out_csv);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* DDGP_DDGP_H */
