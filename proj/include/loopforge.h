/* C interface to loopforge. Every call returns an lf_status; on failure the
 * message is available from lf_last_error() on the same thread. Strings
 * returned through char** are owned by the caller and released with
 * lf_string_free. Results are JSON documents with exact rationals as strings. */
#ifndef LOOPFORGE_H
#define LOOPFORGE_H

#include <stddef.h>

#if defined(_WIN32)
#  define LF_API __declspec(dllexport)
#elif defined(__GNUC__)
#  define LF_API __attribute__((visibility("default")))
#else
#  define LF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lf_status {
    LF_OK = 0,
    LF_E_INVALID_INPUT = 1,
    LF_E_DIMENSION_MISMATCH = 2,
    LF_E_DEGREE_MISMATCH = 3,
    LF_E_COMPOSITION_NOT_ZERO = 4,
    LF_E_MALFORMED_GRAPH = 5,
    LF_E_DISCONNECTED = 6,
    LF_E_NON_INTEGRAL_GENUS = 7,
    LF_E_INVALID_CHORD_DIAGRAM = 8,
    LF_E_INDEX_OUT_OF_RANGE = 9,
    LF_E_ARITY_MISMATCH = 10,
    LF_E_UNASSIGNED_GENERATOR = 11,
    LF_E_INVALID_GROUP = 12,
    LF_E_SIZE_GUARD = 13,
    LF_E_WIRING_MISMATCH = 14,
    LF_E_TRUNCATION_TOO_SMALL = 15,
    LF_E_NOT_AN_ALGEBRA = 16,
    LF_E_MISSING_OPERATOR = 17,
    LF_E_MALFORMED_CACTUS = 18,
    LF_E_PARSE = 19,
    LF_E_NULL_ARGUMENT = 100,
    LF_E_INTERNAL = 101
} lf_status;

typedef struct lf_fatgraph lf_fatgraph;
typedef struct lf_algebra lf_algebra; /* an algebra document; read as needed by each call */
typedef struct lf_group lf_group;
typedef struct lf_cactus lf_cactus;

LF_API const char* lf_version(void);
LF_API const char* lf_status_name(lf_status status);
LF_API const char* lf_last_error(void);
LF_API void lf_string_free(char* s);

/* ---- fat graphs */
/* strict_valence != 0 rejects vertices of valence < 3. */
LF_API lf_status lf_fatgraph_from_json(const char* json, int strict_valence, lf_fatgraph** out);
LF_API void lf_fatgraph_free(lf_fatgraph* g);
/* Boundary cycles, chi, genus. With incoming != NULL the graph is also read as a
 * chord diagram with those (0-based) incoming boundary cycles and reduced. */
LF_API lf_status lf_fatgraph_analyze(const lf_fatgraph* g, const size_t* incoming, size_t n_incoming,
                                     char** out_json);

/* ---- algebra documents (structure constants) */
LF_API lf_status lf_algebra_from_json(const char* json, lf_algebra** out);
LF_API void lf_algebra_free(lf_algebra* a);

/* ---- 2D TQFT */
LF_API lf_status lf_group_builtin(const char* name, lf_group** out);
LF_API lf_status lf_group_from_json(const char* json, lf_group** out);
LF_API void lf_group_free(lf_group* g);
/* The algebra needs "dot", "unit" and "trace"; word_json is {"layers": ...} or {"word": ...}. */
LF_API lf_status lf_tqft_eval(const lf_algebra* a, const char* word_json, char** out_json);
LF_API lf_status lf_tqft_surface(const lf_algebra* a, unsigned genus, char** out_json);
/* Closed-surface invariant of the center algebra, with the bundle-counting cross-check. */
LF_API lf_status lf_tqft_dw(const lf_group* g, unsigned genus, char** out_json);

/* ---- Hochschild (co)homology with coefficients in the algebra itself */
typedef struct lf_hochschild_options {
    int cohomology;       /* 0: homology, else cohomology */
    int lo, hi;           /* total-degree window */
    unsigned truncation;  /* maximal tensor length */
    int cup;              /* cohomology only: cup table on cohomology bases, arities <= hi */
    int bracket;          /* cohomology only: Gerstenhaber bracket table */
} lf_hochschild_options;
LF_API lf_status lf_hochschild(const lf_algebra* a, const lf_hochschild_options* opt, char** out_json);

/* ---- checkers; *passed receives 1 when every clause holds */
/* preset: comm | ass | lie | poisson. dot_op / bracket_op name the operations
 * of the document standing for the generators "dot" and "bracket" (NULL: same name). */
LF_API lf_status lf_check_operad(const char* preset, const lf_algebra* a, const char* dot_op, const char* bracket_op,
                                 int* passed, char** out_json);
/* convention: "gbv" or "sw" (NULL: gbv). n = 0 runs the BV checks on operator
 * "delta" plus the Gerstenhaber checks of its bracket; n >= 1 runs BV_{n+1}. */
LF_API lf_status lf_check_gbv(const lf_algebra* a, const char* convention, int n, int* passed, char** out_json);

/* ---- cacti */
LF_API lf_status lf_cactus_from_json(const char* json, lf_cactus** out);
LF_API void lf_cactus_free(lf_cactus* c);
LF_API lf_status lf_cactus_lobes(const lf_cactus* c, size_t* out);
/* Canonical form. */
LF_API lf_status lf_cactus_to_json(const lf_cactus* c, char** out_json);
LF_API lf_status lf_cactus_trace(const lf_cactus* c, char** out_json);
/* i is 1-based. */
LF_API lf_status lf_cactus_compose(const lf_cactus* c1, unsigned i, const lf_cactus* c2, lf_cactus** out);
LF_API lf_status lf_cactus_equal(const lf_cactus* a, const lf_cactus* b, int* equal);

#ifdef __cplusplus
}
#endif

#endif
