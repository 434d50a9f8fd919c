/* Annular representations of domain walls in the Z/p toric code.
 *
 * All results are returned as owned result handles holding a JSON document
 * and a text rendering. Strings passed in are UTF-8, NUL terminated. On a
 * nonzero status the out parameter is left NULL and annulus_last_error()
 * describes the failure (per thread).
 */
#ifndef ANNULUS_ANNULUS_H
#define ANNULUS_ANNULUS_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define ANNULUS_API __declspec(dllexport)
#else
#define ANNULUS_API __attribute__((visibility("default")))
#endif

typedef struct annulus_engine annulus_engine;
typedef struct annulus_result annulus_result;

typedef enum annulus_status {
  ANNULUS_OK = 0,
  ANNULUS_INVALID_ARGUMENT = 1,
  ANNULUS_PARSE_ERROR = 2,
  ANNULUS_WALL_MISMATCH = 3,
  ANNULUS_UNSUPPORTED = 4,
  ANNULUS_SIZE_LIMIT = 5,
  ANNULUS_NOT_INVERTIBLE = 6,
  ANNULUS_IO_ERROR = 7,
  ANNULUS_INTERNAL = 8
} annulus_status;

ANNULUS_API const char* annulus_version(void);
ANNULUS_API const char* annulus_status_name(annulus_status s);
ANNULUS_API const char* annulus_last_error(void);

/* p must be prime. */
ANNULUS_API annulus_status annulus_engine_create(int p, annulus_engine** out);
ANNULUS_API void annulus_engine_destroy(annulus_engine* e);
ANNULUS_API int annulus_engine_p(const annulus_engine* e);

/* Decompose the quotient representation of a structure document. The
 * document's "p" must agree with the engine. */
ANNULUS_API annulus_status annulus_decompose(annulus_engine* e, const char* structure_json,
                                             annulus_result** out);

/* Defects by canonical name, e.g. "RFr(x=1;r=2)". */
ANNULUS_API annulus_status annulus_fuse_vertical(annulus_engine* e, const char* below,
                                                 const char* above, annulus_result** out);
/* mu / nu may be NULL: the corner is then enumerated over Z/p. */
ANNULUS_API annulus_status annulus_fuse_horizontal(annulus_engine* e, const char* left,
                                                   const char* right, const int* mu,
                                                   const int* nu, annulus_result** out);
/* Walls by name, e.g. "T", "F0", "Fq:2", "Xk:1". */
ANNULUS_API annulus_status annulus_associator(annulus_engine* e, const char* m, const char* n,
                                              const char* p_wall, annulus_result** out);

/* kind: "associator", "vertical" or "horizontal". */
ANNULUS_API annulus_status annulus_table(annulus_engine* e, const char* kind,
                                         annulus_result** out);
/* Generate the associator table and compare it with a golden document. The
 * result JSON is {"matches": bool, "differences": [...]}. */
ANNULUS_API annulus_status annulus_compare_golden(annulus_engine* e, const char* golden_json,
                                                  annulus_result** out);

/* Lattice model analysis of a patch document. A "p" in the document must
 * agree with the engine. */
ANNULUS_API annulus_status annulus_lw_analyze(annulus_engine* e, const char* patch_json,
                                              annulus_result** out);

ANNULUS_API const char* annulus_result_json(const annulus_result* r);
ANNULUS_API const char* annulus_result_text(const annulus_result* r);
ANNULUS_API void annulus_result_destroy(annulus_result* r);

#ifdef __cplusplus
}
#endif

#endif
