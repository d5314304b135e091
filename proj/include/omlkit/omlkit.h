#ifndef OMLKIT_OMLKIT_H
#define OMLKIT_OMLKIT_H

/*
 * C interface to omlkit: finite lattices and orthomodular lattices, the
 * Kalmbach construction, the Rieger-Nishimura truncations and the Hahn/Keller
 * randomized checks.
 *
 * Conventions
 *   - Every fallible call returns an oml_status; OML_OK is zero.
 *   - On failure, oml_last_error() describes the most recent error on the
 *     calling thread. The pointer stays valid until the next failing call on
 *     that thread.
 *   - Output handles and strings are owned by the caller and released with
 *     the matching *_free function. Freeing NULL is a no-op.
 *   - Handles are immutable once created and may be shared between threads.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(OMLKIT_BUILDING)
#define OMLKIT_API __attribute__((visibility("default")))
#else
#define OMLKIT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum oml_status {
  OML_OK = 0,
  OML_ERR_PARSE = 1,
  OML_ERR_UNKNOWN_NAME = 2,
  OML_ERR_NON_TOTAL_PERP = 3,
  OML_ERR_NOT_A_LATTICE = 4,
  OML_ERR_NO_BOUNDS = 5,
  OML_ERR_CYCLE = 6,
  OML_ERR_NOT_COMPARABLE = 7,
  OML_ERR_NOT_BELOW_JOIN = 8,
  OML_ERR_NOT_ORDER_INVERTING = 9,
  OML_ERR_NOT_INVOLUTIVE = 10,
  OML_ERR_NOT_COMPLEMENT = 11,
  OML_ERR_NOT_OML = 12,
  OML_ERR_NOT_CENTRAL = 13,
  OML_ERR_TOO_LARGE = 14,
  OML_ERR_ROWS_TOO_SMALL = 15,
  OML_ERR_DIVISION_BY_ZERO = 16,
  OML_ERR_DIMENSION_MISMATCH = 17,
  OML_ERR_ZERO_VECTOR = 18,
  OML_ERR_DEPENDENT_INPUT = 19,
  OML_ERR_INVALID_ARGUMENT = 20,
  OML_ERR_INTERNAL = 21,
  OML_ERR_OUT_OF_MEMORY = 22
} oml_status;

/* A lattice document: element names, covers, optional perp map, metadata. */
typedef struct oml_document oml_document;

/* An ordered list of (check, verdict, witness) lines. */
typedef struct oml_report oml_report;

/* Flags for oml_check. */
#define OML_CHECK_KALMBACH 0x1u

OMLKIT_API const char* oml_version(void);
OMLKIT_API const char* oml_status_name(oml_status status);
OMLKIT_API const char* oml_last_error(void);

OMLKIT_API void oml_string_free(char* text);

/* Documents. `text` need not be NUL-terminated. YAML or DOT input. */
OMLKIT_API oml_status oml_document_parse(const char* text, size_t length, oml_document** out);
OMLKIT_API oml_status oml_document_emit(const oml_document* doc, char** out);
OMLKIT_API oml_status oml_document_export_dot(const oml_document* doc, char** out);
OMLKIT_API oml_status oml_document_size(const oml_document* doc, size_t* out);
/* 1 when both documents are equal field by field, else 0. */
OMLKIT_API int oml_document_equal(const oml_document* a, const oml_document* b);
OMLKIT_API void oml_document_free(oml_document* doc);

/* Constructions producing documents. */
OMLKIT_API oml_status oml_kalmbach(const oml_document* base, oml_document** out);
OMLKIT_API oml_status oml_rn_lattice(int rows, oml_document** out);
OMLKIT_API oml_status oml_horizontal_sum(const oml_document* const* summands, size_t count, oml_document** out);
OMLKIT_API oml_status oml_product(const oml_document* const* factors, size_t count, oml_document** out);

/* Reports. */
OMLKIT_API oml_status oml_check(const oml_document* doc, unsigned flags, oml_report** out);
OMLKIT_API oml_status oml_rn_report(int rows, oml_report** out);
OMLKIT_API oml_status oml_keller_report(size_t dim, uint64_t seed, size_t trials, oml_report** out);

OMLKIT_API oml_status oml_report_text(const oml_report* report, char** out);
/* 1 when every boolean line holds, else 0. */
OMLKIT_API int oml_report_all_pass(const oml_report* report);
OMLKIT_API size_t oml_report_line_count(const oml_report* report);
/* Borrowed strings, valid while the report lives. Witness items are joined
   with ", ". Returns OML_ERR_INVALID_ARGUMENT when the index is out of range. */
OMLKIT_API oml_status oml_report_line(const oml_report* report, size_t index, const char** check,
                                      const char** verdict, const char** witness);
OMLKIT_API void oml_report_free(oml_report* report);

#ifdef __cplusplus
}
#endif

#endif /* OMLKIT_OMLKIT_H */
