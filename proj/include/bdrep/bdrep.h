/* C interface to the boundary-representation library.
 *
 * Every function returns a bdrep_status; on failure bdrep_last_error()
 * holds a message for the calling thread.  Strings returned through
 * char** are owned by the caller and released with bdrep_string_free. */
#ifndef BDREP_BDREP_H
#define BDREP_BDREP_H

#include <stddef.h>

#if defined(_WIN32)
#define BDREP_API __declspec(dllexport)
#else
#define BDREP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bdrep_status {
    BDREP_OK = 0,
    BDREP_ERR_VALIDATION = 1, /* malformed input, failed preconditions */
    BDREP_ERR_INVARIANT = 2,  /* a mathematical check failed, or a solver gave up */
    BDREP_ERR_CAP = 3,        /* sphere-size cap exceeded */
    BDREP_ERR_INTERNAL = 4
} bdrep_status;

typedef enum bdrep_backend {
    BDREP_BACKEND_FAST = 0,
    BDREP_BACKEND_BRUTE = 1,
    BDREP_BACKEND_BOTH = 2,
    BDREP_BACKEND_EXACT = 3
} bdrep_backend;

typedef struct bdrep_options {
    double tolerance;        /* residual / check tolerance, default 1e-9 */
    unsigned long long cap;  /* sphere-size cap, at least 1000 */
    unsigned long long seed; /* seed for every randomized check */
    int threads;             /* brute-force sphere sums */
    int backend;             /* bdrep_backend */
    int trials;              /* randomized trials per check */
} bdrep_options;

typedef struct bdrep_system bdrep_system;
typedef struct bdrep_vector bdrep_vector;

BDREP_API void bdrep_options_init(bdrep_options* opts);
BDREP_API const char* bdrep_last_error(void);
BDREP_API const char* bdrep_version(void);
BDREP_API void bdrep_string_free(char* s);

/* Systems.  A system without forms is normalized on first use. */
BDREP_API bdrep_status bdrep_system_load(const char* path, bdrep_system** out);
BDREP_API bdrep_status bdrep_system_parse(const char* json_text, bdrep_system** out);
BDREP_API void bdrep_system_free(bdrep_system* sys);
BDREP_API int bdrep_system_letters(const bdrep_system* sys);
BDREP_API int bdrep_system_dim(const bdrep_system* sys, int letter);
BDREP_API int bdrep_system_has_forms(const bdrep_system* sys);
/* Writes the system with forms if present (unit convention). */
BDREP_API bdrep_status bdrep_system_to_json(const bdrep_system* sys, char** out);
/* One diagnostic per line; BDREP_ERR_VALIDATION when nonempty. */
BDREP_API bdrep_status bdrep_system_validate(const bdrep_system* sys, char** diagnostics);

/* Vectors: {"depth": M, "values": {word: entries}}. */
BDREP_API bdrep_status bdrep_vector_load(const bdrep_system* sys, const char* path, bdrep_vector** out);
BDREP_API bdrep_status bdrep_vector_parse(const bdrep_system* sys, const char* json_text, bdrep_vector** out);
BDREP_API void bdrep_vector_free(bdrep_vector* v);

/* Scales the maps to transfer spectral radius 1; the result carries the
 * fixed-point forms, serialized with total trace 1.  `report` (may be
 * NULL) lists iterations and spectral diagnostics. */
BDREP_API bdrep_status bdrep_normalize(const bdrep_system* sys, const bdrep_options* opts, bdrep_system** out,
                                       double* rho, double* residual, char** report);

/* Radical quotient and splitting into irreducible summands; JSON report
 * with one system per component. */
BDREP_API bdrep_status bdrep_decompose(const bdrep_system* sys, const bdrep_options* opts, char** report_json);

/* <pi(x) f, g> for a word x written in the system's letter names. */
BDREP_API bdrep_status bdrep_coefficient(const bdrep_system* sys, const bdrep_vector* f, const bdrep_vector* g,
                                         const char* word, int backend, const bdrep_options* opts, double* re,
                                         double* im);

/* CSV with one row per word of <pi(x) f, f>, backend from opts. */
BDREP_API bdrep_status bdrep_coefficients_csv(const bdrep_system* sys, const bdrep_vector* f,
                                              const char* const* words, size_t count, const bdrep_options* opts,
                                              char** csv);

/* Induces a system over the Schreier generators of a finite-index
 * subgroup (quotient file) to the whole free group and runs the
 * intertwiner checks.  On BDREP_ERR_INVARIANT the outputs are still set. */
BDREP_API bdrep_status bdrep_induce(const bdrep_system* sub, const char* quotient_path, const bdrep_options* opts,
                                    bdrep_system** out, char** layout_json, char** report);

/* Validates a virtually free datum (file, or NULL / "PSL2Z" for the
 * built-in) and checks coefficients of the induced representation built
 * from `sub`, a system over the standard alphabet of the free basis. */
BDREP_API bdrep_status bdrep_vf_induce(const bdrep_system* sub, const char* datum_path, const bdrep_options* opts,
                                       char** report);

/* Herz majorization for every word of length <= radius; `failures`
 * receives the number of failing rows. */
BDREP_API bdrep_status bdrep_herz_csv(const bdrep_system* sys, const bdrep_vector* v, int radius,
                                      const bdrep_options* opts, char** csv, int* failures);

/* phi(w^n), n = 1..max_power, for the spectral measure of v, or for the
 * uniform measure on the alphabet of sys when v is NULL. */
BDREP_API bdrep_status bdrep_demo_no_hc_csv(const bdrep_system* sys, const bdrep_vector* v, const char* word,
                                            int max_power, const bdrep_options* opts, char** csv);

/* Built-in battery of desk-scale checks. */
BDREP_API bdrep_status bdrep_selftest(const bdrep_options* opts, char** report);

#ifdef __cplusplus
}
#endif

#endif
