#ifndef SURFCERT_H
#define SURFCERT_H

/* C interface to the surface-complement certificate engine.
 *
 * Every function returns an sc_status. On failure sc_last_error() returns a
 * message for the calling thread. Strings returned through char** are owned
 * by the caller and released with sc_string_free. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SC_API __declspec(dllexport)
#else
#define SC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sc_status {
  SC_OK = 0,
  SC_ERR_INVALID_ARGUMENT = 1,
  SC_ERR_OUT_OF_RANGE = 2,
  SC_ERR_PARSE = 3,
  SC_ERR_DATA_MISSING = 4,
  SC_ERR_DATA_CORRUPT = 5,
  SC_ERR_SIZE_CAP = 6,
  SC_ERR_NOT_A_HOMOMORPHISM = 7,
  SC_ERR_COMPLEX_NOT_EXACT = 8,
  SC_ERR_EVIDENCE_INAPPLICABLE = 9,
  SC_ERR_INTERNAL = 100
} sc_status;

typedef enum sc_verdict {
  SC_VERDICT_PASS = 0,
  SC_VERDICT_FAIL = 1,
  SC_VERDICT_INCONCLUSIVE = 2,
  SC_VERDICT_EXTERNAL_ONLY = 3
} sc_verdict;

typedef enum sc_route { SC_ROUTE_HEISENBERG = 0, SC_ROUTE_CYCLIC = 1, SC_ROUTE_TWIST_SPIN = 2 } sc_route;

typedef enum sc_format { SC_FORMAT_JSON = 0, SC_FORMAT_TEXT = 1 } sc_format;

typedef struct sc_certificate sc_certificate;
typedef struct sc_group sc_group;
typedef struct sc_presentation sc_presentation;

/* Zero-initialize, then call sc_verify_config_init for defaults. NULL
 * strings mean "unset". */
typedef struct sc_verify_config {
  sc_route route;
  uint32_t genus;
  int64_t euler_number;
  const char* target;
  uint64_t prime;
  /* 0: mu = z, 1: mu = z^-1. */
  int mu_inverse;
  const char* knot;
  const char* knot_file;
  int64_t d;
  int64_t m;
  uint64_t seed;
  uint64_t search_budget;
  uint64_t coset_budget;
  const char* data_dir;
} sc_verify_config;

SC_API const char* sc_version(void);
SC_API const char* sc_last_error(void);
SC_API void sc_string_free(char* s);
/* SURFACE_CERT_DATA if set, else the build-time data directory. */
SC_API sc_status sc_default_data_dir(char** out);

/* --- Certificates --------------------------------------------------------- */

SC_API void sc_verify_config_init(sc_verify_config* config);
SC_API sc_status sc_verify(const sc_verify_config* config, sc_certificate** out);
SC_API void sc_certificate_free(sc_certificate* c);
SC_API sc_verdict sc_certificate_verdict(const sc_certificate* c);
SC_API int sc_certificate_certified(const sc_certificate* c);
SC_API sc_status sc_certificate_render(const sc_certificate* c, sc_format format, char** out);
/* *ok is 1 when the stored homomorphism checks are reproduced. */
SC_API sc_status sc_certificate_replay(const char* json, const char* data_dir, int* ok, char** detail);

/* --- Homology --------------------------------------------------------------
 * Results are JSON objects with group, degree, structure, free_rank,
 * invariant_factors, method, certified and citation. */

SC_API sc_status sc_homology_cyclic(uint64_t n, int degree, char** json_out);
/* Bar complex homology of a named group: "he3_<p>", "cyclic_<n>", "psl2_<p>"
 * or "mathieu_<name>". */
SC_API sc_status sc_homology_bar(const char* group, int degree, uint64_t size_cap, const char* data_dir,
                                 char** json_out);
/* JSON array of cohomological degrees <= k_max carrying p-torsion. */
SC_API sc_status sc_psl2_torsion_degrees(uint64_t p, int k_max, char** json_out);

/* --- Table ---------------------------------------------------------------- */

/* group == NULL reproduces the whole desk-scale table. */
SC_API sc_status sc_table(const char* group, const char* data_dir, uint64_t seed, sc_format format, char** out);

/* --- Groups ----------------------------------------------------------------
 * Same names as sc_homology_bar. */

SC_API sc_status sc_group_create(const char* name, const char* data_dir, sc_group** out);
SC_API void sc_group_free(sc_group* g);
SC_API sc_status sc_group_order(const sc_group* g, char** decimal_out);
SC_API sc_status sc_group_degree(const sc_group* g, size_t* out);
SC_API sc_status sc_group_is_simple(const sc_group* g, int* out);
/* *found: 1 witness, 0 not found within budget, -1 excluded by Lagrange.
 * description receives the witness or the reason. */
SC_API sc_status sc_group_find_heisenberg(const sc_group* g, uint64_t p, uint64_t seed, uint64_t budget, int* found,
                                          char** description);

/* --- Presentations -------------------------------------------------------- */

SC_API sc_status sc_presentation_parse(const char* text, sc_presentation** out);
/* Circle bundle fundamental group, marked mu = z (or z^-1). */
SC_API sc_status sc_presentation_circle_bundle(uint32_t genus, int64_t euler_number, int mu_inverse,
                                               sc_presentation** out);
SC_API void sc_presentation_free(sc_presentation* p);
SC_API sc_status sc_presentation_serialize(const sc_presentation* p, char** out);
/* JSON object: group structure plus the coordinates of each mark. */
SC_API sc_status sc_presentation_abelianization(const sc_presentation* p, char** json_out);
/* *complete is 0 when the enumeration overflowed max_cosets. */
SC_API sc_status sc_presentation_order(const sc_presentation* p, uint64_t max_cosets, int* complete, uint64_t* order);

#ifdef __cplusplus
}
#endif

#endif
