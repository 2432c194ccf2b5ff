#ifndef SFOM_SFOM_H
#define SFOM_SFOM_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(SFOM_BUILDING_LIBRARY)
#define SFOM_API __attribute__((visibility("default")))
#else
#define SFOM_API
#endif

typedef enum sfom_status {
  SFOM_OK = 0,
  SFOM_ERR_INTERNAL = 1,
  SFOM_ERR_MALFORMED = 2,
  SFOM_ERR_REDUCIBLE = 3,
  SFOM_ERR_NOT_SUPPORTED = 4,
  SFOM_ERR_MODULUS_SPLIT = 5
} sfom_status;

/* Monic integer polynomial. */
typedef struct sfom_poly sfom_poly;

typedef struct sfom_options {
  const char* disc;          /* discriminant override (decimal), or NULL */
  const char* known_primes;  /* comma-separated primes for verify, or NULL */
  unsigned long seed;
  unsigned threads;
  int merged_only;
} sfom_options;

SFOM_API void sfom_options_init(sfom_options* opt);

/* Comma-separated coefficients, constant term first. */
SFOM_API sfom_status sfom_poly_parse(const char* text, sfom_poly** out);
SFOM_API void sfom_poly_free(sfom_poly* f);
SFOM_API int sfom_poly_degree(const sfom_poly* f);

/* SFOM_ERR_REDUCIBLE if f has a proper factor over Z; the factor is written to *factor when non-NULL. */
SFOM_API sfom_status sfom_poly_check_irreducible(const sfom_poly* f, unsigned long seed, char** factor);

/* Results are heap strings released with sfom_string_free. */
SFOM_API sfom_status sfom_basis_json(const sfom_poly* f, const sfom_options* opt, char** out);
/* SF-OM tree for the modulus N, or the classical tree at a prime when prime != 0. */
SFOM_API sfom_status sfom_tree_json(const sfom_poly* f, const char* modulus, int prime, unsigned long seed, char** out);
/* Newton polygon of a leaf at the given level (>= 1), as text or SVG. */
SFOM_API sfom_status sfom_polygon(const sfom_poly* f, const char* modulus, int level, int leaf, int svg, char** out);
SFOM_API sfom_status sfom_verify_json(const sfom_poly* f, const sfom_options* opt, char** out);

SFOM_API void sfom_string_free(char* s);
/* Message for the last failing call on this thread. */
SFOM_API const char* sfom_last_error(void);

#ifdef __cplusplus
}
#endif

#endif
