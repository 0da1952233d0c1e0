/* C interface for librocalc_ffi: exact RO(G)-graded coefficient groups of
 * ordinary equivariant mod-2 cohomology for G = (Z/2)^n.
 *
 * Status codes (int returns): 0 success, 1 verification failed (verify
 * only), 2 invalid argument, 3 size limit exceeded, 4 internal error.
 * Strings returned through out parameters are owned by the caller and must
 * be released with ro_string_free; computation handles with ro_compute_free.
 */

#ifndef ROCALC_H
#define ROCALC_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define RO_OK 0
#define RO_VERIFY_FAILED 1
#define RO_INVALID_ARGUMENT 2
#define RO_SIZE_LIMIT 3
#define RO_INTERNAL 4

/* Opaque handle around one finished computation. */
typedef struct RoComputation RoComputation;

/* Computes coefficient dimensions for G = (Z/2)^n in integer degrees
 * [t_min, t_max]. m_spec lists character multiplicities as
 * "101:2,011:-1" (bit-string characters, leftmost bit = coordinate 1);
 * NULL or "" means all multiplicities zero. On success *out receives a
 * handle. Guards: n <= 4, |t| <= 64, |multiplicity| <= 32. */
int ro_compute_new(uint8_t n, const char *m_spec, int64_t t_min,
                   int64_t t_max, RoComputation **out);

/* Total dimension at degree t; -1 if t is outside the computed range or
 * the handle is NULL. */
int64_t ro_compute_total(const RoComputation *h, int64_t t);

/* Serializes the computation as a JSON array of rows
 * {"t": ..., "total": ..., "by_filtration": {"0": ..., "-1": ...}}. */
int ro_compute_json(const RoComputation *h, char **out);

/* Releases a computation handle. NULL is a no-op. */
void ro_compute_free(RoComputation *h);

/* Poincare series of the degree-wise fixed-point ring, as JSON
 * {"num": {"degree": coeff, ...}, "denom_pow": e} meaning
 * num / (1-x)^denom_pow. Guards: 1 <= n <= 8. */
int ro_series_phi_json(uint8_t n, char **out);

/* Runs a named verification suite (positive-cone, negative-cone,
 * quadrants, gap-remark, tensor, splitting, d2zero, euler, l1):
 * RO_OK on pass, RO_VERIFY_FAILED on failure, RO_INVALID_ARGUMENT if the
 * suite name is unknown. */
int ro_verify_suite(const char *name, uint8_t n);

/* Releases a string returned by this library. NULL is a no-op. */
void ro_string_free(char *s);

#ifdef __cplusplus
}
#endif

#endif /* ROCALC_H */
