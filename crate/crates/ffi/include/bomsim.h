/* C interface to the bomsim Brillouin optomechanics library. */

#ifndef BOMSIM_H
#define BOMSIM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum BomStatus {
  BomStatus_Ok = 0,
  BomStatus_NullPointer = 1,
  BomStatus_InvalidParams = 2,
  BomStatus_SingularSystem = 3,
  BomStatus_Panic = 4,
} BomStatus;

/**
 * Port pair selector for single-cavity bandwidths.
 */
typedef enum BomPortPair {
  BomPortPair_Ports12 = 12,
  BomPortPair_Ports13 = 13,
} BomPortPair;

/**
 * Which tail of the directional ratio a bandwidth refers to.
 */
typedef enum BomDirection {
  BomDirection_Forward = 0,
  BomDirection_Reverse = 1,
} BomDirection;

/**
 * Assembled array, ready for frequency solves. Opaque; create with
 * `bom_lattice_new`, release with `bom_lattice_free`.
 */
typedef struct BomLattice BomLattice;

/**
 * Single-cavity parameters; rates in units of `kappa_a`.
 */
typedef struct BomSingleCavityParams {
  double kappa_a;
  double kappa_c;
  double g;
} BomSingleCavityParams;

/**
 * Complex number as a plain pair.
 */
typedef struct BomComplex {
  double re;
  double im;
} BomComplex;

/**
 * The six scattering amplitudes of the four-port cavity at one detuning
 * (`s34 = s21` and `s24 = s31` are implied).
 */
typedef struct BomScatteringCoeffs {
  struct BomComplex s12;
  struct BomComplex s21;
  struct BomComplex s13;
  struct BomComplex s31;
  struct BomComplex s2c;
  struct BomComplex s3c;
} BomScatteringCoeffs;

/**
 * Array parameters; rates in units of `kappa_a`.
 */
typedef struct BomLatticeParams {
  uint32_t cells;
  double v;
  double g;
  struct BomComplex g_s;
  double j_a;
  double j_b;
  double j_c;
  double kappa_a;
  double kappa_b;
  double kappa_c;
} BomLatticeParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *bom_version(void);

/**
 * Copies the last error message of this thread into `buf` (truncated to
 * `cap - 1` bytes, always NUL-terminated when `cap > 0`) and returns the
 * full message length in bytes.
 *
 * # Safety
 * `buf` must point to at least `cap` writable bytes, or be NULL with
 * `cap == 0` to query the length alone.
 */
size_t bom_last_error_message(char *buf, size_t cap);

/**
 * Evaluates the closed-form four-port scattering coefficients.
 *
 * # Safety
 * `params` and `out` must be valid, properly aligned pointers.
 */
enum BomStatus bom_single_cavity_coeffs(const struct BomSingleCavityParams *params,
                                        double omega,
                                        struct BomScatteringCoeffs *out);

/**
 * Bandwidth of the contiguous interval around zero detuning on which the
 * directional ratio exceeds `threshold_db` (forward) or stays below its
 * negative (reverse).
 *
 * # Safety
 * `params` and `out_width` must be valid pointers.
 */
enum BomStatus bom_single_cavity_bandwidth(const struct BomSingleCavityParams *params,
                                           double threshold_db,
                                           enum BomPortPair pair,
                                           enum BomDirection direction,
                                           double *out_width);

/**
 * Builds the array's dynamical matrix and returns an owned handle.
 *
 * # Safety
 * `params` and `out` must be valid pointers; the handle written to `out`
 * must be released with `bom_lattice_free`.
 */
enum BomStatus bom_lattice_new(const struct BomLatticeParams *params, struct BomLattice **out);

/**
 * Releases a handle created by `bom_lattice_new`. NULL is a no-op.
 *
 * # Safety
 * `lattice` must be a pointer previously returned by `bom_lattice_new`,
 * not yet freed.
 */
void bom_lattice_free(struct BomLattice *lattice);

/**
 * Number of modes (`6 N`) in the dynamical system, 0 for NULL.
 *
 * # Safety
 * `lattice` must be a live handle or NULL.
 */
size_t bom_lattice_mode_count(const struct BomLattice *lattice);

/**
 * Port transmissions `T31` (forward) and `T13` (backward) at one
 * frequency.
 *
 * # Safety
 * All pointers must be valid; `lattice` must be a live handle.
 */
enum BomStatus bom_lattice_transmissions(const struct BomLattice *lattice,
                                         double omega,
                                         double *out_t31,
                                         double *out_t13);

/**
 * Fills `out_t31`, `out_t13` and optionally `out_isolation_db` (may be
 * NULL) for `len` frequencies.
 *
 * # Safety
 * `omega`, `out_t31`, `out_t13` must point to `len` elements;
 * `out_isolation_db` must be NULL or point to `len` elements.
 */
enum BomStatus bom_lattice_spectrum(const struct BomLattice *lattice,
                                    const double *omega,
                                    size_t len,
                                    double *out_t31,
                                    double *out_t13,
                                    double *out_isolation_db);

/**
 * Largest deviation of `U(omega)` from unitarity.
 *
 * # Safety
 * `lattice` must be a live handle and `out_defect` a valid pointer.
 */
enum BomStatus bom_lattice_unitarity_defect(const struct BomLattice *lattice,
                                            double omega,
                                            double *out_defect);

/**
 * Six sorted Bloch eigenvalues per wavenumber, written row-major into
 * `out_levels` (`6 * len` values).
 *
 * # Safety
 * `k` must point to `len` elements, `out_levels` to `6 * len` elements.
 */
enum BomStatus bom_bloch_bands(const struct BomLatticeParams *params,
                               const double *k,
                               size_t len,
                               double *out_levels);

/**
 * Isolation bandwidth of the array at a signed threshold; writes the
 * interval edges and width (all zero when the criterion fails at the
 * band center).
 *
 * # Safety
 * All pointers must be valid.
 */
enum BomStatus bom_isolation_bandwidth(const struct BomLatticeParams *params,
                                       double threshold_db,
                                       double *out_lo,
                                       double *out_hi,
                                       double *out_width);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BOMSIM_H */
