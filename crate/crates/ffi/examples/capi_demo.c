/* Minimal C consumer: builds the reference ten-cell array, prints the
 * transmissions at three probe detunings and the -50 dB isolation band.
 *
 * Build (from the workspace root, after `cargo build --release`):
 *   cc crates/ffi/examples/capi_demo.c -Icrates/ffi/include \
 *      -Ltarget/release -lbomsim_ffi -lm -o capi_demo
 */

#include <stdio.h>

#include "bomsim.h"

static int check(BomStatus status, const char *what) {
  if (status != BomStatus_Ok) {
    char message[256];
    bom_last_error_message(message, sizeof message);
    fprintf(stderr, "%s failed (%d): %s\n", what, (int)status, message);
    return 1;
  }
  return 0;
}

int main(void) {
  printf("bomsim %s\n", bom_version());

  BomLatticeParams params = {
      .cells = 10,
      .v = 10.0,
      .g = 20.0,
      .g_s = {0.0, 0.0},
      .j_a = 0.0,
      .j_b = 0.0,
      .j_c = 0.0,
      .kappa_a = 1.0,
      .kappa_b = 1.0,
      .kappa_c = 0.01,
  };

  BomLattice *lattice = NULL;
  if (check(bom_lattice_new(&params, &lattice), "bom_lattice_new")) return 1;

  const double omegas[] = {0.0, 5.0, 10.0};
  for (size_t i = 0; i < 3; i++) {
    double t31 = 0.0, t13 = 0.0;
    if (check(bom_lattice_transmissions(lattice, omegas[i], &t31, &t13),
              "bom_lattice_transmissions"))
      return 1;
    printf("omega = %5.1f: T31 = %.3e, T13 = %.3e\n", omegas[i], t31, t13);
  }
  bom_lattice_free(lattice);

  double lo = 0.0, hi = 0.0, width = 0.0;
  if (check(bom_isolation_bandwidth(&params, -50.0, &lo, &hi, &width),
            "bom_isolation_bandwidth"))
    return 1;
  printf("-50 dB isolation band: [%.2f, %.2f], width %.2f\n", lo, hi, width);
  return 0;
}
