/* Compiles the public header as C and exercises a few calls. */
#include <math.h>
#include <stdio.h>

#include "qudisc/qudisc.h"

int main(void) {
  qd_dimensions t;
  qd_regime_result r;
  qd_interferometer* net = NULL;
  size_t layers = 0;
  double v = 0.0;

  if (qd_dimension_table(2, &t) != QD_OK || t.dim_s3 != 8) return 1;
  if (qd_optimal_average(2, 0.5, &r) != QD_OK || fabs(r.value - 1.0 / 6.0) > 1e-12) return 1;
  if (qd_success_curve_x(7.0, 0.5, &v) != QD_ERR_DOMAIN) return 1;
  if (qd_discriminator_network(0.5, &net) != QD_OK) return 1;
  if (qd_interferometer_num_layers(net, &layers) != QD_OK || layers != 2) return 1;
  qd_interferometer_free(net);
  printf("c api ok (%s)\n", qd_version());
  return 0;
}
