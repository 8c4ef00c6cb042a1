/* Compiled as C to keep the public header C-clean. */
#include "aqrm/aqrm.h"

#include <math.h>
#include <stdio.h>

int main(void) {
    aqrm_model* model = NULL;
    aqrm_low_spectrum ls;
    aqrm_status st = aqrm_model_create_gs(0.1, 1.0, 0.0, 0.0, 0, &model);
    if (st != AQRM_OK) {
        fprintf(stderr, "create: %s\n", aqrm_last_error());
        return 1;
    }
    st = aqrm_low_spectrum_compute(model, &ls);
    aqrm_model_destroy(model);
    if (st != AQRM_OK || fabs(ls.e0 + 0.5) > 1e-12 || fabs(ls.gap - 0.1) > 1e-12) {
        fprintf(stderr, "unexpected spectrum\n");
        return 1;
    }
    printf("aqrm %s ok\n", aqrm_version());
    return 0;
}
