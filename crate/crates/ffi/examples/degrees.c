#include <stdio.h>
#include "offdeg.h"

int main(int argc, char **argv) {
    const char *poly = argc > 1 ? argv[1] : "y1^2+y2^2-r^2";
    const char *params = argc > 2 ? argv[2] : "r=5";
    OffdegCurve *curve = NULL;
    OffdegStatus st = offdeg_curve_new(poly, params, false, &curve);
    if (st != OFFDEG_STATUS_OK) {
        fprintf(stderr, "error %d: %s\n", (int)st, offdeg_last_error());
        return (int)st;
    }
    OffdegDegrees deg;
    st = offdeg_curve_degrees(curve, OFFDEG_RESULTANT_SUBRESULTANT, &deg);
    if (st == OFFDEG_STATUS_OK) {
        printf("delta1 %u delta2 %u", deg.delta1, deg.delta2);
        if (deg.has_delta_d) {
            printf(" delta_d %u", deg.delta_d);
        }
        printf("\n");
    } else {
        fprintf(stderr, "error %d: %s\n", (int)st, offdeg_last_error());
    }
    offdeg_curve_free(curve);
    return (int)st;
}
