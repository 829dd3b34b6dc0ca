#include <stdio.h>
#include <string.h>
#include "binodet.h"

int main(void) {
    BinodetReport *r = NULL;
    if (binodet_compute_str("3,3,3", "2,2,1", &r) != BINODET_STATUS_OK) return 10;
    char *partial = NULL;
    if (binodet_report_partial(r, 2, &partial) != BINODET_STATUS_OK) return 11;
    int bad = strcmp(partial, "12") != 0;
    binodet_string_free(partial);
    binodet_report_free(r);
    if (bad) return 12;
    if (binodet_compute_str("3,x", "1", &r) != BINODET_STATUS_INVALID_INPUT) return 13;
    if (binodet_last_error() == NULL) return 14;
    printf("ok\n");
    return 0;
}
