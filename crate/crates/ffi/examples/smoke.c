#include <stdio.h>
#include <string.h>

#include "zamen.h"

int main(void) {
    ZamenGroup *g = NULL;
    ZamenTable *t = NULL;
    ZamenAm am;
    if (zamen_group_from_fixture("s3", &g) != ZAMEN_STATUS_OK) {
        fprintf(stderr, "group: %s\n", zamen_last_error());
        return 1;
    }
    if (zamen_table_new(g, &t) != ZAMEN_STATUS_OK) {
        fprintf(stderr, "table: %s\n", zamen_last_error());
        return 1;
    }
    if (zamen_am_constant(t, &am) != ZAMEN_STATUS_OK || !am.snapped) {
        return 1;
    }
    printf("%s %lld/%lld %.12f\n", zamen_version(), (long long)am.numer, (long long)am.denom, am.value);

    ZamenGroup *bad = NULL;
    ZamenStatus st = zamen_group_from_json("{\"version\": 1}", &bad);
    if (st != ZAMEN_STATUS_INVALID_INPUT || bad != NULL || zamen_last_error() == NULL) {
        return 1;
    }
    zamen_table_free(t);
    zamen_group_free(g);
    return 0;
}
