#include <stdio.h>
#include <string.h>
#include "curvelab.h"

#define CHECK(cond)                                              \
    do {                                                         \
        if (!(cond)) {                                           \
            const char *msg = curvelab_last_error();             \
            fprintf(stderr, "line %d: %s\n", __LINE__, msg ? msg : ""); \
            return 1;                                            \
        }                                                        \
    } while (0)

int main(void) {
    CurvelabCurve *a = NULL, *b = NULL, *t = NULL;
    CHECK(curvelab_curve_parse(1, 1, "a", &a) == CURVELAB_STATUS_OK);
    CHECK(curvelab_curve_parse(1, 1, "b", &b) == CURVELAB_STATUS_OK);
    CHECK(curvelab_curve_twist(a, b, -2, &t) == CURVELAB_STATUS_OK);
    uint64_t i = 0;
    CHECK(curvelab_curve_intersection(t, a, &i) == CURVELAB_STATUS_OK && i == 2);
    CHECK(curvelab_curve_parse(7, 7, "a", &a) == CURVELAB_STATUS_UNSUPPORTED_SURFACE);
    CHECK(strlen(curvelab_last_error()) > 0);

    CurvelabSnapshot *snap = NULL;
    CHECK(curvelab_snapshot_build(CURVELAB_KIND_CURVE, 1, 1, 4, 2, NULL, &snap) == CURVELAB_STATUS_OK);
    size_t n = curvelab_snapshot_len(snap);
    char *digest = curvelab_snapshot_digest(snap);
    CHECK(digest != NULL && strlen(digest) == 64);
    printf("%zu %s\n", n, digest);

    curvelab_string_free(digest);
    curvelab_snapshot_free(snap);
    curvelab_curve_free(a);
    curvelab_curve_free(b);
    curvelab_curve_free(t);
    return 0;
}
