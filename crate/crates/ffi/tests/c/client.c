#include <math.h>
#include <stdio.h>
#include <string.h>

#include "rss_stl.h"

#define CHECK(cond)                                                  \
    do {                                                             \
        if (!(cond)) {                                               \
            fprintf(stderr, "line %d: %s\n", __LINE__, #cond);       \
            return 1;                                                \
        }                                                            \
    } while (0)

int main(void) {
    RssStlTrace *t = NULL;
    RssStlFormula *f = NULL;
    const double x[] = {1.0, 3.0, 2.0};
    double r = 0.0;
    RssStlBlame b;
    char atom[8];

    CHECK(rss_stl_trace_new(0.1, &t) == RSS_STL_STATUS_OK);
    CHECK(rss_stl_trace_push_channel(t, "x", x, 3) == RSS_STL_STATUS_OK);
    CHECK(rss_stl_formula_parse("G (x >= 10)", &f) == RSS_STL_STATUS_OK);
    CHECK(rss_stl_robustness(f, t, 0, &r) == RSS_STL_STATUS_OK);
    CHECK(r == -9.0);
    CHECK(rss_stl_blame(f, t, 0, &b, atom, sizeof atom) == RSS_STL_STATUS_OK);
    CHECK(b.sample == 0 && strcmp(atom, "x") == 0);
    rss_stl_formula_free(f);

    CHECK(rss_stl_formula_parse("G (", &f) == RSS_STL_STATUS_PARSE);
    CHECK(rss_stl_last_error() != NULL);

    CHECK(rss_stl_lon_safe_distance(0.0, 0.0, NULL, &r) == RSS_STL_STATUS_OK);
    CHECK(fabs(r - 1.1953125) < 1e-12);
    rss_stl_trace_free(t);
    printf("ok\n");
    return 0;
}
