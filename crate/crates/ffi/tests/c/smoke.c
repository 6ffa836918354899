#include <stdio.h>
#include <string.h>

#include "sweepmap.h"

static int fail(const char *what) {
    const char *msg = sweep_last_error();
    fprintf(stderr, "%s: %s\n", what, msg ? msg : "(no message)");
    return 1;
}

int main(void) {
    SweepPair *pair = NULL;
    if (sweep_pair_new(7, 5, &pair) != SWEEP_STATUS_OK) return fail("pair");

    char *image = NULL;
    if (sweep_map(pair, "SSSWWWWSSWWW", &image) != SWEEP_STATUS_OK) return fail("sweep");
    char *back = NULL;
    if (sweep_invert(pair, image, SWEEP_ALGORITHM_STRONG, &back) != SWEEP_STATUS_OK) return fail("invert");
    if (strcmp(back, "SSSWWWWSSWWW") != 0) return fail("round trip");

    uint64_t area = 0, count = 0;
    if (sweep_area(pair, "SSSWWWWSSWWW", &area) != SWEEP_STATUS_OK || area != 4) return fail("area");
    if (sweep_rational_catalan(pair, &count) != SWEEP_STATUS_OK || count != 66) return fail("count");

    SweepPair *bad = NULL;
    if (sweep_pair_new(4, 2, &bad) != SWEEP_STATUS_INVALID_INPUT) return fail("non-coprime accepted");

    printf("%s %s %llu %llu\n", image, back, (unsigned long long)area, (unsigned long long)count);
    sweep_string_free(image);
    sweep_string_free(back);
    sweep_pair_free(pair);
    return 0;
}
