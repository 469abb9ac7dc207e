#include <stdio.h>
#include "zcap.h"

int main(void) {
    ZcapPair *pair = NULL;
    size_t perm[] = {1, 2};
    int64_t coeffs[] = {0, 0, 0};
    if (zcap_pair_theorem2(2, 2, 0, perm, 2, coeffs, 3, true, &pair) != ZCAP_STATUS_OK) {
        fprintf(stderr, "construct: %s\n", zcap_last_error_message());
        return 1;
    }
    size_t rows = 0, cols = 0;
    uint32_t modulus = 0;
    zcap_pair_dims(pair, &rows, &cols, &modulus);
    bool ok = false;
    zcap_pair_check(pair, 12, 4, &ok);
    size_t rects[8], count = 0;
    zcap_pair_max_rect(pair, rects, 4, &count);
    printf("%zux%zu mod %u verified=%d frontier=%zu (%zu,%zu)\n", rows, cols, modulus, ok, count, rects[0], rects[1]);
    zcap_pair_free(pair);
    return ok ? 0 : 1;
}
