#include <stdio.h>
#include <string.h>
#include "raycap.h"

#define CHECK(cond) do { if (!(cond)) { fprintf(stderr, "failed: %s (%s)\n", #cond, raycap_last_error()); return 1; } } while (0)

int main(void) {
    RaycapField *k = NULL;
    CHECK(raycap_field_new(-1, &k) == RAYCAP_STATUS_OK);
    RaycapRayClassGroup *g = NULL;
    CHECK(raycap_rayclass_new(k, 3, &g) == RAYCAP_STATUS_OK);
    uint64_t order = 0;
    CHECK(raycap_rayclass_order(g, &order) == RAYCAP_STATUS_OK && order == 2);
    raycap_rayclass_free(g);
    raycap_field_free(k);

    CHECK(raycap_field_new(4, &k) == RAYCAP_STATUS_INVALID_INPUT);
    CHECK(strlen(raycap_last_error()) > 0);

    RaycapCertificate *c = NULL;
    CHECK(raycap_search(34, 1, "auto-2", 2, 1, -1, 1000000, 2, &c) == RAYCAP_STATUS_OK);
    uint64_t p = 0;
    CHECK(raycap_certificate_prime(c, &p) == RAYCAP_STATUS_OK && p == 5);
    char *report = NULL;
    CHECK(raycap_verify(c, 200000, &report) == RAYCAP_STATUS_OK);
    CHECK(strstr(report, "\"success\"") != NULL);
    raycap_string_free(report);
    raycap_certificate_free(c);

    uint64_t formula = 0, direct = 0;
    CHECK(raycap_ambig_quadratic(-5, 3, &formula, &direct) == RAYCAP_STATUS_OK && formula == direct);
    printf("ok\n");
    return 0;
}
