#include <stdio.h>
#include <string.h>
#include "subuniv.h"

int main(void) {
    SubunivStructure *s = NULL;
    if (subuniv_structure_named("K0", &s) != SUBUNIV_STATUS_OK) return 10;
    uint64_t count = 0;
    if (subuniv_count(s, &count) != SUBUNIV_STATUS_OK || count != 61) return 11;
    uint64_t m = 0;
    int32_t e = 0;
    if (subuniv_sigma(s, 5, &m, &e) != SUBUNIV_STATUS_OK || m != 61 || e != -2) return 12;
    subuniv_structure_free(s);
    if (subuniv_structure_named("nope", &s) != SUBUNIV_STATUS_UNKNOWN_ID) return 13;
    if (subuniv_last_error_message() == NULL) return 14;
    char *json = NULL;
    if (subuniv_verify_theorem_json(5, &json) != SUBUNIV_STATUS_OK) return 15;
    if (strstr(json, "\"passed\":true") == NULL) return 16;
    subuniv_string_free(json);
    printf("ok\n");
    return 0;
}
