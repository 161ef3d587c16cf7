#include <stdio.h>
#include <string.h>
#include "scdt.h"

int main(void) {
    ScdtCode *code = NULL;
    if (scdt_code_catalog("e8_kissing", &code) != SCDT_STATUS_OK)
        return 1;
    ScdtProfile p;
    if (scdt_code_profile(code, &p) != SCDT_STATUS_OK)
        return 2;
    char *report = NULL;
    ScdtStatus st = scdt_code_analyze(code, false, &report);
    int ok = st == SCDT_STATUS_OK && strstr(report, "verdict: ok") != NULL;
    printf("%zu %zu %zu %zu %d\n", p.dim, p.size, p.s, p.t, ok);
    scdt_string_free(report);
    scdt_code_free(code);
    if (scdt_code_catalog("nope", &code) != SCDT_STATUS_UNKNOWN_NAME || scdt_last_error() == NULL)
        return 3;
    return ok ? 0 : 4;
}
