/* cc -Icrates/ffi/include crates/ffi/examples/smoke.c target/debug/libprojgeo_ffi.a -lpthread -ldl -lm */
#include <stdio.h>
#include "projgeo.h"

int main(void) {
    ProjgeoConfig *cfg = NULL;
    ProjgeoConfig *built = NULL;
    char *json = NULL;
    if (projgeo_config_generate(42, 10, false, &cfg) != PROJGEO_STATUS_OK) {
        fprintf(stderr, "generate: %s\n", projgeo_last_error());
        return 1;
    }
    if (projgeo_config_construct(cfg, "1234", &built) != PROJGEO_STATUS_OK
        || projgeo_config_to_json(built, &json) != PROJGEO_STATUS_OK) {
        fprintf(stderr, "construct: %s\n", projgeo_last_error());
        return 1;
    }
    fputs(json, stdout);
    projgeo_string_free(json);
    projgeo_config_free(built);
    projgeo_config_free(cfg);

    if (projgeo_config_generate(42, 1, false, &cfg) != PROJGEO_STATUS_INVALID_ARGUMENT) {
        return 1;
    }
    fprintf(stderr, "expected error: %s\n", projgeo_last_error());
    return 0;
}
