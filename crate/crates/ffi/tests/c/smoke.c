#include <stdio.h>
#include <string.h>
#include "homext.h"

static const char *DOC =
    "algebra A field Q dim 1 basis u\n"
    "sc 1 1 1 1\n"
    "end\n"
    "map id on A\n"
    "1\n"
    "end\n"
    "map zero on A\n"
    "0\n"
    "end\n"
    "dop sig on A left zero right zero\n"
    "datum D dop sig s 0\n";

int main(void) {
    HomextDocument *doc = NULL;
    if (homext_document_parse(DOC, &doc) != HOMEXT_STATUS_OK) {
        fprintf(stderr, "parse: %s\n", homext_last_error());
        return 1;
    }
    char *out = NULL;
    int32_t code = -1;
    HomextStatus st = homext_run(doc, "check datum", &out, &code);
    int ok = st == HOMEXT_STATUS_OK && code == 0 && strstr(out, "PASS datum axioms") != NULL;
    printf("%s", out);
    homext_string_free(out);
    homext_document_free(doc);
    return ok ? 0 : 1;
}
