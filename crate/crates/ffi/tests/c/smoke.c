#include <stdio.h>
#include <string.h>

#include "ksgraph.h"

#define CHECK(cond)                                                  \
  do {                                                               \
    if (!(cond)) {                                                   \
      fprintf(stderr, "line %d: %s\n", __LINE__, #cond);             \
      return 1;                                                      \
    }                                                                \
  } while (0)

int main(void) {
  KsgGraph *g = NULL;
  CHECK(ksg_graph_from_catalog("G_YO", &g) == KSG_STATUS_OK);
  CHECK(ksg_graph_vertex_count(g) == 13);

  char *chi_f = NULL;
  CHECK(ksg_fractional_chromatic_number(g, &chi_f) == KSG_STATUS_OK);
  CHECK(strcmp(chi_f, "35/11") == 0);
  ksg_string_free(chi_f);

  int is_sic = -1;
  char *cert = NULL;
  CHECK(ksg_sic_test(g, 3, 1, &is_sic, &cert) == KSG_STATUS_OK);
  CHECK(is_sic == 1);
  int valid = -1;
  CHECK(ksg_verify_certificate(g, cert, &valid, NULL) == KSG_STATUS_OK);
  CHECK(valid == 1);
  ksg_string_free(cert);
  ksg_graph_free(g);

  CHECK(ksg_graph_from_catalog("nope", &g) == KSG_STATUS_NOT_FOUND);
  CHECK(strstr(ksg_last_error_message(), "nope") != NULL);
  puts("ok");
  return 0;
}
