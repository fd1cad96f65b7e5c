#include <stdio.h>
#include <string.h>
#include "sktorus.h"

#define CHECK(x) do { if (!(x)) { fprintf(stderr, "line %d: %s\n", __LINE__, #x); return 1; } } while (0)

int main(void) {
  SktQuasitri *sq = NULL, *flipped = NULL;
  CHECK(skt_quasitri_fixture("square", &sq) == SKT_STATUS_OK);
  CHECK(skt_quasitri_flip(sq, "x", &flipped) == SKT_STATUS_OK);
  char *json = NULL;
  CHECK(skt_quasitri_vertex_matrix_json(flipped, &json) == SKT_STATUS_OK);
  CHECK(strstr(json, "\"rows\"") != NULL);
  skt_string_free(json);

  SktElement *a = NULL, *b = NULL;
  CHECK(skt_element_demoivre(5, &a) == SKT_STATUS_OK);
  CHECK(skt_element_chebyshev_ke(5, &b) == SKT_STATUS_OK);
  bool eq = false;
  CHECK(skt_element_equal(a, b, NULL, &eq) == SKT_STATUS_OK && eq);

  SktContext *ctx = NULL;
  uint64_t n = 0;
  CHECK(skt_context_new(24, &ctx) == SKT_STATUS_OK);
  CHECK(skt_context_big_n(ctx, &n) == SKT_STATUS_OK && n == 3);
  bool holds = false;
  CHECK(skt_gauss_criterion(3, ctx, &holds) == SKT_STATUS_OK && holds);

  CHECK(skt_quasitri_fixture("nowhere", &sq) == SKT_STATUS_UNKNOWN_NAME);
  CHECK(skt_last_error() != NULL);

  skt_context_free(ctx);
  skt_element_free(a);
  skt_element_free(b);
  skt_quasitri_free(flipped);
  skt_quasitri_free(sq);
  puts("ok");
  return 0;
}
