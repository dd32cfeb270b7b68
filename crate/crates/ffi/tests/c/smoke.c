#include <stdio.h>

#include "boba.h"

/* Worked example: s_s=0, s_1=1, s_2=2, s_3=3, s_g=4. */
static const BobaArc ARCS[] = {
    {0, 1, 1, 3}, {1, 2, 1, 2}, {0, 2, 3, 4}, {0, 3, 3, 1},
    {3, 2, 2, 1}, {2, 4, 2, 1}, {3, 4, 3, 4},
};

int main(void) {
  BobaGraph *graph = NULL;
  if (boba_graph_from_arcs(5, ARCS, sizeof ARCS / sizeof ARCS[0], &graph) != BOBA_STATUS_OK) {
    fprintf(stderr, "graph: %s\n", boba_last_error());
    return 1;
  }
  BobaConfig config = boba_config_default();
  config.paths = true;
  config.threads = 2;
  BobaFront *front = NULL;
  if (boba_solve(graph, 0, 4, &config, &front) != BOBA_STATUS_OK) {
    fprintf(stderr, "solve: %s\n", boba_last_error());
    return 1;
  }
  for (size_t i = 0; i < boba_front_len(front); ++i) {
    uint64_t c1, c2;
    size_t len;
    uint32_t path[8];
    boba_front_cost(front, i, &c1, &c2);
    boba_front_path_len(front, i, &len);
    boba_front_path_copy(front, i, path, 8);
    printf("%llu %llu", (unsigned long long)c1, (unsigned long long)c2);
    for (size_t k = 0; k < len; ++k) printf(" %u", path[k]);
    printf("\n");
  }
  BobaStatus bad = boba_solve(graph, 0, 9, &config, &front);
  printf("%s\n", boba_status_str(bad));
  boba_front_free(front);
  boba_graph_free(graph);
  return 0;
}
