#include <math.h>
#include <stdio.h>
#include <string.h>

#include "equidist/equidist.h"

static int failures = 0;

#define EXPECT(cond)                                               \
  do {                                                             \
    if (!(cond)) {                                                 \
      fprintf(stderr, "%s:%d: %s failed\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                  \
    }                                                              \
  } while (0)

int main(void) {
  eq_set* set = NULL;
  EXPECT(eq_set_parse("{\"union\":[{\"ap\":[2,0]},{\"ap\":[3,0]}]}", &set) == EQ_OK);
  int member = -1;
  EXPECT(eq_set_contains(set, 9, &member) == EQ_OK && member == 1);
  EXPECT(eq_set_contains(set, 7, &member) == EQ_OK && member == 0);
  int64_t num = 0, den = 0;
  EXPECT(eq_buck_density(set, &num, &den) == EQ_OK && num == 2 && den == 3);
  char* report = NULL;
  EXPECT(eq_density_report(set, "{\"horizon\":100000}", &report) == EQ_OK);
  EXPECT(report != NULL && strstr(report, "\"exact\": \"2/3\"") != NULL);
  eq_string_free(report);
  eq_set_free(set);

  EXPECT(eq_set_parse("{\"ap\":[0,1]}", &set) == EQ_ERR_PARSE);
  EXPECT(strlen(eq_last_error()) > 0);
  EXPECT(strcmp(eq_status_name(EQ_ERR_PARSE), "parse") == 0);
  EXPECT(eq_set_contains(NULL, 1, &member) == EQ_ERR_INVALID_ARGUMENT);

  eq_set* blocks = NULL;
  EXPECT(eq_set_parse("{\"blocks\":{\"kind\":\"pow2-even\"}}", &blocks) == EQ_OK);
  EXPECT(eq_buck_density(blocks, &num, &den) == EQ_ERR_NOT_REPRESENTABLE);
  eq_set_free(blocks);

  eq_measure* m = NULL;
  EXPECT(eq_measure_parse("{\"binomial\":{\"r\":\"0.3\"}}", &m) == EQ_OK);
  double v = 0;
  EXPECT(eq_measure_cdf(m, 0.5, &v) == EQ_OK && fabs(v - 0.3) < 1e-15);
  EXPECT(eq_measure_cell(m, 2, 2, 1, &v) == EQ_OK && fabs(v - 0.21) < 1e-15);
  EXPECT(eq_measure_cell(m, 3, 1, 0, &v) == EQ_ERR_INCOMPATIBLE_CELL);
  EXPECT(eq_measure_quantile(m, 0.3, &v) == EQ_OK && fabs(v - 0.5) < 1e-12);
  int cont = 0;
  EXPECT(eq_measure_is_continuity(m, 0.25, 0.5, &cont) == EQ_OK && cont == 1);

  eq_generator* g = NULL;
  EXPECT(eq_generator_parse("{\"radical\":{\"q\":2}}", &g) == EQ_OK);
  double xs[4];
  EXPECT(eq_generator_eval_range(g, 0, 4, xs) == EQ_OK);
  EXPECT(xs[0] == 0.0 && xs[1] == 0.5 && xs[2] == 0.25 && xs[3] == 0.75);
  eq_generator* y = NULL;
  EXPECT(eq_generator_transport(g, m, &y) == EQ_OK);
  double q_half = 0;
  EXPECT(eq_measure_quantile(m, 0.5, &q_half) == EQ_OK);
  EXPECT(eq_generator_eval(y, 1, &v) == EQ_OK && v == q_half);
  char* csv = NULL;
  EXPECT(eq_discrepancy_report(y, "{\"n\":256,\"measure\":{\"binomial\":{\"r\":\"0.3\"}}}", &report, &csv) == EQ_OK);
  EXPECT(strstr(report, "ks_distance") != NULL);
  EXPECT(strncmp(csv, "n,star_discrepancy", 18) == 0);
  eq_string_free(report);
  eq_string_free(csv);
  eq_generator_free(y);
  eq_generator_free(g);
  eq_measure_free(m);

  EXPECT(eq_riemann_report("{\"dyadic_indicator\":{}}", "{\"max_level\":8}", &report, NULL) == EQ_OK);
  EXPECT(strstr(report, "NOT-INTEGRABLE") != NULL);
  eq_string_free(report);

  int passed = 0;
  EXPECT(eq_verify("decomposition", "{\"depth\":6,\"horizon\":4096}", &report, &passed) == EQ_OK && passed == 1);
  eq_string_free(report);
  EXPECT(eq_verify("bogus", NULL, &report, &passed) == EQ_ERR_INVALID_ARGUMENT);
  EXPECT(strlen(eq_version()) > 0);

  if (failures == 0) printf("capi: all checks passed\n");
  return failures == 0 ? 0 : 1;
}
