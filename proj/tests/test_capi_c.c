#include <math.h>
#include <stdio.h>
#include <string.h>

#include "phistab/phistab.h"

static int failures = 0;

#define CHECK(cond)                                           \
  do {                                                        \
    if (!(cond)) {                                            \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                             \
    }                                                         \
  } while (0)

int main(void) {
  phistab_function* f = NULL;
  CHECK(phistab_function_parse("n:2;table:a", &f) == PHISTAB_OK);
  CHECK(phistab_function_dimension(f) == 2);
  phistab_phi phi = {1.0, 1, 0};
  double value = 0.0;
  CHECK(phistab_stability(f, phi, 0.5, &value) == PHISTAB_OK);
  CHECK(fabs(value - (0.75 * log(0.75) + 0.25 * log(0.25))) < 1e-15);
  char* text = NULL;
  CHECK(phistab_function_encode(f, &text) == PHISTAB_OK);
  CHECK(text != NULL && strcmp(text, "n:2;table:a") == 0);
  phistab_string_free(text);
  phistab_function_free(f);

  phistab_function* bad = NULL;
  CHECK(phistab_function_parse("n:2;table:z", &bad) == PHISTAB_ERR_PARSE);
  CHECK(bad == NULL);
  CHECK(strstr(phistab_last_error(), "position") != NULL);

  phistab_root root;
  CHECK(phistab_rho_star(1e-8, &root) == PHISTAB_OK);
  CHECK(fabs(root.root - 0.461491) < 1e-6);

  if (failures == 0) printf("ok\n");
  return failures == 0 ? 0 : 1;
}
