#ifndef EQUIDIST_H
#define EQUIDIST_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define EQ_API __declspec(dllexport)
#else
#define EQ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum eq_status {
  EQ_OK = 0,
  EQ_ERR_INVALID_ARGUMENT = 1,
  EQ_ERR_PARSE = 2,
  EQ_ERR_NOT_REPRESENTABLE = 3,
  EQ_ERR_INCOMPATIBLE_CELL = 4,
  EQ_ERR_PRECONDITION = 5,
  EQ_ERR_UNSUPPORTED = 6,
  EQ_ERR_CONSTRUCTION = 7,
  EQ_ERR_INVALID_WEIGHT = 8,
  EQ_ERR_OVERFLOW = 9,
  EQ_ERR_INTERNAL = 100
} eq_status;

typedef struct eq_set eq_set;
typedef struct eq_measure eq_measure;
typedef struct eq_generator eq_generator;

/* Message of the last failed call on this thread, "" if none. */
EQ_API const char* eq_last_error(void);
EQ_API const char* eq_status_name(eq_status status);
EQ_API const char* eq_version(void);
/* Frees strings returned through char** out-parameters. */
EQ_API void eq_string_free(char* s);

/* Integer sets. */
EQ_API eq_status eq_set_parse(const char* json, eq_set** out);
EQ_API void eq_set_free(eq_set* set);
EQ_API eq_status eq_set_contains(const eq_set* set, uint64_t k, int* out);
/* options: {"mode":"asymptotic"|"uniform"|"weighted", "horizon":N,
   "tolerance":t, "weights":"log"|{"power":s}, "buck":bool} */
EQ_API eq_status eq_density_report(const eq_set* set, const char* options_json, char** out_json);
EQ_API eq_status eq_buck_density(const eq_set* set, int64_t* num, int64_t* den);

/* Measures. */
EQ_API eq_status eq_measure_parse(const char* json, eq_measure** out);
EQ_API void eq_measure_free(eq_measure* m);
EQ_API eq_status eq_measure_cell(const eq_measure* m, unsigned base, unsigned level, uint64_t index, double* out);
EQ_API eq_status eq_measure_cdf(const eq_measure* m, double x, double* out);
EQ_API eq_status eq_measure_quantile(const eq_measure* m, double u, double* out);
EQ_API eq_status eq_measure_interval(const eq_measure* m, double a, double b, double* out);
EQ_API eq_status eq_measure_is_continuity(const eq_measure* m, double a, double b, int* out);
/* options: {"level":n, "cdf":[x...], "quantile":[u...]} */
EQ_API eq_status eq_measure_report(const eq_measure* m, const char* options_json, char** out_json);

/* Generators. */
EQ_API eq_status eq_generator_parse(const char* json, eq_generator** out);
EQ_API void eq_generator_free(eq_generator* g);
EQ_API eq_status eq_generator_describe(const eq_generator* g, char** out_json);
EQ_API eq_status eq_generator_eval(const eq_generator* g, uint64_t k, double* out);
/* out[i] = x(start + i) for i < count. */
EQ_API eq_status eq_generator_eval_range(const eq_generator* g, uint64_t start, uint64_t count, double* out);
EQ_API eq_status eq_generator_transport(const eq_generator* g, const eq_measure* m, eq_generator** out);

/* options: {"n":N, "h_max":H, "index":"identity"|"shift:c"|"list:a,b",
   "measure":{...}, "intervals":["a,b"], "tolerance":t, "running":bool}.
   out_csv may be NULL; otherwise it receives the running statistics. */
EQ_API eq_status eq_discrepancy_report(const eq_generator* g, const char* options_json, char** out_json,
                                       char** out_csv);
/* options: {"n":N, "h_max":H, "index":...} */
EQ_API eq_status eq_weyl_report(const eq_generator* g, const char* options_json, char** out_json);
/* options: {"domain":"full"|"dyadic"|"rationals", "tolerance":t, "max_level":L,
   "trace":{"generator":{...}, "n":N}}. out_csv receives the Cesaro trace
   when a trace is requested and out_csv is not NULL. */
EQ_API eq_status eq_riemann_report(const char* function_json, const char* options_json, char** out_json,
                                   char** out_csv);

/* options: {"depth":D, "horizon":N, "count":N}. *passed is 1 when every
   check of the suite holds. */
EQ_API eq_status eq_verify(const char* suite, const char* options_json, char** out_json, int* passed);

#ifdef __cplusplus
}
#endif

#endif
