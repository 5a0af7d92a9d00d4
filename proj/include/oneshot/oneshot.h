#ifndef ONESHOT_H
#define ONESHOT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define OSC_API __declspec(dllexport)
#else
#define OSC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum osc_status {
    OSC_OK = 0,
    OSC_ERR_PARAMETER = 1,
    OSC_ERR_DOMAIN = 2,
    OSC_ERR_NO_CONTRACTION = 3,
    OSC_ERR_STATE = 4,
    OSC_ERR_INGESTION = 5,
    OSC_ERR_PRECISION = 6,
    OSC_ERR_UNSUPPORTED = 7,
    OSC_ERR_INVALID_ARGUMENT = 8, /* null pointer or malformed JSON */
    OSC_ERR_INTERNAL = 9
} osc_status;

typedef struct osc_model osc_model;
typedef struct osc_certificate osc_certificate;
typedef struct osc_curve osc_curve;

/* Message of the last failed call on this thread; "" after a success. */
OSC_API const char* osc_last_error(void);
OSC_API const char* osc_status_name(osc_status status);
OSC_API const char* osc_version(void);

/* Strings returned through char** are owned by the caller. */
OSC_API void osc_string_free(char* s);

/* {"family": ..., "params": {...}} */
OSC_API osc_status osc_model_from_json(const char* json, osc_model** out);
OSC_API osc_status osc_model_to_json(const osc_model* model, char** out);
OSC_API osc_status osc_model_state_dim(const osc_model* model, size_t* out);
OSC_API void osc_model_free(osc_model* model);

/* inputs_json: {"gap", "x0", "x0p", "M", "jensen", "D2", "grid", "workers"}; may be NULL. */
OSC_API osc_status osc_certificate_build(const osc_model* model, const char* inputs_json,
                                         osc_certificate** out);
OSC_API osc_status osc_certificate_from_json(const char* json, osc_certificate** out);
OSC_API osc_status osc_certificate_to_json(const osc_certificate* cert, char** out);
/* Either output pointer may be NULL. n must exceed n0. */
OSC_API osc_status osc_certificate_bound(const osc_certificate* cert, int64_t n, double* raw,
                                         double* clamped);
OSC_API osc_status osc_certificate_iterations(const osc_certificate* cert, double epsilon,
                                              int64_t* out);
OSC_API void osc_certificate_free(osc_certificate* cert);

typedef struct osc_curve_options {
    int64_t n_max;
    int64_t n_paths;
    double bin_width;
    uint64_t seed;
    int32_t workers; /* 0: all cores */
    int32_t shared_noise;
} osc_curve_options;

OSC_API osc_curve_options osc_curve_options_default(void);

/* cert may be NULL; absent cells are reported as NaN by osc_curve_row. */
OSC_API osc_status osc_curve_simulate(const osc_model* model, const double* x0, size_t x0_len,
                                      const double* x0p, size_t x0p_len,
                                      const osc_certificate* cert,
                                      const osc_curve_options* options, osc_curve** out);
OSC_API osc_status osc_curve_to_csv(const osc_curve* curve, char** out);
OSC_API size_t osc_curve_rows(const osc_curve* curve);
/* values: bound, bound_clamped, tv_sim, tv_exact, mc_se. */
OSC_API osc_status osc_curve_row(const osc_curve* curve, size_t index, int64_t* n,
                                 double values[5]);
OSC_API void osc_curve_free(osc_curve* curve);

/* request: {"builtin": name} or {"path", "y", "x": [...], "lambda"}. Result JSON
   carries the statistics and the derived certificate constants. */
OSC_API osc_status osc_dataset_stats(const char* request_json, char** out_json);

/* options: {"seed", "drift_draws", "workers"}; may be NULL. Writes the CSV table. */
OSC_API osc_status osc_repro_run(const char* options_json, char** out_csv);

#ifdef __cplusplus
}
#endif

#endif
