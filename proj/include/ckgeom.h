#ifndef CKGEOM_H
#define CKGEOM_H

/* C interface to the Cayley-Klein metric toolkit.
 *
 * Every entry point returns a ck_status; on failure ck_last_error() holds a
 * message for the calling thread.  Strings handed out through char** are
 * owned by the caller and released with ck_string_free(); handles are
 * released with their matching *_free function.
 */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ck_status {
  CK_OK = 0,
  CK_ERR_USAGE = 1,   /* bad arguments or flag combinations */
  CK_ERR_DATA = 2,    /* unreadable, malformed, or inconsistent input */
  CK_ERR_NUMERIC = 3  /* computation failed or left its valid domain */
} ck_status;

typedef struct ck_dataset ck_dataset;
typedef struct ck_metric ck_metric;

const char* ck_last_error(void);
void ck_string_free(char* s);

/* label_col selects the class column: "first", "last", a 0-based index, or
 * a header name.  standardize rescales features to zero mean, unit stddev
 * and stores the transform with any metric trained on the data. */
ck_status ck_dataset_load(const char* path, const char* label_col,
                          char delimiter, int has_header, int standardize,
                          ck_dataset** out);
void ck_dataset_free(ck_dataset* d);
int ck_dataset_rows(const ck_dataset* d);
int ck_dataset_cols(const ck_dataset* d);
int ck_dataset_classes(const ck_dataset* d);

typedef struct ck_lmnn_config {
  int k_targets;
  double tradeoff;          /* pull/push weight in [0, 1] */
  double gamma0;            /* initial gradient step */
  int max_iters;
  int impostor_period;      /* iterations between impostor refreshes */
  double kappa_init;        /* elliptic curvature / hyperbolic cone padding */
  int flat_warm_start;      /* 0: precision-matrix init, 1: flat LMNN init */
  uint64_t seed;
} ck_lmnn_config;

void ck_lmnn_config_default(ck_lmnn_config* cfg);

/* geometry is "flat", "elliptic", or "hyperbolic".  The trained metric and
 * a JSON training report are returned. */
ck_status ck_train(const ck_dataset* data, const char* geometry,
                   const ck_lmnn_config* cfg, ck_metric** out_metric,
                   char** out_report_json);

/* Blended elliptic + hyperbolic training; alphas_csv lists the candidate
 * blend weights (such as "0,0.25,0.5,0.75,1"; NULL for that default) and
 * k_eval the neighbor count used for holdout selection. */
ck_status ck_train_mixed(const ck_dataset* data, const ck_lmnn_config* cfg,
                         const char* alphas_csv, int k_eval,
                         ck_metric** out_metric, char** out_report_json);

/* protocol is "loo" or "split:SIZE:REPEATS"; geometry additionally accepts
 * "mixed" (alphas_csv applies, NULL for the default grid).  out_mean may be
 * NULL. */
ck_status ck_evaluate(const ck_dataset* data, const char* geometry,
                      const ck_lmnn_config* cfg, const char* protocol, int k,
                      const char* alphas_csv, double* out_mean,
                      char** out_report_json);

ck_status ck_metric_save(const ck_metric* m, const char* path);
ck_status ck_metric_load(const char* path, ck_metric** out);
void ck_metric_free(ck_metric* m);
int ck_metric_dim(const ck_metric* m);
const char* ck_metric_geometry(const ck_metric* m);

/* Distance between two dim-dimensional points.  A standardizer stored with
 * the metric is applied to both points first. */
ck_status ck_metric_distance(const ck_metric* m, const double* p,
                             const double* q, int dim, double* out);

/* Scene JSON in, SVG text out.  order_override replaces the scene's order
 * when positive. */
ck_status ck_render_voronoi(const char* scene_json, int order_override,
                            char** out_svg);
ck_status ck_render_balls(const char* scene_json, char** out_svg);

#ifdef __cplusplus
}
#endif

#endif /* CKGEOM_H */
