#ifndef ANCHORLAB_ANCHORLAB_H
#define ANCHORLAB_ANCHORLAB_H

/*
 * C interface to anchorlab.
 *
 * Every fallible call returns an al_status. On failure the message is
 * available from al_last_error() on the calling thread until the next call.
 * Objects behind opaque handles are released with their *_free function;
 * passing NULL to a *_free function is a no-op.
 *
 * Output paths accept "-" for standard output.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(ANCHORLAB_BUILDING_LIBRARY)
#    define AL_API __declspec(dllexport)
#  else
#    define AL_API __declspec(dllimport)
#  endif
#else
#  define AL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum al_status {
    AL_OK = 0,
    AL_ERR_INVALID_ARGUMENT = 1,
    AL_ERR_SINGULAR = 2,
    AL_ERR_DEGENERATE = 3,
    AL_ERR_IO = 4,
    AL_ERR_PARSE = 5,
    AL_ERR_MISMATCH = 6,
    AL_ERR_INTERNAL = 7
} al_status;

typedef enum al_method { AL_METHOD_LSM = 0, AL_METHOD_GDM = 1, AL_METHOD_TPLM = 2 } al_method;

typedef enum al_noise_kind { AL_NOISE_GAUSSIAN = 0, AL_NOISE_UNIFORM = 1 } al_noise_kind;

typedef enum al_estimate_status {
    AL_ESTIMATE_CONVERGED = 0,
    AL_ESTIMATE_ITERATION_LIMIT = 1,
    AL_ESTIMATE_DIVERGED = 2
} al_estimate_status;

typedef struct al_point {
    double x;
    double y;
} al_point;

typedef struct al_region {
    double xmin;
    double ymin;
    double xmax;
    double ymax;
} al_region;

/* level is the standard deviation for both kinds. */
typedef struct al_noise_model {
    al_noise_kind kind;
    double level;
    uint64_t seed;
} al_noise_model;

typedef struct al_gdm_config {
    double step;
    double tolerance;
    int max_iterations;
} al_gdm_config;

typedef struct al_estimate {
    al_point position;
    al_method method;
    al_estimate_status status;
    int iterations;
    int has_pair;
    size_t pair_first;
    size_t pair_second;
    int radicand_clamped;
    double elapsed_seconds;
} al_estimate;

typedef struct al_method_stats {
    al_method method;
    double mean;
    double stddev;
    double seconds_per_traversal;
    size_t samples;
    size_t failures;
    double mean_iterations;
} al_method_stats;

typedef struct al_geo_transform {
    double origin_lon;
    double origin_lat;
    double x_scale;
    double y_scale;
    double rotation;
} al_geo_transform;

typedef struct al_anchor_set al_anchor_set;
typedef struct al_trajectory al_trajectory;
typedef struct al_grid al_grid;
typedef struct al_bench_result al_bench_result;
typedef struct al_sweep_result al_sweep_result;
typedef struct al_rgap_result al_rgap_result;
typedef struct al_field_log al_field_log;
typedef struct al_replay_result al_replay_result;

AL_API const char* al_version(void);
AL_API const char* al_last_error(void);
AL_API const char* al_status_string(al_status status);

AL_API const char* al_method_name(al_method method);
AL_API al_status al_method_parse(const char* text, al_method* out);
AL_API const char* al_noise_kind_name(al_noise_kind kind);
AL_API al_status al_noise_kind_parse(const char* text, al_noise_kind* out);
AL_API al_status al_region_parse(const char* text, al_region* out);
AL_API void al_gdm_config_default(al_gdm_config* out);

/* Anchors */
AL_API al_status al_anchor_set_create(const al_point* positions, const int* ids, size_t count,
                                      al_anchor_set** out);
/* name: ap1, ap2, ap3 or ap4 */
AL_API al_status al_anchor_set_standard(const char* name, al_anchor_set** out);
/* geo may be NULL for files in local meters. */
AL_API al_status al_anchor_set_load(const char* path, const al_geo_transform* geo, al_anchor_set** out);
AL_API al_status al_anchor_set_save(const al_anchor_set* anchors, const char* path);
AL_API void al_anchor_set_free(al_anchor_set* anchors);
AL_API size_t al_anchor_set_size(const al_anchor_set* anchors);
AL_API al_status al_anchor_set_get(const al_anchor_set* anchors, size_t index, int* id, al_point* position);
AL_API int al_anchor_set_collinear(const al_anchor_set* anchors);
AL_API al_status al_anchor_set_distances(const al_anchor_set* anchors, al_point p, double* out, size_t capacity);

/* Trajectories */
AL_API al_status al_trajectory_create(const al_point* points, size_t count, al_trajectory** out);
AL_API al_status al_trajectory_hilbert(int order, const al_region* region, size_t points, al_trajectory** out);
AL_API al_status al_trajectory_load(const char* path, al_trajectory** out);
AL_API al_status al_trajectory_save(const al_trajectory* trajectory, const char* path);
AL_API void al_trajectory_free(al_trajectory* trajectory);
AL_API size_t al_trajectory_size(const al_trajectory* trajectory);
AL_API al_status al_trajectory_points(const al_trajectory* trajectory, al_point* out, size_t capacity);
AL_API double al_trajectory_length(const al_trajectory* trajectory);

/* GDOP */
AL_API al_status al_pair_gdop(al_point p_i, al_point p_j, double d_i, double d_j, double* out);
AL_API al_status al_multi_gdop(const al_anchor_set* anchors, al_point p, double* value, size_t* first,
                               size_t* second);
AL_API al_status al_region_score(const al_anchor_set* anchors, const al_region* region, size_t subdivisions,
                                 double* score, size_t* adjusted);
AL_API al_status al_trajectory_score(const al_anchor_set* anchors, const al_trajectory* trajectory,
                                     double* score, size_t* adjusted);

/* Grids. LVT grids hold GDOP values; OSAP grids hold pair indices. */
AL_API al_status al_lvt_grid(const al_anchor_set* anchors, const al_region* region, size_t nx, size_t ny,
                             al_grid** out);
/* noise may be NULL for the noise-free map. */
AL_API al_status al_osap_map(const al_anchor_set* anchors, const al_region* region, size_t nx, size_t ny,
                             const al_noise_model* noise, al_grid** out);
AL_API void al_grid_free(al_grid* grid);
AL_API size_t al_grid_nx(const al_grid* grid);
AL_API size_t al_grid_ny(const al_grid* grid);
AL_API al_status al_grid_value(const al_grid* grid, size_t ix, size_t iy, double* out);
AL_API al_status al_grid_write_csv(const al_grid* grid, const char* path);
AL_API al_status al_grid_write_pgm(const al_grid* grid, const char* path);

/* Noise */
AL_API al_status al_draw_noise(const al_noise_model* model, uint64_t substream, double* out, size_t count);

/* Localizers. measured holds one range per anchor. gdm config may be NULL. */
AL_API al_status al_lsm_solve(const al_anchor_set* anchors, const double* measured, size_t count,
                              al_estimate* out);
AL_API al_status al_gdm_solve(const al_anchor_set* anchors, const double* measured, size_t count,
                              al_point init, const al_gdm_config* config, al_estimate* out);
AL_API al_status al_tplm_solve(const al_anchor_set* anchors, const double* measured, size_t count,
                               al_point reference, al_estimate* out);

/* Traversal benchmark */
typedef struct al_bench_config {
    al_noise_model noise;
    int repetitions;
    const al_method* methods;
    size_t method_count;
    al_gdm_config gdm;
    int keep_restored;
    uint64_t substream_base;
} al_bench_config;

AL_API void al_bench_config_default(al_bench_config* out);
AL_API al_status al_run_traversal(const al_anchor_set* anchors, const al_trajectory* trajectory,
                                  const al_bench_config* config, al_bench_result** out);
AL_API void al_bench_result_free(al_bench_result* result);
AL_API size_t al_bench_result_method_count(const al_bench_result* result);
AL_API al_status al_bench_result_stats(const al_bench_result* result, size_t index, al_method_stats* out);
AL_API al_status al_bench_result_write_stats(const al_bench_result* result, const char* placement,
                                             double level, const char* path);
AL_API al_status al_bench_result_write_restored(const al_bench_result* result, const char* path);

/* Noise sweep */
typedef struct al_sweep_config {
    const al_anchor_set* const* placements;
    const char* const* placement_names;
    size_t placement_count;
    const double* levels;
    size_t level_count;
    const al_noise_kind* kinds;
    size_t kind_count;
    int repetitions;
    const al_method* methods;
    size_t method_count;
    al_gdm_config gdm;
    uint64_t seed;
} al_sweep_config;

AL_API al_status al_noise_sweep(const al_trajectory* trajectory, const al_sweep_config* config,
                                al_sweep_result** out);
AL_API void al_sweep_result_free(al_sweep_result* result);
AL_API size_t al_sweep_result_size(const al_sweep_result* result);
AL_API al_status al_sweep_result_row(const al_sweep_result* result, size_t index, const char** placement,
                                     al_noise_kind* kind, double* level, al_method_stats* stats);
AL_API al_status al_sweep_result_write(const al_sweep_result* result, const char* path);

/* Random placement study */
typedef struct al_rgap_config {
    size_t anchor_count;
    int upper_half;
    size_t placements;
    al_noise_model noise;
    int repetitions;
    const al_method* methods;
    size_t method_count;
    al_gdm_config gdm;
    al_region region;
} al_rgap_config;

AL_API void al_rgap_config_default(al_rgap_config* out);
AL_API al_status al_rgap_study(const al_trajectory* trajectory, const al_rgap_config* config,
                               al_rgap_result** out);
AL_API void al_rgap_result_free(al_rgap_result* result);
AL_API size_t al_rgap_result_placement_count(const al_rgap_result* result);
AL_API size_t al_rgap_result_method_count(const al_rgap_result* result);
AL_API double al_rgap_result_mean_score(const al_rgap_result* result);
AL_API size_t al_rgap_result_redraws(const al_rgap_result* result);
AL_API al_status al_rgap_result_placement(const al_rgap_result* result, size_t index, double* score,
                                          al_anchor_set** anchors);
AL_API al_status al_rgap_result_method(const al_rgap_result* result, size_t index, al_method* method,
                                       double* mean_error, double* score_error_rank);
AL_API al_status al_rgap_result_write(const al_rgap_result* result, const char* path);

/* Field logs and replay */
AL_API al_status al_field_log_load(const char* path, double gap_threshold, al_field_log** out);
AL_API al_status al_field_log_synthesize(const al_anchor_set* anchors, const al_trajectory* path,
                                         const al_noise_model* noise, double period, al_field_log** out);
AL_API al_status al_field_log_save(const al_field_log* log, const char* path);
AL_API void al_field_log_free(al_field_log* log);
AL_API size_t al_field_log_size(const al_field_log* log);
AL_API size_t al_field_log_malformed(const al_field_log* log);
AL_API size_t al_field_log_gaps(const al_field_log* log);

AL_API al_status al_replay(const al_field_log* log, const al_anchor_set* anchors, const al_method* methods,
                           size_t method_count, const al_gdm_config* gdm, al_replay_result** out);
AL_API void al_replay_result_free(al_replay_result* result);
AL_API size_t al_replay_result_size(const al_replay_result* result);
AL_API size_t al_replay_result_method_count(const al_replay_result* result);
AL_API int al_replay_result_has_truth(const al_replay_result* result);
AL_API al_status al_replay_result_stats(const al_replay_result* result, size_t index, al_method_stats* out);
AL_API al_status al_replay_result_estimate(const al_replay_result* result, size_t row, size_t method,
                                           al_point* out);
AL_API al_status al_replay_result_write(const al_replay_result* result, const char* path);

/* Geographic transform */
AL_API void al_geo_transform_field_testbed(al_geo_transform* out);
AL_API al_status al_geo_transform_load(const char* path, al_geo_transform* out);
AL_API al_status al_geo_to_local(const al_geo_transform* transform, double lon, double lat, al_point* out);

#ifdef __cplusplus
}
#endif

#endif
