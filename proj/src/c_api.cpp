#include "anchorlab/anchorlab.h"

#include <chrono>
#include <cstring>
#include <fstream>
#include <iostream>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "anchorlab/csv_io.hpp"
#include "anchorlab/error.hpp"
#include "anchorlab/experiments.hpp"
#include "anchorlab/gdop.hpp"
#include "anchorlab/geo.hpp"
#include "anchorlab/grid_export.hpp"
#include "anchorlab/localizers.hpp"
#include "anchorlab/noise.hpp"
#include "anchorlab/replay.hpp"

namespace al = anchorlab;

struct al_anchor_set {
    al::AnchorSet value;
};

struct al_trajectory {
    al::Trajectory value;
};

struct al_grid {
    std::optional<al::LvtGrid> lvt;
    std::optional<al::OsapMap> osap;
    std::size_t nx = 0;
    std::size_t ny = 0;
};

struct al_bench_result {
    std::vector<al::Method> methods;
    al::TraversalResult value;
};

struct al_sweep_result {
    std::vector<al::SweepRow> rows;
};

struct al_rgap_result {
    std::vector<al::Method> methods;
    al::RgapResult value;
};

struct al_field_log {
    al::FieldLog value;
};

struct al_replay_result {
    al::ReplayResult value;
};

namespace {

thread_local std::string g_last_error;

al_status code_of(al::ErrorCode code) {
    switch (code) {
        case al::ErrorCode::InvalidArgument: return AL_ERR_INVALID_ARGUMENT;
        case al::ErrorCode::Singular: return AL_ERR_SINGULAR;
        case al::ErrorCode::Degenerate: return AL_ERR_DEGENERATE;
        case al::ErrorCode::Io: return AL_ERR_IO;
        case al::ErrorCode::Parse: return AL_ERR_PARSE;
        case al::ErrorCode::Mismatch: return AL_ERR_MISMATCH;
    }
    return AL_ERR_INTERNAL;
}

template <class F>
al_status guarded(F&& body) {
    g_last_error.clear();
    try {
        body();
        return AL_OK;
    } catch (const al::Error& e) {
        g_last_error = e.what();
        return code_of(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return AL_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return AL_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return AL_ERR_INTERNAL;
    }
}

void require(bool condition, const char* message) {
    if (!condition) throw al::Error(al::ErrorCode::InvalidArgument, message);
}

al::Point2D to_cpp(al_point p) { return {p.x, p.y}; }
al_point to_c(al::Point2D p) { return {p.x, p.y}; }

al::Region to_cpp(const al_region& r) { return al::Region({r.xmin, r.ymin}, {r.xmax, r.ymax}); }

al::Method to_cpp(al_method m) {
    switch (m) {
        case AL_METHOD_LSM: return al::Method::Lsm;
        case AL_METHOD_GDM: return al::Method::Gdm;
        case AL_METHOD_TPLM: return al::Method::Tplm;
    }
    throw al::Error(al::ErrorCode::InvalidArgument, "unknown method");
}

al_method to_c(al::Method m) {
    switch (m) {
        case al::Method::Lsm: return AL_METHOD_LSM;
        case al::Method::Gdm: return AL_METHOD_GDM;
        case al::Method::Tplm: return AL_METHOD_TPLM;
    }
    return AL_METHOD_LSM;
}

al::NoiseKind to_cpp(al_noise_kind k) {
    switch (k) {
        case AL_NOISE_GAUSSIAN: return al::NoiseKind::Gaussian;
        case AL_NOISE_UNIFORM: return al::NoiseKind::Uniform;
    }
    throw al::Error(al::ErrorCode::InvalidArgument, "unknown noise kind");
}

al_noise_kind to_c(al::NoiseKind k) {
    return k == al::NoiseKind::Uniform ? AL_NOISE_UNIFORM : AL_NOISE_GAUSSIAN;
}

al::NoiseModel to_cpp(const al_noise_model& n) {
    al::NoiseModel model{to_cpp(n.kind), n.level, n.seed};
    model.validate();
    return model;
}

al::GdmConfig to_cpp(const al_gdm_config& c) {
    al::GdmConfig cfg{c.step, c.tolerance, c.max_iterations};
    cfg.validate();
    return cfg;
}

al::GeoTransform to_cpp(const al_geo_transform& g) {
    al::GeoTransform t{g.origin_lon, g.origin_lat, g.x_scale, g.y_scale, g.rotation};
    t.validate();
    return t;
}

al_geo_transform to_c(const al::GeoTransform& t) {
    return {t.origin_lon, t.origin_lat, t.x_scale, t.y_scale, t.rotation};
}

std::vector<al::Method> methods_of(const al_method* methods, std::size_t count) {
    if (count == 0) return al::kAllMethods;
    require(methods != nullptr, "methods is null");
    std::vector<al::Method> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(to_cpp(methods[i]));
    return out;
}

al_estimate to_c(const al::Estimate& e) {
    al_estimate out{};
    out.position = to_c(e.position);
    out.method = to_c(e.method);
    switch (e.status) {
        case al::EstimateStatus::Converged: out.status = AL_ESTIMATE_CONVERGED; break;
        case al::EstimateStatus::IterationLimit: out.status = AL_ESTIMATE_ITERATION_LIMIT; break;
        case al::EstimateStatus::Diverged: out.status = AL_ESTIMATE_DIVERGED; break;
    }
    out.iterations = e.iterations;
    out.has_pair = e.pair.has_value() ? 1 : 0;
    if (e.pair) {
        out.pair_first = e.pair->first;
        out.pair_second = e.pair->second;
    }
    out.radicand_clamped = e.radicand_clamped ? 1 : 0;
    out.elapsed_seconds = std::chrono::duration<double>(e.elapsed).count();
    return out;
}

al_method_stats to_c(const al::MethodStats& s) {
    return {to_c(s.method), s.mean, s.stddev, s.seconds_per_traversal, s.samples, s.failures, s.mean_iterations};
}

template <class Write>
void with_output(const char* path, Write&& write) {
    require(path != nullptr, "output path is null");
    if (std::strcmp(path, "-") == 0) {
        write(std::cout);
        std::cout.flush();
        if (!std::cout) throw al::Error(al::ErrorCode::Io, "cannot write to standard output");
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw al::Error(al::ErrorCode::Io, std::string("cannot open '") + path + "' for writing");
    write(out);
    out.close();
    if (!out) throw al::Error(al::ErrorCode::Io, std::string("failed writing '") + path + "'");
}

std::span<const double> ranges(const al_anchor_set* anchors, const double* measured, std::size_t count) {
    require(anchors != nullptr, "anchor set is null");
    require(measured != nullptr || count == 0, "measured ranges are null");
    return {measured, count};
}

}  // namespace

extern "C" {

const char* al_version(void) { return "0.1.0"; }

const char* al_last_error(void) { return g_last_error.c_str(); }

const char* al_status_string(al_status status) {
    switch (status) {
        case AL_OK: return "ok";
        case AL_ERR_INVALID_ARGUMENT: return "invalid argument";
        case AL_ERR_SINGULAR: return "singular";
        case AL_ERR_DEGENERATE: return "degenerate";
        case AL_ERR_IO: return "i/o error";
        case AL_ERR_PARSE: return "parse error";
        case AL_ERR_MISMATCH: return "mismatch";
        case AL_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* al_method_name(al_method method) {
    switch (method) {
        case AL_METHOD_LSM:
        case AL_METHOD_GDM:
        case AL_METHOD_TPLM: return al::to_string(to_cpp(method));
    }
    return "unknown";
}

al_status al_method_parse(const char* text, al_method* out) {
    return guarded([&] {
        require(text && out, "null argument");
        *out = to_c(al::parse_method(text));
    });
}

const char* al_noise_kind_name(al_noise_kind kind) {
    return kind == AL_NOISE_UNIFORM ? "uniform" : kind == AL_NOISE_GAUSSIAN ? "gaussian" : "unknown";
}

al_status al_noise_kind_parse(const char* text, al_noise_kind* out) {
    return guarded([&] {
        require(text && out, "null argument");
        *out = to_c(al::parse_noise_kind(text));
    });
}

al_status al_region_parse(const char* text, al_region* out) {
    return guarded([&] {
        require(text && out, "null argument");
        const auto r = al::parse_region(text);
        *out = {r.min().x, r.min().y, r.max().x, r.max().y};
    });
}

void al_gdm_config_default(al_gdm_config* out) {
    if (!out) return;
    const al::GdmConfig d;
    *out = {d.step, d.tolerance, d.max_iterations};
}

/* Anchors */

al_status al_anchor_set_create(const al_point* positions, const int* ids, size_t count, al_anchor_set** out) {
    return guarded([&] {
        require(out != nullptr, "output handle is null");
        require(positions != nullptr || count == 0, "positions are null");
        std::vector<al::Anchor> anchors;
        for (std::size_t i = 0; i < count; ++i) {
            anchors.push_back({ids ? ids[i] : static_cast<int>(i + 1), to_cpp(positions[i])});
        }
        *out = new al_anchor_set{al::AnchorSet(std::move(anchors))};
    });
}

al_status al_anchor_set_standard(const char* name, al_anchor_set** out) {
    return guarded([&] {
        require(name && out, "null argument");
        const std::string n = name;
        if (n == "ap1") *out = new al_anchor_set{al::placements::ap1()};
        else if (n == "ap2") *out = new al_anchor_set{al::placements::ap2()};
        else if (n == "ap3") *out = new al_anchor_set{al::placements::ap3()};
        else if (n == "ap4") *out = new al_anchor_set{al::placements::ap4()};
        else throw al::Error(al::ErrorCode::InvalidArgument, "unknown standard placement '" + n + "'");
    });
}

al_status al_anchor_set_load(const char* path, const al_geo_transform* geo, al_anchor_set** out) {
    return guarded([&] {
        require(path && out, "null argument");
        std::optional<al::GeoTransform> transform;
        if (geo) transform = to_cpp(*geo);
        *out = new al_anchor_set{al::load_anchors(path, transform)};
    });
}

al_status al_anchor_set_save(const al_anchor_set* anchors, const char* path) {
    return guarded([&] {
        require(anchors != nullptr, "anchor set is null");
        with_output(path, [&](std::ostream& os) { al::write_anchors_csv(os, anchors->value); });
    });
}

void al_anchor_set_free(al_anchor_set* anchors) { delete anchors; }

size_t al_anchor_set_size(const al_anchor_set* anchors) { return anchors ? anchors->value.size() : 0; }

al_status al_anchor_set_get(const al_anchor_set* anchors, size_t index, int* id, al_point* position) {
    return guarded([&] {
        require(anchors != nullptr, "anchor set is null");
        require(index < anchors->value.size(), "anchor index out of range");
        if (id) *id = anchors->value[index].id;
        if (position) *position = to_c(anchors->value[index].position);
    });
}

int al_anchor_set_collinear(const al_anchor_set* anchors) {
    return anchors && anchors->value.all_collinear() ? 1 : 0;
}

al_status al_anchor_set_distances(const al_anchor_set* anchors, al_point p, double* out, size_t capacity) {
    return guarded([&] {
        require(anchors && out, "null argument");
        require(capacity >= anchors->value.size(), "output buffer too small");
        anchors->value.distances_from(to_cpp(p), std::span<double>(out, anchors->value.size()));
    });
}

/* Trajectories */

al_status al_trajectory_create(const al_point* points, size_t count, al_trajectory** out) {
    return guarded([&] {
        require(out != nullptr, "output handle is null");
        require(points != nullptr || count == 0, "points are null");
        std::vector<al::Point2D> pts;
        for (std::size_t i = 0; i < count; ++i) pts.push_back(to_cpp(points[i]));
        *out = new al_trajectory{al::Trajectory(std::move(pts))};
    });
}

al_status al_trajectory_hilbert(int order, const al_region* region, size_t points, al_trajectory** out) {
    return guarded([&] {
        require(region && out, "null argument");
        *out = new al_trajectory{al::hilbert_trajectory(order, to_cpp(*region), points)};
    });
}

al_status al_trajectory_load(const char* path, al_trajectory** out) {
    return guarded([&] {
        require(path && out, "null argument");
        *out = new al_trajectory{al::load_trajectory(path)};
    });
}

al_status al_trajectory_save(const al_trajectory* trajectory, const char* path) {
    return guarded([&] {
        require(trajectory != nullptr, "trajectory is null");
        with_output(path, [&](std::ostream& os) { al::write_points_csv(os, trajectory->value.points()); });
    });
}

void al_trajectory_free(al_trajectory* trajectory) { delete trajectory; }

size_t al_trajectory_size(const al_trajectory* trajectory) { return trajectory ? trajectory->value.size() : 0; }

al_status al_trajectory_points(const al_trajectory* trajectory, al_point* out, size_t capacity) {
    return guarded([&] {
        require(trajectory && out, "null argument");
        require(capacity >= trajectory->value.size(), "output buffer too small");
        for (std::size_t i = 0; i < trajectory->value.size(); ++i) out[i] = to_c(trajectory->value[i]);
    });
}

double al_trajectory_length(const al_trajectory* trajectory) {
    return trajectory ? al::arc_length(trajectory->value) : 0.0;
}

/* GDOP */

al_status al_pair_gdop(al_point p_i, al_point p_j, double d_i, double d_j, double* out) {
    return guarded([&] {
        require(out != nullptr, "output is null");
        *out = al::pair_gdop(to_cpp(p_i), to_cpp(p_j), d_i, d_j);
    });
}

al_status al_multi_gdop(const al_anchor_set* anchors, al_point p, double* value, size_t* first, size_t* second) {
    return guarded([&] {
        require(anchors != nullptr, "anchor set is null");
        const auto g = al::multi_gdop(anchors->value, to_cpp(p));
        if (value) *value = g.value;
        if (first) *first = g.pair.first;
        if (second) *second = g.pair.second;
    });
}

al_status al_region_score(const al_anchor_set* anchors, const al_region* region, size_t subdivisions,
                          double* score, size_t* adjusted) {
    return guarded([&] {
        require(anchors && region && score, "null argument");
        const auto s = al::region_score(anchors->value, to_cpp(*region), subdivisions);
        *score = s.value;
        if (adjusted) *adjusted = s.adjusted;
    });
}

al_status al_trajectory_score(const al_anchor_set* anchors, const al_trajectory* trajectory, double* score,
                              size_t* adjusted) {
    return guarded([&] {
        require(anchors && trajectory && score, "null argument");
        const auto s = al::trajectory_score(anchors->value, trajectory->value);
        *score = s.value;
        if (adjusted) *adjusted = s.adjusted;
    });
}

/* Grids */

al_status al_lvt_grid(const al_anchor_set* anchors, const al_region* region, size_t nx, size_t ny, al_grid** out) {
    return guarded([&] {
        require(anchors && region && out, "null argument");
        auto grid = std::make_unique<al_grid>();
        grid->lvt = al::lvt_grid(anchors->value, to_cpp(*region), nx, ny);
        grid->nx = nx;
        grid->ny = ny;
        *out = grid.release();
    });
}

al_status al_osap_map(const al_anchor_set* anchors, const al_region* region, size_t nx, size_t ny,
                      const al_noise_model* noise, al_grid** out) {
    return guarded([&] {
        require(anchors && region && out, "null argument");
        std::optional<al::NoiseModel> model;
        if (noise) model = to_cpp(*noise);
        auto grid = std::make_unique<al_grid>();
        grid->osap = al::osap_map(anchors->value, to_cpp(*region), nx, ny, model);
        grid->nx = nx;
        grid->ny = ny;
        *out = grid.release();
    });
}

void al_grid_free(al_grid* grid) { delete grid; }

size_t al_grid_nx(const al_grid* grid) { return grid ? grid->nx : 0; }

size_t al_grid_ny(const al_grid* grid) { return grid ? grid->ny : 0; }

al_status al_grid_value(const al_grid* grid, size_t ix, size_t iy, double* out) {
    return guarded([&] {
        require(grid && out, "null argument");
        require(ix < grid->nx && iy < grid->ny, "grid index out of range");
        *out = grid->lvt ? grid->lvt->at(ix, iy) : static_cast<double>(grid->osap->pairs[iy * grid->nx + ix]);
    });
}

al_status al_grid_write_csv(const al_grid* grid, const char* path) {
    return guarded([&] {
        require(grid != nullptr, "grid is null");
        with_output(path, [&](std::ostream& os) {
            if (grid->lvt) al::write_grid_csv(os, *grid->lvt);
            else al::write_grid_csv(os, *grid->osap);
        });
    });
}

al_status al_grid_write_pgm(const al_grid* grid, const char* path) {
    return guarded([&] {
        require(grid != nullptr, "grid is null");
        with_output(path, [&](std::ostream& os) {
            if (grid->lvt) al::write_grid_pgm(os, *grid->lvt);
            else al::write_grid_pgm(os, *grid->osap);
        });
    });
}

/* Noise */

al_status al_draw_noise(const al_noise_model* model, uint64_t substream, double* out, size_t count) {
    return guarded([&] {
        require(model && (out || count == 0), "null argument");
        al::NoiseStream stream(to_cpp(*model), substream);
        stream.fill(std::span<double>(out, count));
    });
}

/* Localizers */

al_status al_lsm_solve(const al_anchor_set* anchors, const double* measured, size_t count, al_estimate* out) {
    return guarded([&] {
        require(out != nullptr, "output is null");
        const auto r = ranges(anchors, measured, count);
        *out = to_c(al::lsm_solve(anchors->value, r));
    });
}

al_status al_gdm_solve(const al_anchor_set* anchors, const double* measured, size_t count, al_point init,
                       const al_gdm_config* config, al_estimate* out) {
    return guarded([&] {
        require(out != nullptr, "output is null");
        const auto r = ranges(anchors, measured, count);
        const al::GdmConfig cfg = config ? to_cpp(*config) : al::GdmConfig{};
        *out = to_c(al::gdm_solve(anchors->value, r, to_cpp(init), cfg));
    });
}

al_status al_tplm_solve(const al_anchor_set* anchors, const double* measured, size_t count, al_point reference,
                        al_estimate* out) {
    return guarded([&] {
        require(out != nullptr, "output is null");
        const auto r = ranges(anchors, measured, count);
        *out = to_c(al::tplm_solve(anchors->value, r, to_cpp(reference)));
    });
}

/* Traversal benchmark */

void al_bench_config_default(al_bench_config* out) {
    if (!out) return;
    *out = al_bench_config{};
    out->noise = {AL_NOISE_GAUSSIAN, 0.0, 0};
    out->repetitions = 10;
    al_gdm_config_default(&out->gdm);
}

al_status al_run_traversal(const al_anchor_set* anchors, const al_trajectory* trajectory,
                           const al_bench_config* config, al_bench_result** out) {
    return guarded([&] {
        require(anchors && trajectory && config && out, "null argument");
        al::ExperimentSpec spec{anchors->value,
                                trajectory->value.points(),
                                to_cpp(config->noise),
                                config->repetitions,
                                methods_of(config->methods, config->method_count),
                                to_cpp(config->gdm),
                                config->keep_restored != 0,
                                config->substream_base};
        auto result = std::make_unique<al_bench_result>();
        result->methods = spec.methods;
        result->value = al::run_traversal(spec);
        *out = result.release();
    });
}

void al_bench_result_free(al_bench_result* result) { delete result; }

size_t al_bench_result_method_count(const al_bench_result* result) {
    return result ? result->value.stats.size() : 0;
}

al_status al_bench_result_stats(const al_bench_result* result, size_t index, al_method_stats* out) {
    return guarded([&] {
        require(result && out, "null argument");
        require(index < result->value.stats.size(), "method index out of range");
        *out = to_c(result->value.stats[index]);
    });
}

al_status al_bench_result_write_stats(const al_bench_result* result, const char* placement, double level,
                                      const char* path) {
    return guarded([&] {
        require(result && placement, "null argument");
        with_output(path, [&](std::ostream& os) { al::write_stats_csv(os, placement, level, result->value.stats); });
    });
}

al_status al_bench_result_write_restored(const al_bench_result* result, const char* path) {
    return guarded([&] {
        require(result != nullptr, "result is null");
        with_output(path, [&](std::ostream& os) {
            al::write_restored_csv(os, result->methods, result->value.restored);
        });
    });
}

/* Noise sweep */

al_status al_noise_sweep(const al_trajectory* trajectory, const al_sweep_config* config, al_sweep_result** out) {
    return guarded([&] {
        require(trajectory && config && out, "null argument");
        require(config->placement_count > 0 && config->placements, "no placements");
        require(config->level_count > 0 && config->levels, "no noise levels");
        al::SweepSpec spec;
        for (std::size_t i = 0; i < config->placement_count; ++i) {
            require(config->placements[i] != nullptr, "placement is null");
            std::string name = config->placement_names && config->placement_names[i]
                                   ? config->placement_names[i]
                                   : "ap" + std::to_string(i + 1);
            spec.placements.push_back({std::move(name), config->placements[i]->value});
        }
        spec.trajectory = trajectory->value.points();
        spec.levels.assign(config->levels, config->levels + config->level_count);
        if (config->kind_count > 0) {
            require(config->kinds != nullptr, "kinds are null");
            spec.kinds.clear();
            for (std::size_t i = 0; i < config->kind_count; ++i) spec.kinds.push_back(to_cpp(config->kinds[i]));
        }
        spec.repetitions = config->repetitions;
        if (config->method_count > 0) spec.methods = methods_of(config->methods, config->method_count);
        spec.gdm = to_cpp(config->gdm);
        spec.seed = config->seed;
        *out = new al_sweep_result{al::noise_sweep(spec)};
    });
}

void al_sweep_result_free(al_sweep_result* result) { delete result; }

size_t al_sweep_result_size(const al_sweep_result* result) { return result ? result->rows.size() : 0; }

al_status al_sweep_result_row(const al_sweep_result* result, size_t index, const char** placement,
                              al_noise_kind* kind, double* level, al_method_stats* stats) {
    return guarded([&] {
        require(result != nullptr, "result is null");
        require(index < result->rows.size(), "row index out of range");
        const auto& row = result->rows[index];
        if (placement) *placement = row.placement.c_str();
        if (kind) *kind = to_c(row.kind);
        if (level) *level = row.level;
        if (stats) *stats = to_c(row.stats);
    });
}

al_status al_sweep_result_write(const al_sweep_result* result, const char* path) {
    return guarded([&] {
        require(result != nullptr, "result is null");
        with_output(path, [&](std::ostream& os) { al::write_sweep_csv(os, result->rows); });
    });
}

/* Random placement study */

void al_rgap_config_default(al_rgap_config* out) {
    if (!out) return;
    const al::RgapSpec d;
    *out = al_rgap_config{};
    out->anchor_count = d.anchor_count;
    out->upper_half = 0;
    out->placements = d.placements;
    out->noise = {to_c(d.noise.kind), d.noise.level, d.noise.seed};
    out->repetitions = d.repetitions;
    al_gdm_config_default(&out->gdm);
    out->region = {d.region.min().x, d.region.min().y, d.region.max().x, d.region.max().y};
}

al_status al_rgap_study(const al_trajectory* trajectory, const al_rgap_config* config, al_rgap_result** out) {
    return guarded([&] {
        require(trajectory && config && out, "null argument");
        al::RgapSpec spec;
        spec.anchor_count = config->anchor_count;
        spec.area = config->upper_half ? al::PlacementArea::UpperHalf : al::PlacementArea::Full;
        spec.placements = config->placements;
        spec.noise = to_cpp(config->noise);
        spec.repetitions = config->repetitions;
        spec.methods = methods_of(config->methods, config->method_count);
        spec.gdm = to_cpp(config->gdm);
        spec.region = to_cpp(config->region);
        spec.trajectory = trajectory->value.points();
        auto result = std::make_unique<al_rgap_result>();
        result->methods = spec.methods;
        result->value = al::rgap_study(spec);
        *out = result.release();
    });
}

void al_rgap_result_free(al_rgap_result* result) { delete result; }

size_t al_rgap_result_placement_count(const al_rgap_result* result) {
    return result ? result->value.placements.size() : 0;
}

size_t al_rgap_result_method_count(const al_rgap_result* result) { return result ? result->methods.size() : 0; }

double al_rgap_result_mean_score(const al_rgap_result* result) { return result ? result->value.mean_score : 0.0; }

size_t al_rgap_result_redraws(const al_rgap_result* result) { return result ? result->value.redraws : 0; }

al_status al_rgap_result_placement(const al_rgap_result* result, size_t index, double* score,
                                   al_anchor_set** anchors) {
    return guarded([&] {
        require(result != nullptr, "result is null");
        require(index < result->value.placements.size(), "placement index out of range");
        const auto& p = result->value.placements[index];
        if (score) *score = p.score;
        if (anchors) *anchors = new al_anchor_set{p.anchors};
    });
}

al_status al_rgap_result_method(const al_rgap_result* result, size_t index, al_method* method, double* mean_error,
                                double* score_error_rank) {
    return guarded([&] {
        require(result != nullptr, "result is null");
        require(index < result->methods.size(), "method index out of range");
        if (method) *method = to_c(result->methods[index]);
        if (mean_error) *mean_error = result->value.mean_error[index];
        if (score_error_rank) *score_error_rank = result->value.score_error_rank[index];
    });
}

al_status al_rgap_result_write(const al_rgap_result* result, const char* path) {
    return guarded([&] {
        require(result != nullptr, "result is null");
        with_output(path, [&](std::ostream& os) {
            al::write_rgap_csv(os, result->methods, result->value.placements);
        });
    });
}

/* Field logs and replay */

al_status al_field_log_load(const char* path, double gap_threshold, al_field_log** out) {
    return guarded([&] {
        require(path && out, "null argument");
        if (gap_threshold <= 0.0) gap_threshold = al::kDefaultGapThreshold;
        *out = new al_field_log{al::make_field_log(al::load_range_log(path), gap_threshold)};
    });
}

al_status al_field_log_synthesize(const al_anchor_set* anchors, const al_trajectory* path,
                                  const al_noise_model* noise, double period, al_field_log** out) {
    return guarded([&] {
        require(anchors && path && noise && out, "null argument");
        auto log = al::synthesize_range_log(anchors->value, path->value.points(), to_cpp(*noise), period);
        *out = new al_field_log{al::make_field_log(std::move(log))};
    });
}

al_status al_field_log_save(const al_field_log* log, const char* path) {
    return guarded([&] {
        require(log != nullptr, "log is null");
        with_output(path, [&](std::ostream& os) { al::write_range_log(os, log->value.log); });
    });
}

void al_field_log_free(al_field_log* log) { delete log; }

size_t al_field_log_size(const al_field_log* log) { return log ? log->value.log.rows.size() : 0; }

size_t al_field_log_malformed(const al_field_log* log) { return log ? log->value.log.malformed : 0; }

size_t al_field_log_gaps(const al_field_log* log) { return log ? log->value.gaps : 0; }

al_status al_replay(const al_field_log* log, const al_anchor_set* anchors, const al_method* methods,
                    size_t method_count, const al_gdm_config* gdm, al_replay_result** out) {
    return guarded([&] {
        require(log && anchors && out, "null argument");
        const al::GdmConfig cfg = gdm ? to_cpp(*gdm) : al::GdmConfig{};
        *out = new al_replay_result{al::replay(log->value, anchors->value, methods_of(methods, method_count), cfg)};
    });
}

void al_replay_result_free(al_replay_result* result) { delete result; }

size_t al_replay_result_size(const al_replay_result* result) { return result ? result->value.rows.size() : 0; }

size_t al_replay_result_method_count(const al_replay_result* result) {
    return result ? result->value.methods.size() : 0;
}

int al_replay_result_has_truth(const al_replay_result* result) {
    return result && !result->value.rows.empty() && result->value.rows.front().truth ? 1 : 0;
}

al_status al_replay_result_stats(const al_replay_result* result, size_t index, al_method_stats* out) {
    return guarded([&] {
        require(result && out, "null argument");
        require(index < result->value.stats.size(), "method index out of range");
        *out = to_c(result->value.stats[index]);
    });
}

al_status al_replay_result_estimate(const al_replay_result* result, size_t row, size_t method, al_point* out) {
    return guarded([&] {
        require(result && out, "null argument");
        require(row < result->value.rows.size(), "row index out of range");
        require(method < result->value.methods.size(), "method index out of range");
        *out = to_c(result->value.rows[row].estimates[method]);
    });
}

al_status al_replay_result_write(const al_replay_result* result, const char* path) {
    return guarded([&] {
        require(result != nullptr, "result is null");
        with_output(path, [&](std::ostream& os) { al::write_replay_csv(os, result->value); });
    });
}

/* Geographic transform */

void al_geo_transform_field_testbed(al_geo_transform* out) {
    if (out) *out = to_c(al::GeoTransform::field_testbed());
}

al_status al_geo_transform_load(const char* path, al_geo_transform* out) {
    return guarded([&] {
        require(path && out, "null argument");
        *out = to_c(al::load_geo_transform(path));
    });
}

al_status al_geo_to_local(const al_geo_transform* transform, double lon, double lat, al_point* out) {
    return guarded([&] {
        require(transform && out, "null argument");
        *out = to_c(al::geo_to_local(to_cpp(*transform), lon, lat));
    });
}

}  // extern "C"
