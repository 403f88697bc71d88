// anchorlab command-line front end. Talks to the library only through the C API.

#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "anchorlab/anchorlab.h"

namespace {

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void check(al_status status, const std::string& what) {
    if (status != AL_OK) throw Failure(what + ": " + al_last_error());
}

template <class T, void (*Free)(T*)>
struct Deleter {
    void operator()(T* p) const { Free(p); }
};

using AnchorsPtr = std::unique_ptr<al_anchor_set, Deleter<al_anchor_set, al_anchor_set_free>>;
using TrajectoryPtr = std::unique_ptr<al_trajectory, Deleter<al_trajectory, al_trajectory_free>>;
using GridPtr = std::unique_ptr<al_grid, Deleter<al_grid, al_grid_free>>;
using BenchPtr = std::unique_ptr<al_bench_result, Deleter<al_bench_result, al_bench_result_free>>;
using SweepPtr = std::unique_ptr<al_sweep_result, Deleter<al_sweep_result, al_sweep_result_free>>;
using RgapPtr = std::unique_ptr<al_rgap_result, Deleter<al_rgap_result, al_rgap_result_free>>;
using LogPtr = std::unique_ptr<al_field_log, Deleter<al_field_log, al_field_log_free>>;
using ReplayPtr = std::unique_ptr<al_replay_result, Deleter<al_replay_result, al_replay_result_free>>;

std::string fixed(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::vector<std::string> split(const std::string& text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto comma = text.find(',', start);
        out.push_back(text.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

std::vector<al_method> parse_methods(const std::string& text) {
    std::vector<al_method> out;
    for (const auto& name : split(text)) {
        al_method m;
        check(al_method_parse(name.c_str(), &m), "--methods");
        out.push_back(m);
    }
    return out;
}

std::vector<double> parse_levels(const std::string& text) {
    std::vector<double> out;
    for (const auto& item : split(text)) {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (ec != std::errc() || ptr != item.data() + item.size()) throw Failure("--levels: bad number '" + item + "'");
        out.push_back(v);
    }
    return out;
}

al_region parse_region(const std::string& text) {
    al_region r;
    check(al_region_parse(text.c_str(), &r), "--region");
    return r;
}

al_noise_kind parse_model(const std::string& text) {
    al_noise_kind k;
    check(al_noise_kind_parse(text.c_str(), &k), "--model");
    return k;
}

std::uint64_t default_seed() {
    const char* env = std::getenv("ANCHORLAB_SEED");
    if (!env || !*env) return 1;
    const std::string s = env;
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw Failure("ANCHORLAB_SEED is not an unsigned integer: '" + s + "'");
    return v;
}

struct AnchorOptions {
    std::string file;
    std::string geo;
};

void add_anchor_options(CLI::App* cmd, AnchorOptions& opt, bool required = true) {
    auto* o = cmd->add_option("--anchors", opt.file, "anchor CSV (id,x,y or id,lon,lat)")->check(CLI::ExistingFile);
    if (required) o->required();
    cmd->add_option("--geo", opt.geo, "geo transform CSV for lon/lat anchor files")->check(CLI::ExistingFile);
}

AnchorsPtr load_anchors(const AnchorOptions& opt) {
    std::optional<al_geo_transform> geo;
    if (!opt.geo.empty()) {
        al_geo_transform t;
        check(al_geo_transform_load(opt.geo.c_str(), &t), opt.geo);
        geo = t;
    }
    al_anchor_set* raw = nullptr;
    check(al_anchor_set_load(opt.file.c_str(), geo ? &*geo : nullptr, &raw), opt.file);
    return AnchorsPtr(raw);
}

TrajectoryPtr load_or_default_trajectory(const std::string& file) {
    al_trajectory* raw = nullptr;
    if (file.empty()) {
        const al_region area{0, 0, 100, 100};
        check(al_trajectory_hilbert(6, &area, 8190, &raw), "standard trajectory");
    } else {
        check(al_trajectory_load(file.c_str(), &raw), file);
    }
    return TrajectoryPtr(raw);
}

struct NoiseOptions {
    double level = 0.0;
    std::string model = "gaussian";
    std::uint64_t seed = 0;
};

void add_noise_options(CLI::App* cmd, NoiseOptions& opt) {
    cmd->add_option("--noise-level", opt.level, "ranging noise standard deviation in meters")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--model", opt.model, "gaussian or uniform");
    cmd->add_option("--seed", opt.seed, "RNG seed (default from ANCHORLAB_SEED, else 1)");
}

al_noise_model noise_of(const NoiseOptions& opt) { return {parse_model(opt.model), opt.level, opt.seed}; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"anchor placement and range-based localization toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(al_version()));

    std::uint64_t env_seed = 1;
    try {
        env_seed = default_seed();
    } catch (const Failure& e) {
        std::fprintf(stderr, "anchorlab: %s\n", e.what());
        return 2;
    }

    // hilbert
    int h_order = 6;
    std::string h_region = "0,0,100,100";
    std::size_t h_points = 8190;
    std::string h_out = "-";
    auto* hilbert = app.add_subcommand("hilbert", "write a Hilbert-curve trajectory as CSV");
    hilbert->add_option("--order", h_order, "curve order")->check(CLI::Range(1, 15));
    hilbert->add_option("--region", h_region, "xmin,ymin,xmax,ymax");
    hilbert->add_option("--points", h_points, "resampled point count")->check(CLI::PositiveNumber);
    hilbert->add_option("--out", h_out, "output file, - for stdout");

    // lvt
    AnchorOptions l_anchors;
    std::string l_region;
    std::vector<std::size_t> l_grid{101, 101};
    bool l_pgm = false;
    std::string l_out = "-";
    auto* lvt = app.add_subcommand("lvt", "multi-anchor GDOP raster");
    add_anchor_options(lvt, l_anchors);
    lvt->add_option("--region", l_region, "xmin,ymin,xmax,ymax")->required();
    lvt->add_option("--grid", l_grid, "NX NY node counts")->expected(2);
    lvt->add_flag("--pgm", l_pgm, "write a binary PGM heightmap instead of CSV");
    lvt->add_option("--out", l_out, "output file, - for stdout");

    // score
    AnchorOptions s_anchors;
    std::string s_region;
    std::string s_trajectory;
    std::size_t s_subdivisions = 100;
    auto* score = app.add_subcommand("score", "placement score over a region or along a trajectory");
    add_anchor_options(score, s_anchors);
    auto* s_region_opt = score->add_option("--region", s_region, "xmin,ymin,xmax,ymax");
    auto* s_traj_opt = score->add_option("--trajectory", s_trajectory, "trajectory CSV")->check(CLI::ExistingFile);
    s_region_opt->excludes(s_traj_opt);
    score->add_option("--subdivisions", s_subdivisions, "sub-areas per axis for the region score")
        ->check(CLI::PositiveNumber);

    // osap
    AnchorOptions o_anchors;
    std::string o_region;
    std::vector<std::size_t> o_grid{101, 101};
    NoiseOptions o_noise;
    o_noise.seed = env_seed;
    bool o_pgm = false;
    std::string o_out = "-";
    auto* osap = app.add_subcommand("osap", "optimal anchor pair map");
    add_anchor_options(osap, o_anchors);
    osap->add_option("--region", o_region, "xmin,ymin,xmax,ymax")->required();
    osap->add_option("--grid", o_grid, "NX NY node counts")->expected(2);
    add_noise_options(osap, o_noise);
    osap->add_flag("--pgm", o_pgm, "write a binary PGM instead of CSV");
    osap->add_option("--out", o_out, "output file, - for stdout");

    // bench
    AnchorOptions b_anchors;
    std::string b_trajectory;
    NoiseOptions b_noise;
    b_noise.seed = env_seed;
    int b_reps = 10;
    std::string b_methods = "lsm,gdm,tplm";
    std::string b_name;
    std::string b_out = "-";
    std::string b_restored;
    auto* bench = app.add_subcommand("bench", "repeated trajectory traversal benchmark");
    add_anchor_options(bench, b_anchors);
    bench->add_option("--trajectory", b_trajectory, "trajectory CSV (default: order-6 Hilbert, 8190 points)")
        ->check(CLI::ExistingFile);
    add_noise_options(bench, b_noise);
    bench->add_option("--reps", b_reps, "traversals")->check(CLI::PositiveNumber);
    bench->add_option("--methods", b_methods, "comma-separated subset of lsm,gdm,tplm");
    bench->add_option("--name", b_name, "placement label for the ap column (default: anchor file stem)");
    bench->add_option("--out", b_out, "stats CSV, - for stdout");
    bench->add_option("--restored", b_restored, "also write restored positions to this CSV");

    // sweep
    std::vector<std::string> w_anchor_files;
    std::string w_geo;
    std::string w_standard;
    std::string w_trajectory;
    std::string w_levels = "0.1,0.3,0.5,1.0";
    std::string w_models = "gaussian,uniform";
    int w_reps = 10;
    std::string w_methods = "gdm,tplm";
    std::uint64_t w_seed = env_seed;
    std::string w_out = "-";
    auto* sweep = app.add_subcommand("sweep", "error versus noise level for several placements");
    sweep->add_option("--anchors", w_anchor_files, "anchor CSV, repeatable")->check(CLI::ExistingFile);
    sweep->add_option("--geo", w_geo, "geo transform CSV for lon/lat anchor files")->check(CLI::ExistingFile);
    sweep->add_option("--standard", w_standard, "comma-separated built-in placements (ap1..ap4)");
    sweep->add_option("--trajectory", w_trajectory, "trajectory CSV")->check(CLI::ExistingFile);
    sweep->add_option("--levels", w_levels, "comma-separated noise levels");
    sweep->add_option("--models", w_models, "comma-separated noise models");
    sweep->add_option("--reps", w_reps, "traversals per cell")->check(CLI::PositiveNumber);
    sweep->add_option("--methods", w_methods, "comma-separated subset of lsm,gdm,tplm");
    sweep->add_option("--seed", w_seed, "RNG seed");
    sweep->add_option("--out", w_out, "CSV, - for stdout");

    // rgap
    std::size_t r_count = 3;
    std::string r_area = "full";
    std::size_t r_placements = 100;
    NoiseOptions r_noise;
    r_noise.level = 0.3;
    r_noise.seed = env_seed;
    int r_reps = 1;
    std::string r_methods = "lsm,gdm,tplm";
    std::string r_trajectory;
    std::string r_out;
    auto* rgap = app.add_subcommand("rgap", "random anchor placement study");
    rgap->add_option("--anchor-count", r_count, "anchors per placement")->check(CLI::Range(2, 64));
    rgap->add_option("--area", r_area, "full or upper")->check(CLI::IsMember({"full", "upper"}));
    rgap->add_option("--placements", r_placements, "number of placements")->check(CLI::PositiveNumber);
    add_noise_options(rgap, r_noise);
    rgap->add_option("--reps", r_reps, "traversals per placement")->check(CLI::PositiveNumber);
    rgap->add_option("--methods", r_methods, "comma-separated subset of lsm,gdm,tplm");
    rgap->add_option("--trajectory", r_trajectory, "trajectory CSV")->check(CLI::ExistingFile);
    rgap->add_option("--out", r_out, "per-placement CSV");

    // synth
    AnchorOptions y_anchors;
    std::string y_trajectory;
    NoiseOptions y_noise;
    y_noise.seed = env_seed;
    double y_period = 0.5;
    std::string y_out = "-";
    auto* synth = app.add_subcommand("synth", "simulate a range log along a trajectory");
    add_anchor_options(synth, y_anchors);
    synth->add_option("--trajectory", y_trajectory, "trajectory CSV")->check(CLI::ExistingFile);
    add_noise_options(synth, y_noise);
    synth->add_option("--period", y_period, "seconds between rows")->check(CLI::PositiveNumber);
    synth->add_option("--out", y_out, "range log CSV, - for stdout");

    // replay
    std::string p_log;
    AnchorOptions p_anchors;
    std::string p_methods = "lsm,gdm,tplm";
    double p_gap = 3.0;
    std::string p_out = "-";
    std::string p_stats;
    auto* replay = app.add_subcommand("replay", "run the localizers on a recorded range log");
    replay->add_option("--log", p_log, "range log CSV")->required()->check(CLI::ExistingFile);
    add_anchor_options(replay, p_anchors);
    replay->add_option("--methods", p_methods, "comma-separated subset of lsm,gdm,tplm");
    replay->add_option("--gap", p_gap, "gap threshold in seconds")->check(CLI::PositiveNumber);
    replay->add_option("--out", p_out, "restored trajectory CSV, - for stdout");
    replay->add_option("--stats", p_stats, "error statistics CSV when the log carries truth");

    // geo
    std::string g_transform;
    bool g_testbed = false;
    double g_lon = 0.0;
    double g_lat = 0.0;
    auto* geo = app.add_subcommand("geo", "convert longitude/latitude to local meters");
    auto* g_transform_opt = geo->add_option("--transform", g_transform, "transform CSV")->check(CLI::ExistingFile);
    auto* g_testbed_opt = geo->add_flag("--testbed", g_testbed, "use the built-in field testbed transform");
    g_transform_opt->excludes(g_testbed_opt);
    geo->add_option("--lon", g_lon, "longitude in degrees")->required();
    geo->add_option("--lat", g_lat, "latitude in degrees")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*hilbert) {
            const al_region region = parse_region(h_region);
            al_trajectory* raw = nullptr;
            check(al_trajectory_hilbert(h_order, &region, h_points, &raw), "hilbert");
            TrajectoryPtr t(raw);
            check(al_trajectory_save(t.get(), h_out.c_str()), h_out);
        } else if (*lvt) {
            auto anchors = load_anchors(l_anchors);
            const al_region region = parse_region(l_region);
            al_grid* raw = nullptr;
            check(al_lvt_grid(anchors.get(), &region, l_grid[0], l_grid[1], &raw), "lvt");
            GridPtr g(raw);
            check(l_pgm ? al_grid_write_pgm(g.get(), l_out.c_str()) : al_grid_write_csv(g.get(), l_out.c_str()), l_out);
        } else if (*score) {
            auto anchors = load_anchors(s_anchors);
            double value = 0.0;
            std::size_t adjusted = 0;
            if (!s_trajectory.empty()) {
                TrajectoryPtr t = load_or_default_trajectory(s_trajectory);
                check(al_trajectory_score(anchors.get(), t.get(), &value, &adjusted), "score");
                if (adjusted) std::fprintf(stderr, "anchorlab: skipped %zu samples on an anchor\n", adjusted);
            } else {
                if (s_region.empty()) throw Failure("score: one of --region or --trajectory is required");
                const al_region region = parse_region(s_region);
                check(al_region_score(anchors.get(), &region, s_subdivisions, &value, &adjusted), "score");
                if (adjusted) std::fprintf(stderr, "anchorlab: moved %zu nodes off an anchor\n", adjusted);
            }
            std::printf("%s\n", fixed(value).c_str());
        } else if (*osap) {
            auto anchors = load_anchors(o_anchors);
            const al_region region = parse_region(o_region);
            std::optional<al_noise_model> noise;
            if (o_noise.level > 0.0) noise = noise_of(o_noise);
            al_grid* raw = nullptr;
            check(al_osap_map(anchors.get(), &region, o_grid[0], o_grid[1], noise ? &*noise : nullptr, &raw), "osap");
            GridPtr g(raw);
            check(o_pgm ? al_grid_write_pgm(g.get(), o_out.c_str()) : al_grid_write_csv(g.get(), o_out.c_str()), o_out);
        } else if (*bench) {
            auto anchors = load_anchors(b_anchors);
            auto trajectory = load_or_default_trajectory(b_trajectory);
            const auto methods = parse_methods(b_methods);
            al_bench_config cfg;
            al_bench_config_default(&cfg);
            cfg.noise = noise_of(b_noise);
            cfg.repetitions = b_reps;
            cfg.methods = methods.data();
            cfg.method_count = methods.size();
            cfg.keep_restored = b_restored.empty() ? 0 : 1;
            al_bench_result* raw = nullptr;
            check(al_run_traversal(anchors.get(), trajectory.get(), &cfg, &raw), "bench");
            BenchPtr result(raw);
            const std::string name = b_name.empty() ? std::filesystem::path(b_anchors.file).stem().string() : b_name;
            check(al_bench_result_write_stats(result.get(), name.c_str(), b_noise.level, b_out.c_str()), b_out);
            if (!b_restored.empty()) check(al_bench_result_write_restored(result.get(), b_restored.c_str()), b_restored);
            for (std::size_t i = 0; i < al_bench_result_method_count(result.get()); ++i) {
                al_method_stats s;
                check(al_bench_result_stats(result.get(), i, &s), "bench");
                if (s.failures) {
                    std::fprintf(stderr, "anchorlab: %s diverged on %zu samples (excluded)\n",
                                 al_method_name(s.method), s.failures);
                }
            }
        } else if (*sweep) {
            std::vector<AnchorsPtr> owned;
            std::vector<std::string> names;
            for (const auto& file : w_anchor_files) {
                owned.push_back(load_anchors({file, w_geo}));
                names.push_back(std::filesystem::path(file).stem().string());
            }
            std::string standard = w_standard;
            if (standard.empty() && owned.empty()) standard = "ap1,ap2,ap3,ap4";
            if (!standard.empty()) {
                for (const auto& name : split(standard)) {
                    al_anchor_set* raw = nullptr;
                    check(al_anchor_set_standard(name.c_str(), &raw), "--standard");
                    owned.emplace_back(raw);
                    names.push_back(name);
                }
            }
            std::vector<const al_anchor_set*> placements;
            std::vector<const char*> name_ptrs;
            for (std::size_t i = 0; i < owned.size(); ++i) {
                placements.push_back(owned[i].get());
                name_ptrs.push_back(names[i].c_str());
            }
            const auto levels = parse_levels(w_levels);
            std::vector<al_noise_kind> kinds;
            for (const auto& m : split(w_models)) kinds.push_back(parse_model(m));
            const auto methods = parse_methods(w_methods);
            auto trajectory = load_or_default_trajectory(w_trajectory);

            al_sweep_config cfg{};
            cfg.placements = placements.data();
            cfg.placement_names = name_ptrs.data();
            cfg.placement_count = placements.size();
            cfg.levels = levels.data();
            cfg.level_count = levels.size();
            cfg.kinds = kinds.data();
            cfg.kind_count = kinds.size();
            cfg.repetitions = w_reps;
            cfg.methods = methods.data();
            cfg.method_count = methods.size();
            al_gdm_config_default(&cfg.gdm);
            cfg.seed = w_seed;
            al_sweep_result* raw = nullptr;
            check(al_noise_sweep(trajectory.get(), &cfg, &raw), "sweep");
            SweepPtr result(raw);
            check(al_sweep_result_write(result.get(), w_out.c_str()), w_out);
        } else if (*rgap) {
            auto trajectory = load_or_default_trajectory(r_trajectory);
            const auto methods = parse_methods(r_methods);
            al_rgap_config cfg;
            al_rgap_config_default(&cfg);
            cfg.anchor_count = r_count;
            cfg.upper_half = r_area == "upper" ? 1 : 0;
            cfg.placements = r_placements;
            cfg.noise = noise_of(r_noise);
            cfg.repetitions = r_reps;
            cfg.methods = methods.data();
            cfg.method_count = methods.size();
            al_rgap_result* raw = nullptr;
            check(al_rgap_study(trajectory.get(), &cfg, &raw), "rgap");
            RgapPtr result(raw);
            if (!r_out.empty()) check(al_rgap_result_write(result.get(), r_out.c_str()), r_out);
            std::printf("anchors,area,placements,mean_score");
            for (const auto m : methods) std::printf(",%s_mean_error,%s_rank", al_method_name(m), al_method_name(m));
            std::printf("\n%zu,%s,%zu,%s", r_count, r_area.c_str(), al_rgap_result_placement_count(result.get()),
                        fixed(al_rgap_result_mean_score(result.get())).c_str());
            for (std::size_t i = 0; i < methods.size(); ++i) {
                double err = 0.0, rank = 0.0;
                check(al_rgap_result_method(result.get(), i, nullptr, &err, &rank), "rgap");
                std::printf(",%s,%s", fixed(err).c_str(), fixed(rank).c_str());
            }
            std::printf("\n");
        } else if (*synth) {
            auto anchors = load_anchors(y_anchors);
            auto trajectory = load_or_default_trajectory(y_trajectory);
            const al_noise_model noise = noise_of(y_noise);
            al_field_log* raw = nullptr;
            check(al_field_log_synthesize(anchors.get(), trajectory.get(), &noise, y_period, &raw), "synth");
            LogPtr log(raw);
            check(al_field_log_save(log.get(), y_out.c_str()), y_out);
        } else if (*replay) {
            auto anchors = load_anchors(p_anchors);
            al_field_log* raw_log = nullptr;
            check(al_field_log_load(p_log.c_str(), p_gap, &raw_log), p_log);
            LogPtr log(raw_log);
            if (al_field_log_malformed(log.get())) {
                std::fprintf(stderr, "anchorlab: skipped %zu malformed rows\n", al_field_log_malformed(log.get()));
            }
            if (al_field_log_gaps(log.get())) {
                std::fprintf(stderr, "anchorlab: %zu sampling gaps longer than %s s\n", al_field_log_gaps(log.get()),
                             fixed(p_gap).c_str());
            }
            const auto methods = parse_methods(p_methods);
            al_replay_result* raw = nullptr;
            check(al_replay(log.get(), anchors.get(), methods.data(), methods.size(), nullptr, &raw), "replay");
            ReplayPtr result(raw);
            check(al_replay_result_write(result.get(), p_out.c_str()), p_out);
            if (!p_stats.empty()) {
                if (!al_replay_result_has_truth(result.get())) throw Failure("--stats: log has no truth columns");
                std::FILE* f = p_stats == "-" ? stdout : std::fopen(p_stats.c_str(), "w");
                if (!f) throw Failure("cannot open '" + p_stats + "' for writing");
                std::fprintf(f, "method,ave,std,samples,failures\n");
                for (std::size_t i = 0; i < al_replay_result_method_count(result.get()); ++i) {
                    al_method_stats s;
                    check(al_replay_result_stats(result.get(), i, &s), "replay");
                    std::fprintf(f, "%s,%s,%s,%zu,%zu\n", al_method_name(s.method), fixed(s.mean).c_str(),
                                 fixed(s.stddev).c_str(), s.samples, s.failures);
                }
                if (f != stdout) std::fclose(f);
            }
        } else if (*geo) {
            al_geo_transform t;
            if (g_testbed) {
                al_geo_transform_field_testbed(&t);
            } else if (!g_transform.empty()) {
                check(al_geo_transform_load(g_transform.c_str(), &t), g_transform);
            } else {
                throw Failure("geo: one of --transform or --testbed is required");
            }
            al_point p;
            check(al_geo_to_local(&t, g_lon, g_lat, &p), "geo");
            std::printf("%s,%s\n", fixed(p.x).c_str(), fixed(p.y).c_str());
        }
    } catch (const Failure& e) {
        std::fprintf(stderr, "anchorlab: %s\n", e.what());
        return 1;
    }
    return 0;
}
