#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "csv_io.hpp"
#include "json.hpp"
#include "trajscan/harness.hpp"

#ifndef TRAJSCAN_VERSION
#define TRAJSCAN_VERSION "0.0.0"
#endif

using json = nlohmann::ordered_json;
using namespace trajscan;

namespace {

constexpr int kSchema = 1;

/// Bad flag combinations detected after parsing.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

json point_json(Point p) { return json::array({p.x, p.y}); }

json shape_json(const Shape& shape) {
    return std::visit(
        [](const auto& s) -> json {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Halfplane>)
                return {{"type", "halfplane"}, {"normal", point_json(s.normal)}, {"offset", s.offset}};
            else if constexpr (std::is_same_v<T, Disk>)
                return {{"type", "disk"}, {"center", point_json(s.center)}, {"radius", s.radius}};
            else
                return {{"type", "rect"}, {"x_lo", s.x_lo}, {"x_hi", s.x_hi}, {"y_lo", s.y_lo}, {"y_hi", s.y_hi}};
        },
        shape);
}

json stats_json(const RegionStats& st) { return {{"r_frac", st.r_frac}, {"b_frac", st.b_frac}, {"phi", st.phi}}; }

json report_json(const io::IngestReport& rep) {
    return {{"trajectories", rep.trajectories},
            {"waypoints", rep.waypoints},
            {"bbox", {{"x_lo", rep.lo.x}, {"y_lo", rep.lo.y}, {"x_hi", rep.hi.x}, {"y_hi", rep.hi.y}}}};
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("TRAJSCAN_SEED")) {
        try {
            std::size_t used = 0;
            const std::string s(env);
            const auto v = std::stoull(s, &used);
            if (used == s.size()) return v;
        } catch (const std::exception&) {
        }
        throw ConfigError(std::string("TRAJSCAN_SEED is not an unsigned integer: '") + env + "'");
    }
    return 0;
}

/// Loads and normalizes a waypoint CSV.
TrajectoryDataset load(const std::string& path, io::IngestReport& rep) {
    auto raw = io::read_waypoint_csv_file(path, &rep);
    validate(raw);
    return normalize(raw);
}

// Flags shared by scan, oracle, plant and power.
struct ModelFlags {
    std::string model = "full";
    std::string family = "disk";
    std::string fn = "kulldorff";
    bool one_sided = false;

    void add(CLI::App* app) {
        app->add_option("--model", model, "flux | partial | full")->check(CLI::IsMember({"flux", "partial", "full"}));
        app->add_option("--family", family, "halfplane | disk | rect")
            ->check(CLI::IsMember({"halfplane", "disk", "rect"}));
        app->add_option("--fn", fn, "kulldorff | linear")->check(CLI::IsMember({"kulldorff", "linear"}));
        app->add_flag("--one-sided", one_sided, "Kulldorff scores only regions with r > b");
    }
    [[nodiscard]] DiscrepancyFn discrepancy() const { return {parse_discrepancy(fn), one_sided}; }
};

struct ScanFlags {
    double eps = 0.1;
    double delta = 0.1;
    double c_net = 1.0;
    double c_sample = 0.25;
    std::size_t net_size = 0;
    std::size_t sample_size = 0;
    double alpha = 0.01;
    double r_min = 1.0 / 6000.0;
    double r_max = 1.0 / 300.0;
    int z = 0;
    std::string coreset;
    std::string partial_method = "even";
    std::optional<double> max_side;
    double mass_cap = 0.0;
    bool naive_disk = false;
    bool hull_trick = false;
    bool exact_eval = false;

    void add(CLI::App* app) {
        app->add_option("--eps", eps, "sampling error");
        app->add_option("--delta", delta, "failure probability");
        app->add_option("--c-net", c_net, "net size constant");
        app->add_option("--c-sample", c_sample, "sample size constant");
        app->add_option("--net-size", net_size, "fixed net size n (0: from eps, delta)");
        app->add_option("--sample-size", sample_size, "fixed sample size s (0: from eps, delta)");
        app->add_option("--alpha", alpha, "spatial approximation error");
        app->add_option("--r-min", r_min, "smallest disk radius (full-model disks)");
        app->add_option("--r-max", r_max, "largest disk radius (full-model disks)");
        app->add_option("--z", z, "multiscale subranges; default log2(r_max / r_min)");
        app->add_option("--coreset", coreset,
                        "all_waypoints | random_sample | even | douglas_peucker | convex_hull | approx_hull | "
                        "lifted_hull | grid_kernel | gridding");
        app->add_option("--partial-method", partial_method, "even | random_sample")
            ->check(CLI::IsMember({"even", "random_sample"}));
        app->add_option("--max-side", max_side, "largest rectangle side");
        app->add_option("--mass-cap", mass_cap, "baseline mass a rectangle grid row/column must reach");
        app->add_flag("--naive-disk", naive_disk, "full-model disks through all net points, no radius window");
        app->add_flag("--hull-trick", hull_trick, "keep only parameter-space hull points per pivot");
        app->add_flag("--exact-eval", exact_eval, "multiscale: evaluate disks on all sample points they can reach");
    }

    [[nodiscard]] ScanSettings settings(const ModelFlags& mf, std::uint64_t seed, double unit) const {
        ScanSettings st;
        st.model = parse_model(mf.model);
        st.family = parse_shape_family(mf.family);
        st.fn = mf.discrepancy();
        st.eps = eps;
        st.delta = delta;
        st.c_net = c_net;
        st.c_sample = c_sample;
        st.net_override = net_size;
        st.sample_override = sample_size;
        st.alpha = alpha * unit;
        st.r_min = r_min * unit;
        st.r_max = r_max * unit;
        st.z = z;
        st.naive_disk = naive_disk;
        st.hull_trick = hull_trick;
        st.exact_eval = exact_eval;
        if (!coreset.empty()) st.coreset = parse_coreset_tag(coreset);
        st.partial_method = parse_coreset_tag(partial_method);
        if (max_side) st.max_side = *max_side * unit;
        st.mass_cap = mass_cap;
        st.seed = seed;
        st.validate();
        return st;
    }
};

struct SyntheticFlags {
    std::size_t n_traj = 1000;
    std::size_t wp_min = 5;
    std::size_t wp_max = 20;
    double step = 0.02;
    std::string generator = "random_walk";

    void add(CLI::App* app) {
        app->add_option("--n-traj", n_traj, "synthetic trajectories");
        app->add_option("--wp-min", wp_min, "fewest waypoints per trajectory");
        app->add_option("--wp-max", wp_max, "most waypoints per trajectory");
        app->add_option("--step", step, "mean step length");
        app->add_option("--generator", generator, "random_walk | segment_bundle")
            ->check(CLI::IsMember({"random_walk", "segment_bundle"}));
    }
    [[nodiscard]] SyntheticConfig config(std::uint64_t seed) const {
        SyntheticConfig c{n_traj, wp_min, wp_max, step, parse_generator(generator), seed};
        c.validate();
        return c;
    }
};

struct PlantFlags {
    double p = 0.5;
    double q = 0.8;
    double f = 0.05;

    void add(CLI::App* app) {
        app->add_option("--p", p, "recorded rate outside the planted region");
        app->add_option("--q", q, "recorded rate inside the planted region");
        app->add_option("--f", f, "target baseline fraction of the planted region");
    }
};

json result_json(const ModelFlags& mf, const ScanRun& run, const TrajectoryDataset& ds, std::uint64_t seed,
                 bool timing) {
    json j;
    j["schema"] = kSchema;
    j["version"] = TRAJSCAN_VERSION;
    j["model"] = mf.model;
    j["family"] = mf.family;
    j["fn"] = mf.fn;
    j["one_sided"] = mf.one_sided;
    j["found"] = run.result.found;
    j["shape"] = shape_json(ds.transform.inverse(run.result.shape));
    j["shape_normalized"] = shape_json(run.result.shape);
    j["r_frac"] = run.full_stats.r_frac;
    j["b_frac"] = run.full_stats.b_frac;
    j["phi"] = run.full_stats.phi;
    j["sample_estimate"] = stats_json(run.result.stats);
    j["n"] = run.n;
    j["s"] = run.s;
    j["n_k"] = run.n_k;
    j["s_k"] = run.s_k;
    j["candidates"] = run.result.candidates;
    j["seed"] = seed;
    j["runtime_ms"] = timing ? run.runtime_ms : 0.0;
    return j;
}

json error_json(const std::string& kind, const std::string& message, std::size_t line = 0) {
    json e{{"type", kind}, {"message", message}};
    if (line) e["line"] = line;
    return json{{"schema", kSchema}, {"version", TRAJSCAN_VERSION}, {"error", e}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spatial scan statistics over trajectory data"};
    app.set_version_flag("--version", TRAJSCAN_VERSION);
    app.require_subcommand(1);

    unsigned threads = 1;
    std::optional<std::uint64_t> seed_flag;
    std::string output;
    bool no_timing = false;
    app.add_option("--threads", threads, "worker threads (0 = all cores)")->capture_default_str();

    auto common = [&](CLI::App* sub) {
        sub->add_option("--seed", seed_flag, "random seed (default: TRAJSCAN_SEED or 0)");
        sub->add_option("-o,--output", output, "output path (default stdout)");
    };

    // simplify
    auto* simplify_cmd = app.add_subcommand("simplify", "Write per-trajectory coresets as traj_id,x,y CSV");
    std::string input;
    std::string method = "even";
    double s_alpha = 0.01;
    double s_r = 0.0;
    std::string units = "normalized";
    simplify_cmd->add_option("-i,--input", input, "waypoint CSV")->required();
    simplify_cmd->add_option("--method", method, "all | random | even | dp | hull | approx-hull | lifted-hull | grid-kernel | gridding "
                        "(or all_waypoints, random_sample, douglas_peucker, ...)");
    simplify_cmd->add_option("--alpha", s_alpha, "approximation error");
    simplify_cmd->add_option("--r", s_r, "smallest disk radius (grid_kernel)");
    simplify_cmd->add_option("--units", units, "normalized | original")->check(CLI::IsMember({"normalized", "original"}));
    common(simplify_cmd);

    // scan
    auto* scan_cmd = app.add_subcommand("scan", "Find the maximum-discrepancy region");
    ModelFlags scan_model;
    ScanFlags scan_flags;
    scan_cmd->add_option("-i,--input", input, "waypoint CSV")->required();
    scan_cmd->add_option("--units", units, "normalized | original")->check(CLI::IsMember({"normalized", "original"}));
    scan_cmd->add_flag("--no-timing", no_timing, "report runtime_ms as 0");
    scan_model.add(scan_cmd);
    scan_flags.add(scan_cmd);
    common(scan_cmd);

    // oracle
    auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive scan over the combinatorial candidate family");
    ModelFlags oracle_model;
    std::string membership = "segments";
    std::optional<double> o_rmin;
    std::optional<double> o_rmax;
    bool no_guard = false;
    oracle_cmd->add_option("-i,--input", input, "waypoint CSV")->required();
    oracle_model.add(oracle_cmd);
    oracle_cmd->add_option("--membership", membership, "segments | waypoints")
        ->check(CLI::IsMember({"segments", "waypoints"}));
    oracle_cmd->add_option("--r-min", o_rmin, "smallest disk radius");
    oracle_cmd->add_option("--r-max", o_rmax, "largest disk radius");
    oracle_cmd->add_option("--units", units, "normalized | original")->check(CLI::IsMember({"normalized", "original"}));
    oracle_cmd->add_flag("--no-guard", no_guard, "allow inputs above the size guard");
    oracle_cmd->add_flag("--no-timing", no_timing, "report runtime_ms as 0");
    common(oracle_cmd);

    // plant
    auto* plant_cmd = app.add_subcommand("plant", "Label a dataset with a planted anomaly");
    ModelFlags plant_model;
    SyntheticFlags plant_data;
    PlantFlags plant_flags;
    std::string region_path;
    plant_cmd->add_option("-i,--input", input, "waypoint CSV (default: synthetic data)");
    plant_cmd->add_option("--region", region_path, "planted-region JSON path (default stdout)");
    plant_model.add(plant_cmd);
    plant_data.add(plant_cmd);
    plant_flags.add(plant_cmd);
    common(plant_cmd);

    // power
    auto* power_cmd = app.add_subcommand("power", "Repeated plant-and-scan trials on synthetic data");
    ModelFlags power_model;
    ScanFlags power_scan;
    SyntheticFlags power_data;
    PlantFlags power_plant;
    std::size_t trials = 10;
    double threshold = 0.9;
    std::string csv_path;
    power_cmd->add_option("--trials", trials, "number of trials");
    power_cmd->add_option("--threshold", threshold, "recovery when found phi >= threshold * planted phi");
    power_cmd->add_option("--csv", csv_path, "per-trial CSV path");
    power_cmd->add_flag("--no-timing", no_timing, "report runtimes as 0");
    power_model.add(power_cmd);
    power_scan.add(power_cmd);
    power_data.add(power_cmd);
    power_plant.add(power_cmd);
    common(power_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cout << error_json("usage", e.what()).dump(2) << '\n';
        return 2;
    }

    try {
        set_thread_count(threads);
        const std::uint64_t seed = resolve_seed(seed_flag);

        if (*simplify_cmd) {
            io::IngestReport rep;
            const auto ds = load(input, rep);
            const double unit = units == "original" ? ds.transform.scale : 1.0;
            CoresetMethod m;
            m.tag = parse_coreset_tag(method);
            m.alpha = s_alpha * unit;
            m.r = s_r * unit;
            m.seed = seed;
            m.validate();
            std::ostringstream out;
            io::write_coreset_csv(out, ds, m);
            emit(output, out.str());
            return 0;
        }

        if (*scan_cmd) {
            io::IngestReport rep;
            const auto ds = load(input, rep);
            const double unit = units == "original" ? ds.transform.scale : 1.0;
            const ScanSettings st = scan_flags.settings(scan_model, seed, unit);
            const ScanRun run = run_scan(ds, st);
            json j = result_json(scan_model, run, ds, seed, !no_timing);
            j["input"] = report_json(rep);
            emit(output, j.dump(2) + "\n");
            return 0;
        }

        if (*oracle_cmd) {
            io::IngestReport rep;
            const auto ds = load(input, rep);
            const double unit = units == "original" ? ds.transform.scale : 1.0;
            ExactOptions opt;
            opt.membership = membership == "waypoints" ? Membership::Waypoints : Membership::Segments;
            opt.enforce_guard = !no_guard;
            if (o_rmin) opt.window.r_min = *o_rmin * unit;
            if (o_rmax) opt.window.r_max = *o_rmax * unit;
            const auto t0 = std::chrono::steady_clock::now();
            ScanRun run;
            run.result = exact_scan(ds, parse_shape_family(oracle_model.family), parse_model(oracle_model.model),
                                    oracle_model.discrepancy(), opt);
            run.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            run.full_stats = run.result.stats;
            run.n = run.s = ds.size();
            run.n_k = run.s_k = ds.waypoint_count();
            json j = result_json(oracle_model, run, ds, seed, !no_timing);
            j["input"] = report_json(rep);
            emit(output, j.dump(2) + "\n");
            return 0;
        }

        if (*plant_cmd) {
            TrajectoryDataset ds;
            json source;
            if (!input.empty()) {
                io::IngestReport rep;
                ds = load(input, rep);
                source = {{"input", report_json(rep)}};
            } else {
                const auto cfg = plant_data.config(seed);
                ds = generate_synthetic(cfg);
                source = {{"generator", to_string(cfg.generator)}, {"n_traj", cfg.n_traj}};
            }
            PlantConfig pc{parse_shape_family(plant_model.family), parse_model(plant_model.model), plant_flags.p,
                           plant_flags.q, plant_flags.f, seed};
            const Planted pl = plant(ds, pc, plant_model.discrepancy());
            std::ostringstream csv;
            io::write_waypoint_csv(csv, pl.dataset);
            json j;
            j["schema"] = kSchema;
            j["version"] = TRAJSCAN_VERSION;
            j["model"] = plant_model.model;
            j["family"] = plant_model.family;
            j["fn"] = plant_model.fn;
            j["shape"] = shape_json(pl.dataset.transform.inverse(pl.shape));
            j["shape_normalized"] = shape_json(pl.shape);
            j["r_frac"] = pl.stats.r_frac;
            j["b_frac"] = pl.stats.b_frac;
            j["phi"] = pl.stats.phi;
            j["realized_f"] = pl.realized_f;
            j["p"] = pc.p;
            j["q"] = pc.q;
            j["f"] = pc.f;
            j["seed"] = seed;
            j["source"] = source;
            if (output.empty() || output == "-") {
                // Dataset on stdout would mix with the JSON; require a path.
                throw ConfigError("plant: -o/--output is required for the labeled dataset");
            }
            emit(output, csv.str());
            emit(region_path, j.dump(2) + "\n");
            return 0;
        }

        if (*power_cmd) {
            const auto dc = power_data.config(seed);
            const ScanSettings st = power_scan.settings(power_model, seed, 1.0);
            PlantConfig pc{st.family, st.model, power_plant.p, power_plant.q, power_plant.f, seed};
            pc.validate();
            const PowerReport rep = power_experiment(dc, pc, st, trials, threshold);
            if (!csv_path.empty()) emit(csv_path, rep.to_csv(!no_timing));
            json j;
            j["schema"] = kSchema;
            j["version"] = TRAJSCAN_VERSION;
            j["model"] = power_model.model;
            j["family"] = power_model.family;
            j["fn"] = power_model.fn;
            j["trials"] = rep.trials.size();
            j["threshold"] = rep.threshold;
            j["eps"] = rep.eps;
            j["alpha"] = rep.alpha;
            j["recovery_rate"] = rep.recovery_rate;
            json rows = json::array();
            for (const auto& t : rep.trials)
                rows.push_back({{"seed", t.seed},
                                {"planted_phi", t.planted_phi},
                                {"found_phi", t.found_phi},
                                {"found_shape", shape_json(t.found_shape)},
                                {"runtime_ms", no_timing ? 0.0 : t.runtime_ms}});
            j["trial_results"] = rows;
            j["seed"] = seed;
            emit(output, j.dump(2) + "\n");
            return 0;
        }
    } catch (const io::CsvError& e) {
        std::cout << error_json("input", e.what(), e.line()).dump(2) << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cout << error_json("config", e.what()).dump(2) << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cout << error_json("runtime", e.what()).dump(2) << '\n';
        return 1;
    }
    return 0;
}
