#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <thread>

#include "msw/color.hpp"
#include "msw/csv.hpp"
#include "msw/distance_spec.hpp"
#include "msw/exact_ot.hpp"
#include "msw/flow.hpp"
#include "msw/image.hpp"
#include "msw/rng.hpp"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitBadArgs = 2;
constexpr int kExitIo = 3;
constexpr int kExitNumerical = 4;

struct CommonOpts {
    std::string distance = "sw";
    msw::DistanceSpec spec;
    std::uint64_t seed = 0;
    int threads = 0;  // 0 = hardware concurrency

    int resolved_threads() const {
        if (threads > 0) return threads;
        unsigned hc = std::thread::hardware_concurrency();
        return hc == 0 ? 1 : static_cast<int>(hc);
    }
};

// Shared estimator flags; every subcommand that evaluates a distance takes
// the same set, plus an optional JSON config with the same keys.
void add_distance_flags(CLI::App* cmd, CommonOpts& opts, std::string& config_path) {
    cmd->add_option("--distance", opts.distance,
                    "distance spec: sw, max-sw, ksw, max-ksw, msw-r, msw-o, msw-i, msw-vi, exact")
        ->capture_default_str();
    cmd->add_option("-L,--projections", opts.spec.projections, "projections / chains (L)")
        ->capture_default_str();
    cmd->add_option("-T,--steps-chain", opts.spec.steps, "chain length or ascent iterations (T)")
        ->capture_default_str();
    cmd->add_option("-K,--block", opts.spec.block, "orthogonal block size (K)")
        ->capture_default_str();
    cmd->add_option("--eta", opts.spec.eta, "ascent / transition step size")
        ->capture_default_str();
    cmd->add_option("--kappa", opts.spec.kappa, "vMF concentration")->capture_default_str();
    cmd->add_option("-M,--burn", opts.spec.burn, "burned chain steps")->capture_default_str();
    cmd->add_option("-N,--thin", opts.spec.thin, "thinning interval")->capture_default_str();
    cmd->add_option("-p,--order", opts.spec.p, "Wasserstein order")->capture_default_str();
    cmd->add_option("--seed", opts.seed, "RNG root seed")->capture_default_str();
    cmd->add_option("--threads", opts.threads, "worker threads (0 = all cores)")
        ->capture_default_str();
    cmd->add_option("--config", config_path, "JSON file with the same keys; flags win");
}

void apply_config_file(const CLI::App* cmd, CommonOpts& opts, const std::string& config_path) {
    if (config_path.empty()) return;
    std::ifstream in(config_path);
    if (!in) throw msw::io_error(config_path + ": cannot open config");
    json cfg;
    try {
        cfg = json::parse(in);
    } catch (const json::parse_error& e) {
        throw msw::io_error(config_path + ": " + e.what());
    }
    auto unset = [&](const char* flag) { return cmd->get_option(flag)->count() == 0; };
    if (cfg.contains("distance") && unset("--distance")) opts.distance = cfg["distance"];
    if (cfg.contains("L") && unset("-L")) opts.spec.projections = cfg["L"];
    if (cfg.contains("T") && unset("-T")) opts.spec.steps = cfg["T"];
    if (cfg.contains("K") && unset("-K")) opts.spec.block = cfg["K"];
    if (cfg.contains("eta") && unset("--eta")) opts.spec.eta = cfg["eta"];
    if (cfg.contains("kappa") && unset("--kappa")) opts.spec.kappa = cfg["kappa"];
    if (cfg.contains("M") && unset("-M")) opts.spec.burn = cfg["M"];
    if (cfg.contains("N") && unset("-N")) opts.spec.thin = cfg["N"];
    if (cfg.contains("p") && unset("-p")) opts.spec.p = cfg["p"];
    if (cfg.contains("seed") && unset("--seed")) opts.seed = cfg["seed"];
    if (cfg.contains("threads") && unset("--threads")) opts.threads = cfg["threads"];
}

json spec_json(const CommonOpts& opts) {
    json j;
    j["distance"] = opts.distance;
    j["L"] = opts.spec.projections;
    j["T"] = opts.spec.steps;
    j["K"] = opts.spec.block;
    j["eta"] = opts.spec.eta;
    j["kappa"] = opts.spec.kappa;
    j["M"] = opts.spec.burn;
    j["N"] = opts.spec.thin;
    j["p"] = opts.spec.p;
    j["seed"] = opts.seed;
    j["threads"] = opts.resolved_threads();
    return j;
}

double round3(double s) { return std::round(s * 1000.0) / 1000.0; }

int run_dist(const std::string& path_a, const std::string& path_b, CommonOpts opts) {
    opts.spec.kind = msw::parse_distance_kind(opts.distance);
    msw::EmpiricalMeasure a = msw::read_point_cloud_csv(path_a);
    msw::EmpiricalMeasure b = msw::read_point_cloud_csv(path_b);
    auto t0 = std::chrono::steady_clock::now();
    msw::Evaluation eval =
        msw::evaluate_distance(opts.spec, a, b, opts.seed, opts.resolved_threads());
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    json out;
    out["distance"] = eval.value;
    out["seconds"] = round3(seconds);
    out["spec"] = spec_json(opts);
    std::cout << out.dump() << "\n";
    return 0;
}

int run_flow_cmd(std::string source_path, std::string target_path, const std::string& fixture,
                 std::size_t fixture_n, double fixture_noise, const std::string& out_dir,
                 std::string trace_path, std::string final_path, msw::FlowConfig flow_cfg,
                 CommonOpts opts) {
    opts.spec.kind = msw::parse_distance_kind(opts.distance);
    flow_cfg.distance = opts.spec;
    flow_cfg.seed = opts.seed;

    std::optional<msw::EmpiricalMeasure> source, target;
    if (!fixture.empty()) {
        if (fixture != "s-shape") {
            throw std::invalid_argument("--fixture: unknown fixture '" + fixture + "'");
        }
        target = msw::make_s_shape(fixture_n, fixture_noise, msw::derive_seed(opts.seed, 1));
        source = msw::make_gaussian_mixture(fixture_n, msw::derive_seed(opts.seed, 2));
    }
    if (!source_path.empty()) source = msw::read_point_cloud_csv(source_path);
    if (!target_path.empty()) target = msw::read_point_cloud_csv(target_path);
    if (!source || !target) {
        throw std::invalid_argument("flow: provide source and target CSVs or --fixture s-shape");
    }

    std::filesystem::create_directories(out_dir);
    if (trace_path.empty()) trace_path = out_dir + "/trace.csv";
    if (final_path.empty()) final_path = out_dir + "/final.csv";
    msw::FlowTrace trace = msw::run_flow(*source, *target, flow_cfg, opts.resolved_threads());
    msw::write_trace_csv(trace_path, trace);
    msw::write_point_cloud_csv(final_path, trace.final_measure);

    json out;
    out["initial_w2"] = trace.rows.front().w2;
    out["final_w2"] = trace.rows.back().w2;
    out["steps"] = flow_cfg.steps;
    out["trace"] = trace_path;
    out["final"] = final_path;
    out["spec"] = spec_json(opts);
    std::cout << out.dump() << "\n";
    return 0;
}

int run_color(const std::string& source_path, const std::string& target_path,
              const std::string& out_path, std::size_t k, int kmeans_iters, bool count_weighted,
              msw::FlowConfig flow_cfg, CommonOpts opts) {
    opts.spec.kind = msw::parse_distance_kind(opts.distance);
    flow_cfg.distance = opts.spec;
    flow_cfg.seed = opts.seed;
    flow_cfg.score_every = std::max(1, flow_cfg.steps);  // exact scoring only at the ends

    msw::ColorTransferConfig cfg;
    cfg.k = k;
    cfg.kmeans_iters = kmeans_iters;
    cfg.count_weighted = count_weighted;
    cfg.flow = flow_cfg;

    msw::Image source = msw::read_png(source_path);
    msw::Image target = msw::read_png(target_path);
    msw::FlowTrace trace{{}, msw::EmpiricalMeasure::uniform(1, 1, {0.0})};
    msw::Palette transferred, src_palette, tgt_palette;
    msw::Image out_img = msw::transfer_colors(source, target, cfg, opts.resolved_threads(), &trace,
                                              &transferred, &src_palette, &tgt_palette);
    msw::write_png(out_path, out_img);

    double before = msw::exact_wasserstein(msw::palette_measure(src_palette),
                                           msw::palette_measure(tgt_palette), 2.0);
    double after = msw::exact_wasserstein(msw::palette_measure(transferred),
                                          msw::palette_measure(tgt_palette), 2.0);
    json out;
    out["output"] = out_path;
    out["k"] = src_palette.size();
    out["palette_w2_before"] = before;
    out["palette_w2_after"] = after;
    out["spec"] = spec_json(opts);
    std::cout << out.dump() << "\n";
    return 0;
}

int run_bench(const std::string& config_path, const std::string& out_path, CommonOpts opts) {
    std::ifstream in(config_path);
    if (!in) throw msw::io_error(config_path + ": cannot open config");
    json cfg;
    try {
        cfg = json::parse(in);
    } catch (const json::parse_error& e) {
        throw msw::io_error(config_path + ": " + e.what());
    }

    std::ofstream out(out_path);
    if (!out) throw msw::io_error(out_path + ": cannot open output");
    out << "spec,n,d,mean_seconds,distance\n";

    if (!cfg.contains("grid")) {
        if (!out) throw msw::io_error(out_path + ": write failed");
        return 0;
    }
    if (!cfg["grid"].is_array()) throw msw::io_error(config_path + ": 'grid' must be an array");

    for (const auto& entry : cfg["grid"]) {
        msw::DistanceSpec spec = opts.spec;
        std::string name = entry.value("spec", opts.distance);
        spec.kind = msw::parse_distance_kind(name);
        spec.projections = entry.value("L", spec.projections);
        spec.steps = entry.value("T", spec.steps);
        spec.block = entry.value("K", spec.block);
        spec.eta = entry.value("eta", spec.eta);
        spec.kappa = entry.value("kappa", spec.kappa);
        spec.burn = entry.value("M", spec.burn);
        spec.thin = entry.value("N", spec.thin);
        spec.p = entry.value("p", spec.p);
        std::size_t n = entry.value("n", 1000);
        std::size_t d = entry.value("d", 10);
        int reps = entry.value("reps", 5);
        std::uint64_t seed = entry.value("seed", opts.seed);
        if (reps < 1) throw msw::io_error(config_path + ": reps must be >= 1");

        msw::Vec shift(d, 0.0);
        shift[0] = 1.0;
        msw::EmpiricalMeasure mu = msw::make_gaussian_cloud(n, d, msw::derive_seed(seed, 11));
        msw::EmpiricalMeasure nu =
            msw::make_gaussian_cloud(n, d, msw::derive_seed(seed, 12), shift);

        int threads = opts.resolved_threads();
        double distance = msw::evaluate_distance(spec, mu, nu, seed, threads).value;  // warm-up
        double total = 0.0;
        for (int r = 0; r < reps; ++r) {
            auto t0 = std::chrono::steady_clock::now();
            distance = msw::evaluate_distance(spec, mu, nu, seed, threads).value;
            total += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        }
        char buf[128];
        std::snprintf(buf, sizeof(buf), "%s,%zu,%zu,%.6f,%.17g\n", name.c_str(), n, d,
                      total / reps, distance);
        out << buf;
    }
    if (!out) throw msw::io_error(out_path + ": write failed");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sliced Wasserstein distance family: SW, Max-SW, K-SW, Max-K-SW and the "
                 "Markovian variants, with gradient flows and color transfer"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string config_path;

    // dist
    auto* dist = app.add_subcommand("dist", "distance between two point-cloud CSVs");
    std::string dist_a, dist_b;
    dist->add_option("a", dist_a, "first point cloud CSV")->required();
    dist->add_option("b", dist_b, "second point cloud CSV")->required();
    add_distance_flags(dist, opts, config_path);

    // flow
    auto* flow = app.add_subcommand("flow", "gradient flow from source to target cloud");
    std::string flow_source, flow_target, fixture, out_dir = "flow-out";
    std::size_t fixture_n = 100;
    double fixture_noise = 0.05;
    msw::FlowConfig flow_cfg;
    flow->add_option("source", flow_source, "source point cloud CSV");
    flow->add_option("target", flow_target, "target point cloud CSV");
    flow->add_option("--fixture", fixture, "auto-generate clouds: s-shape");
    flow->add_option("-n,--points", fixture_n, "fixture size")->capture_default_str();
    flow->add_option("--noise", fixture_noise, "fixture jitter")->capture_default_str();
    flow->add_option("--steps", flow_cfg.steps, "Euler iterations")->capture_default_str();
    flow->add_option("--step-size", flow_cfg.step_size, "Euler step size")->capture_default_str();
    flow->add_option("--score-every", flow_cfg.score_every, "exact-W2 logging interval")
        ->capture_default_str();
    flow->add_option("--out-dir", out_dir, "output directory")->capture_default_str();
    std::string trace_path, final_path;
    flow->add_option("--trace-out", trace_path, "trace CSV path (default <out-dir>/trace.csv)");
    flow->add_option("--final-out", final_path, "final cloud path (default <out-dir>/final.csv)");
    add_distance_flags(flow, opts, config_path);

    // color
    auto* color = app.add_subcommand("color", "transfer the color palette of one PNG onto another");
    std::string color_source, color_target, color_out;
    std::size_t palette_k = 512;
    int kmeans_iters = 10;
    bool count_weighted = false;
    msw::FlowConfig color_flow;
    color_flow.steps = 2000;
    color_flow.step_size = 1e-3;
    color->add_option("source", color_source, "source PNG")->required();
    color->add_option("target", color_target, "target PNG")->required();
    color->add_option("output", color_out, "output PNG")->required();
    color->add_option("--k", palette_k, "palette size")->capture_default_str();
    color->add_option("--kmeans-iters", kmeans_iters, "Lloyd iterations")->capture_default_str();
    color->add_flag("--count-weighted", count_weighted,
                    "weight palette measures by cluster size (extension)");
    color->add_option("--steps", color_flow.steps, "Euler iterations")->capture_default_str();
    color->add_option("--step-size", color_flow.step_size, "Euler step size")
        ->capture_default_str();
    add_distance_flags(color, opts, config_path);

    // bench
    auto* bench = app.add_subcommand("bench", "timing grid over (spec, n, d)");
    std::string bench_config, bench_out = "bench.csv";
    bench->add_option("--config", bench_config, "JSON grid config")->required();
    bench->add_option("--out", bench_out, "output CSV")->capture_default_str();
    bench->add_option("--seed", opts.seed, "RNG root seed")->capture_default_str();
    bench->add_option("--threads", opts.threads, "worker threads (0 = all cores)")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitBadArgs;
    }

    try {
        if (dist->parsed()) {
            apply_config_file(dist, opts, config_path);
            return run_dist(dist_a, dist_b, opts);
        }
        if (flow->parsed()) {
            apply_config_file(flow, opts, config_path);
            return run_flow_cmd(flow_source, flow_target, fixture, fixture_n, fixture_noise,
                                out_dir, flow_cfg, opts);
        }
        if (color->parsed()) {
            apply_config_file(color, opts, config_path);
            return run_color(color_source, color_target, color_out, palette_k, kmeans_iters,
                             count_weighted, color_flow, opts);
        }
        if (bench->parsed()) {
            return run_bench(bench_config, bench_out, opts);
        }
    } catch (const msw::io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadArgs;
    } catch (const msw::numerical_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return 0;
}
