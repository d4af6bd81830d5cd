// Command-line front end: scan shapes with sampled flats, compare scan
// results, run the paper-figure demos and probes, render SVG plots.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "flatscan/diagram_distance.hpp"
#include "flatscan/error.hpp"
#include "flatscan/filtration.hpp"
#include "flatscan/grassmann.hpp"
#include "flatscan/homology.hpp"
#include "flatscan/json_io.hpp"
#include "flatscan/persistence.hpp"
#include "flatscan/shape.hpp"
#include "flatscan/transform.hpp"
#include "svg_plot.hpp"

namespace {

constexpr int kExitDemoFailure = 1;
constexpr int kExitFileError = 2;
constexpr int kExitMismatch = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw flatscan::error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw flatscan::error("cannot write file: " + path);
    out << content;
}

flatscan::Shape load_shape(const std::string& path) {
    const std::string text = read_file(path);
    std::istringstream probe(text);
    std::string tag;
    probe >> tag;
    if (tag == "OFF") return flatscan::load_off(text);
    if (tag == "grid" || tag == "grid3") return flatscan::load_grid(text);
    throw flatscan::error("unrecognized shape format in " + path +
                          " (expected grid/grid3/OFF)");
}

int thread_count() {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* cap = std::getenv("FLATSCAN_THREADS")) {
        const long v = std::strtol(cap, nullptr, 10);
        if (v >= 1 && static_cast<unsigned>(v) < n) n = static_cast<unsigned>(v);
    }
    return static_cast<int>(n);
}

std::string shape_stem(const std::string& path) {
    const auto slash = path.find_last_of("/\\");
    std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
    const auto dot = name.find_last_of('.');
    if (dot != std::string::npos && dot > 0) name = name.substr(0, dot);
    return name;
}

std::string render_value(double v) {
    if (std::isinf(v)) return "inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

struct ScanArgs {
    std::string input;
    std::string out;
    int m = 1;
    int num_flats = 64;
    std::uint64_t seed = 42;
    int max_degree = -1;
    double epsilon = -1.0;
};

int run_scan(const ScanArgs& args, bool with_euler) {
    const auto t0 = std::chrono::steady_clock::now();
    const flatscan::Shape shape = load_shape(args.input);
    const auto flats = flatscan::sample_flats(args.m, shape.ambient_dim, args.num_flats,
                                              std::max(shape.bounding_radius, 1e-9), args.seed);
    flatscan::ScanOptions options;
    options.max_degree = args.max_degree;
    options.epsilon = args.epsilon;
    options.euler_curves = with_euler;
    options.slice_chi = with_euler;
    options.threads = thread_count();
    const flatscan::DphtResult result =
        flatscan::dpht_scan(shape, args.m, flats, options, shape_stem(args.input));
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
    write_file(args.out, flatscan::dpht_result_to_json(result));
    std::size_t total_points = 0;
    for (const auto& per_flat : result.diagrams) {
        for (const auto& d : per_flat) total_points += d.points.size();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("scanned %zu flats, %zu diagram points, %.3f s\n", result.flats.size(),
                total_points, secs);
    return 0;
}

int run_compare(const std::string& path_a, const std::string& path_b, const std::string& metric,
                double p) {
    const flatscan::DphtResult a = flatscan::dpht_result_from_json(read_file(path_a));
    const flatscan::DphtResult b = flatscan::dpht_result_from_json(read_file(path_b));
    if (!flatscan::same_flat_lists(a, b)) {
        std::cerr << "error: flat lists differ between " << path_a << " and " << path_b
                  << " (scans must share seed and parameters)\n";
        return kExitMismatch;
    }
    const std::size_t degrees =
        std::min(a.diagrams.empty() ? 0 : a.diagrams.front().size(),
                 b.diagrams.empty() ? 0 : b.diagrams.front().size());
    for (std::size_t k = 0; k < degrees; ++k) {
        double worst = -1.0;
        std::size_t worst_flat = 0;
        for (std::size_t i = 0; i < a.flats.size(); ++i) {
            const double v = metric == "wasserstein"
                                 ? flatscan::wasserstein(a.diagrams[i][k], b.diagrams[i][k], p).value
                                 : flatscan::bottleneck(a.diagrams[i][k], b.diagrams[i][k]).value;
            if (v > worst) {
                worst = v;
                worst_flat = i;
            }
        }
        std::printf("degree %zu: %s max = %s at flat %zu\n", k, metric.c_str(),
                    render_value(worst < 0 ? 0.0 : worst).c_str(), worst_flat);
    }
    return 0;
}

struct DemoChecker {
    int failures = 0;
    void check(bool ok, const std::string& label, const std::string& detail = "") {
        if (ok) {
            std::printf("PASS: %s\n", label.c_str());
        } else {
            ++failures;
            std::printf("FAIL: %s%s\n", label.c_str(),
                        detail.empty() ? "" : (" -- " + detail).c_str());
        }
    }
};

flatscan::Flat axis_line_2d() {
    Eigen::VectorXd origin = Eigen::VectorXd::Zero(2);
    Eigen::VectorXd ex(2);
    ex << 1, 0;
    return flatscan::line_flat(origin, ex);
}

int demo_annulus() {
    using namespace flatscan;
    DemoChecker dc;
    const Shape ring = make_ring_grid(64, 24, 10);
    const Flat line = axis_line_2d();
    const PersistenceDiagram pd = pd0_union_find(ring, flat_filtration(ring, line));
    dc.check(pd.points.size() == 2, "tubular-through-hole PD0 has 2 points",
             "got " + std::to_string(pd.points.size()));
    bool heights_ok = true;
    for (int k = 0; k < 16; ++k) {
        const double a = 2.0 * M_PI * k / 16.0;
        Eigen::VectorXd v(2);
        v << std::cos(a), std::sin(a);
        const PersistenceDiagram pdh = pd0_union_find(ring, height_filtration(ring, v));
        if (pdh.points.size() != 1) heights_ok = false;
    }
    dc.check(heights_ok, "every height PD0 has 1 point (16 directions)");
    const EulerCurve curve = euler_curve(ring, flat_filtration(ring, line));
    dc.check(!curve.empty() && curve.front().second == 2 && curve.back().second == 0,
             "tubular Euler curve starts at 2 and ends at 0");
    return dc.failures == 0 ? 0 : kExitDemoFailure;
}

int demo_ball_sphere() {
    using namespace flatscan;
    DemoChecker dc;
    const Shape ball = make_ball_grid(32, 13);
    const Shape shell = make_shell_grid(32, 10, 13);
    Eigen::VectorXd origin = Eigen::VectorXd::Zero(3);
    Eigen::VectorXd ez(3);
    ez << 0, 0, 1;
    const Flat axis = line_flat(origin, ez);
    const auto pd_ball = pd0_union_find(ball, flat_filtration(ball, axis));
    const auto pd_shell = pd0_union_find(shell, flat_filtration(shell, axis));
    dc.check(pd_ball.points.size() == 1, "ball PD0 count 1",
             "got " + std::to_string(pd_ball.points.size()));
    dc.check(pd_shell.points.size() == 2, "shell PD0 count 2",
             "got " + std::to_string(pd_shell.points.size()));
    return dc.failures == 0 ? 0 : kExitDemoFailure;
}

int demo_hpht_vs_cpht() {
    using namespace flatscan;
    DemoChecker dc;
    const Shape ring = make_ring_grid(64, 24, 10);
    const Flat through = axis_line_2d();
    bool all_match = true;
    std::size_t height_count = 1;
    for (int k = 0; k < 8; ++k) {
        const double a = 2.0 * M_PI * k / 8.0 + 0.2;
        Eigen::VectorXd v(2);
        v << std::cos(a), std::sin(a);
        const HphtCphtReport rep = hpht_vs_cpht_demo(ring, v, through);
        if (!rep.diagrams_match) all_match = false;
        height_count = rep.height_pd0_count;
        if (k == 0) {
            dc.check(rep.through_flat_pd0_count == 2 && rep.height_pd0_count == 1,
                     "through-hole flat sees 2 PD0 points vs 1 for height",
                     "got " + std::to_string(rep.through_flat_pd0_count) + " vs " +
                         std::to_string(rep.height_pd0_count));
        }
    }
    (void)height_count;
    dc.check(all_match, "height PD0 equals tangent-flat PD0 shifted by M (8 directions)");
    return dc.failures == 0 ? 0 : kExitDemoFailure;
}

int demo_chi_table() {
    using namespace flatscan;
    DemoChecker dc;
    bool closed_matches_recursion = true;
    for (int n = 0; n <= 12; ++n) {
        for (int k = 0; k <= n; ++k) {
            if (chi_grassmannian(k, n) != chi_grassmannian_recursive(k, n)) {
                closed_matches_recursion = false;
            }
        }
    }
    dc.check(closed_matches_recursion, "chi closed form equals recursion for n <= 12");
    std::printf("  m  n  chi1  chi2  case\n");
    bool cases_ok = true;
    for (int n = 2; n <= 12; ++n) {
        for (int m = 1; m < n; ++m) {
            const ChiPair cp = chi_pair(m, n);
            std::printf("%3d %2d %5lld %5lld  %s\n", m, n, cp.chi1, cp.chi2,
                        to_string(cp.case_tag).c_str());
            const bool both_odd = (m % 2 == 1 && n % 2 == 1);
            if (both_odd != (cp.chi1 == cp.chi2)) cases_ok = false;
            if (cp.case_tag == ChiCase::case23 &&
                cp.chi1 * (m / 2) != cp.chi2 * (n / 2)) {
                cases_ok = false;
            }
        }
    }
    dc.check(cases_ok, "chi1 != chi2 except both-odd; case-2.3 ratio identity");
    return dc.failures == 0 ? 0 : kExitDemoFailure;
}

// Elliptical annulus mesh with ring vertices planted exactly on every
// schedule line and on the perpendicular extrema, so rotation bottlenecks
// are governed by the saddle geometry rather than mesh aliasing.
flatscan::Shape schedule_aligned_mesh(int steps) {
    const double a = 10, b = 6;
    std::vector<double> planted;
    for (int k = 1; k <= steps; ++k) {
        const double theta = M_PI / 2 * std::pow(2.0, -k);
        const double t = std::atan2(a * std::sin(theta), b * std::cos(theta));
        for (double shift : {0.0, M_PI, M_PI / 2, -M_PI / 2}) planted.push_back(t + shift);
    }
    return flatscan::make_ellipse_annulus_mesh(a, b, 2.0, 2048, planted);
}

int run_probe_continuity(const std::string& input, const std::string& schedule_kind, int steps,
                         double tolerance) {
    using namespace flatscan;
    const Shape shape =
        input == "builtin:ellipse-annulus" ? schedule_aligned_mesh(steps) : load_shape(input);
    if (shape.ambient_dim != 2) throw error("continuity probe expects a 2D shape");
    const Flat p = axis_line_2d();
    std::vector<Flat> schedule;
    for (int k = 1; k <= steps; ++k) {
        if (schedule_kind == "rotation") {
            schedule.push_back(rotate_flat_xy(p, M_PI / 2.0 * std::pow(2.0, -k)));
        } else {
            Eigen::VectorXd ey(2);
            ey << 0, 1;
            schedule.push_back(translate_flat(p, std::pow(2.0, -k) * ey));
        }
    }
    const ContinuityReport rep = continuity_probe(shape, p, schedule, tolerance);
    std::printf("step  flat_distance  sup_gap      bottleneck0\n");
    for (std::size_t i = 0; i < rep.steps.size(); ++i) {
        const auto& s = rep.steps[i];
        std::printf("%4zu  %12.6g  %11.6g  %11.6g\n", i + 1, s.flat_distance, s.sup_gap,
                    s.bottleneck0);
    }
    std::printf("stability: %s\n", rep.stability_ok ? "PASS" : "FAIL");
    std::printf("converged below %g: %s\n", tolerance, rep.converged ? "PASS" : "FAIL");
    return (rep.stability_ok && rep.converged) ? 0 : kExitDemoFailure;
}

int run_probe_injectivity(int grid_size, int pairs, std::uint64_t seed) {
    const flatscan::InjectivityReport rep = flatscan::injectivity_probe(grid_size, pairs, seed);
    std::printf("grid %dx%d, %d lines through pixel-center pairs\n", rep.grid_size, rep.grid_size,
                rep.line_family_size);
    std::printf("distinguished %d of %d pairs (fraction %.6f)\n", rep.distinguished,
                rep.pair_count, rep.fraction());
    return 0;
}

int run_plot(const std::string& input, const std::string& out) {
    const std::string text = read_file(input);
    std::string svg;
    try {
        // A single diagram carries "degree"; a scan result carries "flats".
        if (text.find("\"flats\"") != std::string::npos) {
            svg = flatscan::render_result_svg(flatscan::dpht_result_from_json(text));
        } else {
            svg = flatscan::render_diagram_svg(flatscan::diagram_from_json(text));
        }
    } catch (const flatscan::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFileError;
    }
    write_file(out, svg);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"distance-from-flat persistent homology transform"};
    app.require_subcommand(1);

    ScanArgs scan_args;
    CLI::App* scan = app.add_subcommand("scan", "scan a shape with sampled flats");
    scan->add_option("--input", scan_args.input, "shape file (grid/grid3/OFF)")->required();
    scan->add_option("--m", scan_args.m, "flat dimension")->required();
    scan->add_option("--num-flats", scan_args.num_flats, "number of sampled flats");
    scan->add_option("--seed", scan_args.seed, "sampler seed");
    scan->add_option("--max-degree", scan_args.max_degree, "top homology degree (default m-1)");
    scan->add_option("--epsilon", scan_args.epsilon, "slice thickness");
    scan->add_option("--out", scan_args.out, "output JSON path")->required();

    ScanArgs euler_args;
    CLI::App* euler = app.add_subcommand("euler", "scan plus Euler curves and slice chi");
    euler->add_option("--input", euler_args.input, "shape file (grid/grid3/OFF)")->required();
    euler->add_option("--m", euler_args.m, "flat dimension")->required();
    euler->add_option("--num-flats", euler_args.num_flats, "number of sampled flats");
    euler->add_option("--seed", euler_args.seed, "sampler seed");
    euler->add_option("--max-degree", euler_args.max_degree, "top homology degree (default m-1)");
    euler->add_option("--epsilon", euler_args.epsilon, "slice thickness");
    euler->add_option("--out", euler_args.out, "output JSON path")->required();

    std::string cmp_a, cmp_b, cmp_metric = "bottleneck";
    double cmp_p = 2.0;
    CLI::App* compare = app.add_subcommand("compare", "per-degree distance between two scans");
    compare->add_option("--a", cmp_a, "first scan JSON")->required();
    compare->add_option("--b", cmp_b, "second scan JSON")->required();
    compare->add_option("--metric", cmp_metric, "bottleneck|wasserstein")
        ->check(CLI::IsMember({"bottleneck", "wasserstein"}));
    compare->add_option("--p", cmp_p, "Wasserstein exponent");

    std::string probe_kind, probe_input, probe_schedule = "rotation";
    int probe_steps = 8, probe_grid = 5, probe_pairs = 500;
    std::uint64_t probe_seed = 42;
    double probe_tol = 0.05;
    CLI::App* probe = app.add_subcommand("probe", "continuity / injectivity probes");
    probe->add_option("--kind", probe_kind, "continuity|injectivity")
        ->required()
        ->check(CLI::IsMember({"continuity", "injectivity"}));
    probe->add_option("--input", probe_input,
                      "shape file, or builtin:ellipse-annulus (continuity)");
    probe->add_option("--schedule", probe_schedule, "rotation|translation")
        ->check(CLI::IsMember({"rotation", "translation"}));
    probe->add_option("--steps", probe_steps, "schedule length");
    probe->add_option("--tolerance", probe_tol, "final bottleneck tolerance");
    probe->add_option("--grid-size", probe_grid, "grid size (injectivity)");
    probe->add_option("--pairs", probe_pairs, "pair count (injectivity)");
    probe->add_option("--seed", probe_seed, "probe seed");

    std::string demo_name;
    CLI::App* demo = app.add_subcommand("demo", "paper-figure demos with PASS/FAIL output");
    demo->add_option("name", demo_name, "annulus|ball-sphere|hpht-vs-cpht|chi-table")
        ->required()
        ->check(CLI::IsMember({"annulus", "ball-sphere", "hpht-vs-cpht", "chi-table"}));

    std::string plot_input, plot_out;
    CLI::App* plot = app.add_subcommand("plot", "render a scan or diagram JSON as SVG");
    plot->add_option("--input", plot_input, "scan or diagram JSON")->required();
    plot->add_option("--out", plot_out, "output SVG path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (scan->parsed()) return run_scan(scan_args, false);
        if (euler->parsed()) return run_scan(euler_args, true);
        if (compare->parsed()) return run_compare(cmp_a, cmp_b, cmp_metric, cmp_p);
        if (probe->parsed()) {
            if (probe_kind == "continuity") {
                if (probe_input.empty()) throw flatscan::error("--input is required for continuity");
                return run_probe_continuity(probe_input, probe_schedule, probe_steps, probe_tol);
            }
            return run_probe_injectivity(probe_grid, probe_pairs, probe_seed);
        }
        if (demo->parsed()) {
            if (demo_name == "annulus") return demo_annulus();
            if (demo_name == "ball-sphere") return demo_ball_sphere();
            if (demo_name == "hpht-vs-cpht") return demo_hpht_vs_cpht();
            return demo_chi_table();
        }
        if (plot->parsed()) return run_plot(plot_input, plot_out);
    } catch (const flatscan::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFileError;
    }
    return 0;
}
