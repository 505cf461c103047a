#include "bils/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

#include "bils/detectors.hpp"
#include "bils/errors.hpp"
#include "bils/experiments.hpp"
#include "bils/io.hpp"
#include "bils/linalg.hpp"
#include "bils/model.hpp"
#include "bils/probability.hpp"

namespace bils {

namespace {

constexpr const char* kVersion = "0.1.0";

std::string fmt12(double v) {
    if (std::isinf(v)) return "inf";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

struct ArgError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// "a" -> {a};  "a:b:c" -> a, a+b, ..., c (inclusive, b > 0)
std::vector<double> parse_range(const std::string& text, const std::string& flag) {
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string piece;
    while (std::getline(ss, piece, ':')) {
        try {
            std::size_t used = 0;
            parts.push_back(std::stod(piece, &used));
            if (used != piece.size()) throw std::invalid_argument(piece);
        } catch (const std::exception&) {
            throw ArgError(flag + ": cannot parse '" + piece + "' as a number");
        }
    }
    if (parts.size() == 1) return parts;
    if (parts.size() != 3) throw ArgError(flag + ": expected VALUE or START:STEP:STOP");
    const double start = parts[0], step = parts[1], stop = parts[2];
    if (!(step > 0.0) || stop < start) throw ArgError(flag + ": need STEP > 0 and STOP >= START");
    std::vector<double> grid;
    for (double v = start; v <= stop + 1e-9; v += step) grid.push_back(v);
    return grid;
}

std::pair<int, int> parse_box_spec(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw ArgError("--box: expected L:U");
    try {
        std::size_t u1 = 0, u2 = 0;
        const int lo = std::stoi(text.substr(0, colon), &u1);
        const int up = std::stoi(text.substr(colon + 1), &u2);
        if (u1 != colon || u2 != text.size() - colon - 1) throw std::invalid_argument(text);
        if (lo >= up) throw ArgError("--box: need L < U");
        return {lo, up};
    } catch (const ArgError&) {
        throw;
    } catch (const std::exception&) {
        throw ArgError("--box: cannot parse '" + text + "' as L:U");
    }
}

Box resolve_box(const std::string& box_spec, const std::string& box_file, std::size_t n) {
    if (!box_spec.empty() && !box_file.empty())
        throw ArgError("give either --box or --box-file, not both");
    if (!box_spec.empty()) {
        const auto [lo, up] = parse_box_spec(box_spec);
        return Box::uniform(n, lo, up);
    }
    if (!box_file.empty()) {
        Box box = read_box_file(box_file);
        if (box.dim() != n)
            throw ArgError("--box-file: expected " + std::to_string(n) + " dimensions, got " +
                           std::to_string(box.dim()));
        return box;
    }
    throw ArgError("a box is required (--box L:U or --box-file PATH)");
}

PositionClass parse_positions(const std::string& text, std::size_t n) {
    PositionClass pos;
    std::stringstream ss(text);
    std::string piece;
    while (std::getline(ss, piece, ',')) {
        if (piece == "lower")
            pos.push_back(Position::AtLower);
        else if (piece == "interior")
            pos.push_back(Position::Interior);
        else if (piece == "upper")
            pos.push_back(Position::AtUpper);
        else
            throw ArgError("--pos: expected lower|interior|upper, got '" + piece + "'");
    }
    if (pos.size() != n)
        throw ArgError("--pos: expected " + std::to_string(n) + " entries, got " +
                       std::to_string(pos.size()));
    return pos;
}

std::vector<int> parse_int_vector(const std::string& text, std::size_t n, const std::string& flag) {
    std::vector<int> v;
    std::stringstream ss(text);
    int x;
    while (ss >> x) v.push_back(x);
    std::string leftover;
    if (ss.clear(), ss >> leftover)
        throw ArgError(flag + ": non-integer token '" + leftover + "'");
    if (v.size() != n)
        throw ArgError(flag + ": expected " + std::to_string(n) + " integers");
    return v;
}

struct CommonOpts {
    bool no_echo = false;
    std::string out_path;
    std::uint64_t seed = 0;
};

/// `# key=value` lines ahead of the CSV; seed always first so every output
/// is replayable.
void echo_config(std::ostream& out, const CommonOpts& common,
                 const std::vector<std::string>& args) {
    if (common.no_echo) return;
    out << "# seed=" << common.seed << '\n';
    out << "# version=bils " << kVersion << '\n';
    out << "# cmd=";
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out << ' ';
        out << args[i];
    }
    out << '\n';
}

class OutputTarget {
public:
    OutputTarget(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw FormatError("cannot open for writing: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

private:
    std::ofstream file_;
    std::ostream& fallback_;
};

} // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"box-constrained integer-linear-model detectors and success probabilities"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");
    app.footer("Environment: BILS_THREADS caps worker threads (0 = auto).");

    CommonOpts common;

    // ---- detect ----
    auto* detect = app.add_subcommand("detect", "run one detector on a model instance");
    struct {
        std::string matrix, y, box, box_file, method;
        bool vblast = false;
    } dopt;
    detect->add_option("--matrix", dopt.matrix, "model matrix file")->required();
    detect->add_option("--y", dopt.y, "observation vector file")->required();
    detect->add_option("--box", dopt.box, "uniform box L:U");
    detect->add_option("--box-file", dopt.box_file, "per-dimension bounds file");
    detect->add_option("--method", dopt.method, "rounding|babai|bils|brute")->required();
    detect->add_flag("--vblast", dopt.vblast, "apply V-BLAST column reordering");

    // ---- prob ----
    auto* prob = app.add_subcommand("prob", "evaluate a success probability or bound");
    struct {
        std::string matrix, box, box_file, method, pos, xhat;
        double sigma = 0.0;
        std::size_t samples = 1000000;
    } popt;
    prob->add_option("--matrix", popt.matrix, "upper-triangular R file")->required();
    prob->add_option("--sigma", popt.sigma, "noise standard deviation")->required();
    prob->add_option("--method", popt.method,
                     "ob|or|bb-det|bb-bounds|bb-rand|br-det|br-rand|bl-det|bl-rand|bl-upper|mu-bl")
        ->required();
    prob->add_option("--box", popt.box, "uniform box L:U");
    prob->add_option("--box-file", popt.box_file, "per-dimension bounds file");
    prob->add_option("--pos", popt.pos, "position classes, e.g. lower,interior,upper");
    prob->add_option("--xhat", popt.xhat, "parameter vector, e.g. \"2 2\"");
    prob->add_option("--samples", popt.samples, "Monte Carlo samples");

    // ---- simulate ----
    auto* simulate = app.add_subcommand("simulate", "success-rate sweep over SNR or dimension");
    struct {
        std::string n = "20", snr = "15", box = "0:1", svg;
        std::size_t matrices = 20, trials = 200;
        bool plain_bils = false;
    } sopt;
    simulate->add_option("--n", sopt.n, "dimension, or sweep START:STEP:STOP");
    simulate->add_option("--snr", sopt.snr, "SNR dB, or sweep START:STEP:STOP");
    simulate->add_option("--box", sopt.box, "uniform box L:U")->required();
    simulate->add_option("--matrices", sopt.matrices, "matrices per grid point");
    simulate->add_option("--trials", sopt.trials, "trials per matrix");
    simulate->add_option("--svg", sopt.svg, "also write an SVG chart here");
    simulate->add_flag("--bils-plain", sopt.plain_bils,
                       "sphere-decode on the plain QR instead of V-BLAST");

    // ---- reproduce ----
    auto* repro = app.add_subcommand("reproduce", "canned protocol runs");
    struct {
        std::string target, scale = "desk", svg;
    } ropt;
    repro->add_option("target", ropt.target, "fig1|fig2|fig3|fig4|table2|table3")->required();
    repro->add_option("--scale", ropt.scale, "desk|paper");
    repro->add_option("--svg", ropt.svg, "also write an SVG chart here (figs only)");

    for (auto* sub : {detect, prob, simulate, repro}) {
        sub->add_flag("--no-echo", common.no_echo, "suppress # header lines");
        sub->add_option("--out", common.out_path, "write CSV here instead of stdout");
    }
    for (auto* sub : {prob, simulate, repro})
        sub->add_option("--seed", common.seed, "master 64-bit seed");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "argument error: " << e.what() << '\n';
        return 2;
    }

    try {
        OutputTarget target(common.out_path, out);
        std::ostream& os = target.stream();

        if (*detect) {
            const Matrix a = read_matrix_file(dopt.matrix);
            const std::vector<double> y = read_vector_file(dopt.y);
            if (y.size() != a.rows())
                throw ArgError("--y: expected " + std::to_string(a.rows()) + " entries");
            const Box box = resolve_box(dopt.box, dopt.box_file, a.cols());
            const QrFactors factors = dopt.vblast ? vblast_order(a) : qr_householder(a);
            const TriangularInstance tri = to_triangular(a, y, box, factors);

            DetectResult res;
            if (dopt.method == "rounding")
                res = detect_rounding(tri);
            else if (dopt.method == "babai")
                res = detect_babai(tri);
            else if (dopt.method == "bils")
                res = detect_sphere(tri);
            else if (dopt.method == "brute")
                res = detect_bruteforce(tri);
            else
                throw ArgError("--method: expected rounding|babai|bils|brute");

            echo_config(os, common, args);
            os << method_name(res.method) << ',' << fmt12(res.objective) << ','
               << (res.method == Method::Bils ? res.nodes : 0) << ',';
            for (std::size_t i = 0; i < res.x.size(); ++i) {
                if (i) os << ' ';
                os << res.x[i];
            }
            os << '\n';
            return 0;
        }

        if (*prob) {
            const Matrix r = read_matrix_file(popt.matrix);
            require_upper_triangular(r);
            const std::size_t n = r.rows();
            const double sigma = popt.sigma;
            if (!(sigma >= 0.0)) throw ArgError("--sigma: must be >= 0");
            const Seed seed{common.seed};

            echo_config(os, common, args);
            const auto emit = [&](const SuccessReport& rep) {
                os << rep.method << ',' << fmt12(rep.value) << ',' << fmt12(rep.error_estimate)
                   << '\n';
            };

            const std::string& m = popt.method;
            if (m == "ob") {
                emit(p_ob(r, sigma));
            } else if (m == "or") {
                emit(p_or(r, sigma));
            } else if (m == "bb-det") {
                if (popt.pos.empty()) throw ArgError("bb-det needs --pos");
                emit(p_bb_det(r, sigma, parse_positions(popt.pos, n)));
            } else if (m == "bb-bounds") {
                const ProbabilityBounds b = p_bb_det_bounds(r, sigma);
                os << "bb-bounds-low," << fmt12(b.low) << ",0\n";
                os << "bb-bounds-high," << fmt12(b.high) << ",0\n";
            } else if (m == "bb-rand") {
                emit(p_bb_rand(r, sigma, resolve_box(popt.box, popt.box_file, n)));
            } else if (m == "br-det") {
                if (popt.pos.empty()) throw ArgError("br-det needs --pos");
                emit(p_br_det(r, sigma, parse_positions(popt.pos, n)));
            } else if (m == "br-rand") {
                emit(p_br_rand(r, sigma, resolve_box(popt.box, popt.box_file, n)));
            } else if (m == "bl-det") {
                if (popt.xhat.empty()) throw ArgError("bl-det needs --xhat");
                const Box box = resolve_box(popt.box, popt.box_file, n);
                emit(p_bl_det(r, sigma, parse_int_vector(popt.xhat, n, "--xhat"), box,
                              popt.samples, seed));
            } else if (m == "bl-rand") {
                emit(p_bl_rand(r, sigma, resolve_box(popt.box, popt.box_file, n), popt.samples,
                               seed));
            } else if (m == "bl-upper") {
                emit(p_bl_det_upper(r, sigma));
            } else if (m == "mu-bl") {
                emit(mu_bl(r, sigma, resolve_box(popt.box, popt.box_file, n)));
            } else {
                throw ArgError("--method: unknown probability method '" + m + "'");
            }
            return 0;
        }

        if (*simulate) {
            const auto n_grid = parse_range(sopt.n, "--n");
            const auto snr_grid = parse_range(sopt.snr, "--snr");
            if (n_grid.size() > 1 && snr_grid.size() > 1)
                throw ArgError("only one of --n / --snr may be a range");
            // two scalars: treat SNR as a single-point sweep axis

            ExperimentConfig cfg;
            const auto [lo, up] = parse_box_spec(sopt.box);
            cfg.box_lo = lo;
            cfg.box_up = up;
            cfg.num_matrices = sopt.matrices;
            cfg.trials_per_matrix = sopt.trials;
            cfg.seed = Seed{common.seed};
            cfg.vblast_for_bils = !sopt.plain_bils;
            if (n_grid.size() == 1) {
                cfg.n = static_cast<std::size_t>(n_grid[0]);
                cfg.snr_grid_db = snr_grid;
            } else {
                cfg.snr_db = snr_grid[0];
                for (double v : n_grid) {
                    if (v < 1) throw ArgError("--n: dimensions must be >= 1");
                    cfg.n_grid.push_back(static_cast<std::size_t>(v));
                }
            }

            const auto rows = run_sweep(cfg);
            echo_config(os, common, args);
            emit_csv(rows, os);
            if (!sopt.svg.empty()) emit_svg_lines(rows, sopt.svg);
            return 0;
        }

        if (*repro) {
            Scale scale;
            if (ropt.scale == "desk")
                scale = Scale::Desk;
            else if (ropt.scale == "paper")
                scale = Scale::Paper;
            else
                throw ArgError("--scale: expected desk|paper");

            ReproduceResult result;
            try {
                result = reproduce(ropt.target, Seed{common.seed}, scale);
            } catch (const std::invalid_argument& e) {
                throw ArgError(e.what());
            }
            if (!ropt.svg.empty()) {
                if (result.svg.empty()) throw ArgError("--svg: no chart for table targets");
                std::ofstream svg(ropt.svg);
                if (!svg) throw FormatError("cannot open for writing: " + ropt.svg);
                svg << result.svg;
            }
            echo_config(os, common, args);
            os << result.csv;
            return 0;
        }
    } catch (const ArgError& e) {
        err << "argument error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << e.name() << ": " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "InvalidArgument: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

} // namespace bils
