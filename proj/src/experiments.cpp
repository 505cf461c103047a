#include "bils/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "bils/detectors.hpp"
#include "bils/errors.hpp"
#include "bils/io.hpp"
#include "bils/parallel.hpp"
#include "bils/probability.hpp"

namespace bils {

namespace {

struct MatrixTally {
    std::uint64_t rounding = 0, babai = 0, babai_vblast = 0, bils = 0;
    double theory_bb = 0.0;
    double theory_ub = 0.0;
};

void validate(const ExperimentConfig& cfg) {
    const bool snr_axis = !cfg.snr_grid_db.empty();
    const bool n_axis = !cfg.n_grid.empty();
    if (snr_axis == n_axis)
        throw std::invalid_argument("exactly one of snr_grid_db / n_grid must be the sweep axis");
    if (cfg.num_matrices == 0 || cfg.trials_per_matrix == 0)
        throw std::invalid_argument("matrix and trial counts must be >= 1");
    if (cfg.box_lo >= cfg.box_up) throw std::invalid_argument("box needs lo < up");
    if (snr_axis && cfg.n == 0) throw std::invalid_argument("dimension must be >= 1");

    const std::size_t points = snr_axis ? cfg.snr_grid_db.size() : cfg.n_grid.size();
    const double calls = 4.0 * static_cast<double>(points) *
                         static_cast<double>(cfg.num_matrices) *
                         static_cast<double>(cfg.trials_per_matrix);
    if (calls > 1e7)
        throw BudgetExceededError("sweep would need " + std::to_string(calls) +
                                  " detector calls (budget 1e7)");
}

} // namespace

double SweepRow::stderr_bound() const {
    return total ? 0.5 / std::sqrt(static_cast<double>(total)) : 0.0;
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg) {
    validate(cfg);
    const bool snr_axis = !cfg.snr_grid_db.empty();
    const std::size_t points = snr_axis ? cfg.snr_grid_db.size() : cfg.n_grid.size();
    const unsigned u_width = static_cast<unsigned>(cfg.box_up - cfg.box_lo);

    // slot[m * points + ax], reduced in index order afterwards
    std::vector<MatrixTally> slots(cfg.num_matrices * points);

    parallel_for(cfg.num_matrices, [&](std::size_t m_idx) {
        Matrix a;
        QrFactors plain, vblast;
        bool have_factors = false;

        for (std::size_t ax = 0; ax < points; ++ax) {
            const std::size_t n = snr_axis ? cfg.n : cfg.n_grid[ax];
            const double snr = snr_axis ? cfg.snr_grid_db[ax] : cfg.snr_db;
            const double sigma = sigma_from_snr(snr, u_width);
            const Box box = Box::uniform(n, cfg.box_lo, cfg.box_up);
            // SNR sweeps share draws across grid points; dimension sweeps
            // salt the streams with the grid index
            const std::uint64_t salt = snr_axis ? 0 : ax + 1;

            if (!have_factors || !snr_axis) {
                Stream mat_stream(cfg.seed, {stream_label::matrix, salt, m_idx});
                a = gaussian_matrix(n, n, mat_stream);
                plain = qr_householder(a);
                vblast = vblast_order(a);
                have_factors = true;
            }
            const Box box_v = box.permuted(vblast.perm);

            MatrixTally& tally = slots[m_idx * points + ax];
            tally.theory_bb = p_bb_rand(vblast.r, sigma, box_v).value;
            tally.theory_ub = mu_bl(vblast.r, sigma, box_v).value;

            for (std::size_t t = 0; t < cfg.trials_per_matrix; ++t) {
                Stream par_stream(cfg.seed, {stream_label::parameter, salt, m_idx, t});
                Stream noise_stream(cfg.seed, {stream_label::noise, salt, m_idx, t});
                const std::vector<int> x_hat = uniform_box_vector(box, par_stream);
                std::vector<double> y = multiply_int(a, x_hat);
                for (auto& v : y) v += sigma * noise_stream.normal();

                const TriangularInstance tri_p = to_triangular(a, y, box, plain, sigma);
                const TriangularInstance tri_v = to_triangular(a, y, box, vblast, sigma);

                if (detect_rounding(tri_p).x == x_hat) ++tally.rounding;
                if (detect_babai(tri_p).x == x_hat) ++tally.babai;
                if (detect_babai(tri_v).x == x_hat) ++tally.babai_vblast;
                const auto& tri_bils = cfg.vblast_for_bils ? tri_v : tri_p;
                if (detect_sphere(tri_bils).x == x_hat) ++tally.bils;
            }
        }
    });

    std::vector<SweepRow> rows(points);
    for (std::size_t ax = 0; ax < points; ++ax) {
        SweepRow& row = rows[ax];
        row.axis = snr_axis ? cfg.snr_grid_db[ax] : static_cast<double>(cfg.n_grid[ax]);
        row.total = cfg.num_matrices * cfg.trials_per_matrix;
        for (std::size_t m_idx = 0; m_idx < cfg.num_matrices; ++m_idx) {
            const MatrixTally& t = slots[m_idx * points + ax];
            row.rounding_hits += t.rounding;
            row.babai_hits += t.babai;
            row.babai_vblast_hits += t.babai_vblast;
            row.bils_hits += t.bils;
            row.babai_vblast_theory += t.theory_bb;
            row.bils_upper += t.theory_ub;
        }
        row.babai_vblast_theory /= static_cast<double>(cfg.num_matrices);
        row.bils_upper /= static_cast<double>(cfg.num_matrices);
    }
    return rows;
}

std::vector<std::pair<double, double>> ratio_table(const std::vector<SweepRow>& rows) {
    std::vector<std::pair<double, double>> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        const double rate = row.bils_rate();
        const double ratio =
            rate > 0.0 ? row.bils_upper / rate : std::numeric_limits<double>::infinity();
        out.emplace_back(row.axis, ratio);
    }
    return out;
}

std::vector<std::pair<double, double>> ratio_table(const ExperimentConfig& cfg) {
    return ratio_table(run_sweep(cfg));
}

namespace {

std::string fmt12(double v) {
    if (std::isinf(v)) return "inf";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

} // namespace

void emit_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
    if (rows.empty()) throw std::invalid_argument("emit_csv: no rows");
    out << "axis,rounding,babai,babai_vblast_e,bils,babai_vblast_t,bils_ub,stderr\n";
    for (const auto& r : rows) {
        out << fmt12(r.axis) << ',' << fmt12(r.rounding_rate()) << ',' << fmt12(r.babai_rate())
            << ',' << fmt12(r.babai_vblast_rate()) << ',' << fmt12(r.bils_rate()) << ','
            << fmt12(r.babai_vblast_theory) << ',' << fmt12(r.bils_upper) << ','
            << fmt12(r.stderr_bound()) << '\n';
    }
}

void emit_csv(const std::vector<SweepRow>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot open for writing: " + path);
    emit_csv(rows, out);
    if (!out) throw FormatError("write failed: " + path);
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    emit_csv(rows, out);
    return out.str();
}

void emit_svg_lines(const std::vector<SweepRow>& rows, std::ostream& out) {
    if (rows.empty()) throw std::invalid_argument("emit_svg_lines: no rows");
    const double width = 720, height = 480;
    const double ml = 60, mr = 160, mt = 20, mb = 40;
    double x_min = rows.front().axis, x_max = rows.back().axis;
    if (x_max == x_min) x_max = x_min + 1;

    const auto px = [&](double axis) {
        return ml + (axis - x_min) / (x_max - x_min) * (width - ml - mr);
    };
    const auto py = [&](double rate) { return mt + (1.0 - rate) * (height - mt - mb); };

    struct Series {
        const char* label;
        const char* color;
        double (*get)(const SweepRow&);
    };
    static const Series series[] = {
        {"rounding", "#d62728", [](const SweepRow& r) { return r.rounding_rate(); }},
        {"babai", "#ff7f0e", [](const SweepRow& r) { return r.babai_rate(); }},
        {"babai_vblast_e", "#2ca02c", [](const SweepRow& r) { return r.babai_vblast_rate(); }},
        {"bils", "#1f77b4", [](const SweepRow& r) { return r.bils_rate(); }},
        {"babai_vblast_t", "#9467bd", [](const SweepRow& r) { return r.babai_vblast_theory; }},
        {"bils_ub", "#8c564b", [](const SweepRow& r) { return r.bils_upper; }},
    };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    // axes
    out << "<line x1=\"" << ml << "\" y1=\"" << py(0) << "\" x2=\"" << width - mr << "\" y2=\""
        << py(0) << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << py(0) << "\" x2=\"" << ml << "\" y2=\"" << py(1)
        << "\" stroke=\"black\"/>\n";
    for (const auto& r : rows)
        out << "<text x=\"" << px(r.axis) << "\" y=\"" << height - 18
            << "\" font-size=\"11\" text-anchor=\"middle\">" << fmt12(r.axis) << "</text>\n";
    for (int tick = 0; tick <= 4; ++tick) {
        const double v = tick / 4.0;
        out << "<text x=\"" << ml - 8 << "\" y=\"" << py(v) + 4
            << "\" font-size=\"11\" text-anchor=\"end\">" << fmt12(v) << "</text>\n";
    }
    int legend_row = 0;
    for (const auto& s : series) {
        out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
        bool first = true;
        for (const auto& r : rows) {
            if (!first) out << ' ';
            out << px(r.axis) << ',' << py(s.get(r));
            first = false;
        }
        out << "\"/>\n";
        const double ly = mt + 16 * legend_row++;
        out << "<line x1=\"" << width - mr + 10 << "\" y1=\"" << ly + 6 << "\" x2=\""
            << width - mr + 34 << "\" y2=\"" << ly + 6 << "\" stroke=\"" << s.color
            << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << width - mr + 40 << "\" y=\"" << ly + 10 << "\" font-size=\"12\">"
            << s.label << "</text>\n";
    }
    out << "</svg>\n";
}

void emit_svg_lines(const std::vector<SweepRow>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot open for writing: " + path);
    emit_svg_lines(rows, out);
    if (!out) throw FormatError("write failed: " + path);
}

namespace {

std::vector<double> arange(double lo, double step, double hi) {
    std::vector<double> out;
    for (double v = lo; v <= hi + 1e-9; v += step) out.push_back(v);
    return out;
}

ExperimentConfig preset(Seed seed, Scale scale) {
    ExperimentConfig cfg;
    cfg.seed = seed;
    cfg.num_matrices = scale == Scale::Desk ? 20 : 100;
    cfg.trials_per_matrix = scale == Scale::Desk ? 200 : 100;
    return cfg;
}

std::string wide_ratio_csv(const ExperimentConfig& base, const std::vector<double>& axis,
                           bool snr_axis) {
    std::ostringstream csv;
    csv << "box";
    for (double v : axis) csv << ',' << fmt12(v);
    csv << '\n';
    for (int up : {1, 7}) {
        ExperimentConfig cfg = base;
        cfg.box_lo = 0;
        cfg.box_up = up;
        if (snr_axis) {
            cfg.snr_grid_db = axis;
        } else {
            cfg.n_grid.assign(axis.begin(), axis.end());
        }
        const auto ratios = ratio_table(cfg);
        csv << "0:" << up;
        for (const auto& [_, ratio] : ratios) csv << ',' << fmt12(ratio);
        csv << '\n';
    }
    return csv.str();
}

} // namespace

ReproduceResult reproduce(const std::string& name, Seed seed, Scale scale) {
    ExperimentConfig cfg = preset(seed, scale);
    ReproduceResult out;

    if (name == "fig1" || name == "fig2") {
        cfg.n = 20;
        cfg.box_up = name == "fig1" ? 1 : 7;
        cfg.snr_grid_db = arange(5, 5, 40);
    } else if (name == "fig3" || name == "fig4") {
        cfg.snr_db = 15.0;
        cfg.box_up = name == "fig3" ? 1 : 7;
        for (std::size_t n = 5; n <= 40; n += 5) cfg.n_grid.push_back(n);
    } else if (name == "table2") {
        cfg.n = 20;
        out.csv = wide_ratio_csv(cfg, arange(4, 4, 32), true);
        return out;
    } else if (name == "table3") {
        cfg.snr_db = 15.0;
        out.csv = wide_ratio_csv(cfg, arange(5, 5, 40), false);
        return out;
    } else {
        throw std::invalid_argument("unknown reproduce target: " + name +
                                    " (expected fig1|fig2|fig3|fig4|table2|table3)");
    }

    const auto rows = run_sweep(cfg);
    out.csv = sweep_csv(rows);
    std::ostringstream svg;
    emit_svg_lines(rows, svg);
    out.svg = svg.str();
    return out;
}

} // namespace bils
