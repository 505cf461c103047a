#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "bils/model.hpp"
#include "bils/rng.hpp"

namespace bils {

/// Sweep description.  Exactly one of snr_grid_db / n_grid is the axis.
/// Boxes are uniform [lo, up] per dimension (the protocol's boxes are
/// [0, u]^n and the SNR-to-sigma map needs a single width).
struct ExperimentConfig {
    std::size_t n = 0;                 // dimension (m = n); ignored for n sweeps
    int box_lo = 0;
    int box_up = 1;
    std::vector<double> snr_grid_db;   // SNR sweep axis, or...
    std::vector<std::size_t> n_grid;   // ...dimension sweep axis
    double snr_db = 15.0;              // fixed SNR for dimension sweeps
    std::size_t num_matrices = 20;
    std::size_t trials_per_matrix = 200;
    Seed seed;
    bool vblast_for_bils = true;       // sphere-decode on the V-BLAST factors
};

/// One grid point: experimental success rates for the four detectors plus
/// the two theory overlays, with raw counts kept for standard errors.
struct SweepRow {
    double axis = 0.0;
    std::uint64_t total = 0;
    std::uint64_t rounding_hits = 0;
    std::uint64_t babai_hits = 0;
    std::uint64_t babai_vblast_hits = 0;
    std::uint64_t bils_hits = 0;
    double babai_vblast_theory = 0.0;  // mean p_bb_rand over the V-BLAST factors
    double bils_upper = 0.0;           // mean mu_bl over the V-BLAST factors

    double rounding_rate() const { return static_cast<double>(rounding_hits) / total; }
    double babai_rate() const { return static_cast<double>(babai_hits) / total; }
    double babai_vblast_rate() const { return static_cast<double>(babai_vblast_hits) / total; }
    double bils_rate() const { return static_cast<double>(bils_hits) / total; }
    /// Conservative binomial standard-error bound 1/(2 sqrt(total)).
    double stderr_bound() const;
};

/// Run the protocol: per grid point, num_matrices Gaussian matrices, each
/// factored plainly and with V-BLAST once; per trial a fresh (x, v) pair
/// shared by all four detectors.  For SNR sweeps the matrix / parameter /
/// unit-noise draws are shared across grid points so the per-trial success
/// indicators are monotone in SNR.  Deterministic under cfg.seed for any
/// BILS_THREADS setting.  Budget: at most 1e7 detector calls.
std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg);

/// BILS-UB / experimental-BILS per grid point; +inf when the experimental
/// rate is zero.
std::vector<std::pair<double, double>> ratio_table(const ExperimentConfig& cfg);
std::vector<std::pair<double, double>> ratio_table(const std::vector<SweepRow>& rows);

void emit_csv(const std::vector<SweepRow>& rows, std::ostream& out);
void emit_csv(const std::vector<SweepRow>& rows, const std::string& path);
std::string sweep_csv(const std::vector<SweepRow>& rows);

/// Minimal multi-series line chart (one polyline per rate/theory column).
void emit_svg_lines(const std::vector<SweepRow>& rows, std::ostream& out);
void emit_svg_lines(const std::vector<SweepRow>& rows, const std::string& path);

enum class Scale { Desk, Paper };

/// Canned protocol runs.
///   fig1: SNR 5:5:40, n=20, box [0,1]  (rates vs SNR)
///   fig2: SNR 5:5:40, n=20, box [0,7]
///   fig3: n 5:5:40, SNR 15, box [0,1]  (rates vs dimension)
///   fig4: n 5:5:40, SNR 15, box [0,7]
///   table2: ratio BILS-UB / BILS vs SNR 4:4:32, n=20, boxes [0,1] and [0,7]
///   table3: ratio vs n 5:5:40, SNR 15, boxes [0,1] and [0,7]
/// Desk scale: 20 matrices x 200 trials; paper scale: 100 x 100.
struct ReproduceResult {
    std::string csv;
    std::string svg;  // empty for tables
};
ReproduceResult reproduce(const std::string& name, Seed seed, Scale scale);

} // namespace bils
