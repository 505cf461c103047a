#include "bils/probability.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bils/detectors.hpp"
#include "bils/errors.hpp"
#include "bils/parallel.hpp"

namespace bils {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDegenerateSigma = 1e-12;
constexpr double kTailSigmas = 7.5;       // one-sided mass 3.2e-14 < 1e-12
constexpr double kPanelTol = 1e-10;       // stop doubling below this delta
constexpr double kSqrt2Pi = 2.5066282746310005;
constexpr double kSqrtPi = 1.7724538509055160;

double product_diag(const Matrix& r) {
    double p = 1.0;
    for (std::size_t i = 0; i < r.rows(); ++i) p *= r(i, i);
    return p;
}

// 16-point Gauss-Legendre rule on [-1, 1], nodes by Newton iteration.
struct GaussLegendre16 {
    std::array<double, 16> x{};
    std::array<double, 16> w{};
    GaussLegendre16() {
        const int n = 16;
        for (int k = 0; k < n; ++k) {
            double t = std::cos(M_PI * (k + 0.75) / (n + 0.5));
            double p0 = 0.0, p1 = 0.0;
            for (int iter = 0; iter < 100; ++iter) {
                p0 = 1.0;
                p1 = t;
                for (int j = 2; j <= n; ++j) {
                    const double p2 = ((2.0 * j - 1.0) * t * p1 - (j - 1.0) * p0) / j;
                    p0 = p1;
                    p1 = p2;
                }
                const double dp = n * (t * p1 - p0) / (t * t - 1.0);
                const double step = p1 / dp;
                t -= step;
                if (std::abs(step) < 1e-15) break;
            }
            p0 = 1.0;
            p1 = t;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * t * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (t * p1 - p0) / (t * t - 1.0);
            x[static_cast<std::size_t>(k)] = t;
            w[static_cast<std::size_t>(k)] = 2.0 / ((1.0 - t * t) * dp * dp);
        }
    }
};

const GaussLegendre16& gl16() {
    static const GaussLegendre16 rule;
    return rule;
}

// Marginal standard deviations of xi ~ N(0, sigma^2 (R^T R)^-1):
// sigma * row norms of R^-1.
std::vector<double> marginal_stds(const Matrix& r, double sigma) {
    const std::size_t n = r.rows();
    std::vector<double> stds(n);
    for (std::size_t i = 0; i < n; ++i) {
        // row i of R^-1: solve x^T R = e_i^T
        std::vector<double> x(n, 0.0);
        for (std::size_t j = i; j < n; ++j) {
            double sum = (j == i) ? 1.0 : 0.0;
            for (std::size_t k = i; k < j; ++k) sum -= r(k, j) * x[k];
            x[j] = sum / r(j, j);
        }
        double norm2 = 0.0;
        for (double v : x) norm2 += v * v;
        stds[i] = sigma * std::sqrt(norm2);
    }
    return stds;
}

struct QuadSetup {
    std::vector<double> lo, hi;   // effective finite bounds
    double trunc_mass = 0.0;      // union bound on clipped probability mass
    bool empty = false;
};

QuadSetup truncate_domain(const IntervalProduct& domain, const std::vector<double>& stds) {
    QuadSetup s;
    const std::size_t n = domain.size();
    s.lo.resize(n);
    s.hi.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(domain[i].lo < domain[i].hi))
            throw std::invalid_argument("interval endpoints out of order");
        const double cut = kTailSigmas * stds[i];
        const double lo = std::max(domain[i].lo, -cut);
        const double hi = std::min(domain[i].hi, cut);
        // clipped marginal mass (only where we actually truncated)
        if (lo > domain[i].lo)
            s.trunc_mass += normal_cdf(lo / stds[i]) -
                            (std::isfinite(domain[i].lo) ? normal_cdf(domain[i].lo / stds[i]) : 0.0);
        if (hi < domain[i].hi)
            s.trunc_mass += (std::isfinite(domain[i].hi) ? normal_cdf(domain[i].hi / stds[i]) : 1.0) -
                            normal_cdf(hi / stds[i]);
        if (!(lo < hi)) {
            s.empty = true;
            return s;
        }
        s.lo[i] = lo;
        s.hi[i] = hi;
    }
    return s;
}

// Composite per-dimension Gauss-Legendre nodes.
void build_nodes(double lo, double hi, std::size_t panels,
                 std::vector<double>& xs, std::vector<double>& ws) {
    const auto& rule = gl16();
    const double h = (hi - lo) / static_cast<double>(panels);
    xs.clear();
    ws.clear();
    xs.reserve(panels * 16);
    ws.reserve(panels * 16);
    for (std::size_t p = 0; p < panels; ++p) {
        const double mid = lo + (static_cast<double>(p) + 0.5) * h;
        const double half = 0.5 * h;
        for (int k = 0; k < 16; ++k) {
            xs.push_back(mid + half * rule.x[static_cast<std::size_t>(k)]);
            ws.push_back(half * rule.w[static_cast<std::size_t>(k)]);
        }
    }
}

// integral of exp(-||R xi||^2 / (2 sigma^2)) over the node grid
double tensor_eval(const Matrix& r, double inv2s2,
                   const std::vector<std::vector<double>>& xs,
                   const std::vector<std::vector<double>>& ws) {
    const std::size_t n = r.rows();
    // acc[depth][k] = sum_{j > depth} r(k, j) xi_j for k <= depth
    std::vector<std::vector<double>> acc(n, std::vector<double>(n, 0.0));
    double total = 0.0;

    // depth runs from n-1 (outermost) to 0
    auto recurse = [&](auto&& self, std::size_t depth, double esum, double wprod) -> void {
        const auto& x = xs[depth];
        const auto& w = ws[depth];
        const double rdd = r(depth, depth);
        if (depth == 0) {
            const double a = acc[0][0];
            double sub = 0.0;
            for (std::size_t t = 0; t < x.size(); ++t) {
                const double row = a + rdd * x[t];
                sub += w[t] * std::exp(-(esum + row * row) * inv2s2);
            }
            total += wprod * sub;
            return;
        }
        for (std::size_t t = 0; t < x.size(); ++t) {
            const double xi = x[t];
            const double row = acc[depth][depth] + rdd * xi;
            auto& child = acc[depth - 1];
            for (std::size_t k = 0; k < depth; ++k)
                child[k] = acc[depth][k] + r(k, depth) * xi;
            self(self, depth - 1, esum + row * row, wprod * w[t]);
        }
    };
    recurse(recurse, n - 1, 0.0, 1.0);
    return total;
}

struct RawQuad {
    double value = 0.0;       // unnormalized integral
    double delta = 0.0;       // refinement change at the accepted stage
    double trunc_mass = 0.0;  // clipped probability mass
    bool empty = false;
};

RawQuad integrate_raw(const Matrix& r, double sigma, const IntervalProduct& domain,
                      double convergence_scale) {
    require_upper_triangular(r);
    const std::size_t n = r.rows();
    if (n > 4) throw DimensionTooLargeError("quadrature limited to n <= 4");
    if (domain.size() != n) throw std::invalid_argument("domain dimension mismatch");
    if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");

    const auto stds = marginal_stds(r, sigma);
    const QuadSetup setup = truncate_domain(domain, stds);
    RawQuad out;
    out.trunc_mass = setup.trunc_mass;
    if (setup.empty) {
        out.empty = true;
        return out;
    }

    const double inv2s2 = 1.0 / (2.0 * sigma * sigma);
    std::vector<std::size_t> panels(n);
    const std::size_t cap = n >= 4 ? 2 : (n == 3 ? 4 : 8);
    for (std::size_t i = 0; i < n; ++i) {
        const double span = (setup.hi[i] - setup.lo[i]) / stds[i];
        panels[i] = std::clamp<std::size_t>(static_cast<std::size_t>(std::ceil(span / 6.0)),
                                            1, cap);
    }

    std::vector<std::vector<double>> xs(n), ws(n);
    double prev = 0.0;
    bool have_prev = false;
    for (int stage = 0; stage < 7; ++stage) {
        double evals = 1.0;
        for (std::size_t i = 0; i < n; ++i) evals *= static_cast<double>(panels[i] * 16);
        if (evals > 6e7 && have_prev) break;  // keep the last converged-enough stage
        for (std::size_t i = 0; i < n; ++i)
            build_nodes(setup.lo[i], setup.hi[i], panels[i], xs[i], ws[i]);
        const double v = tensor_eval(r, inv2s2, xs, ws);
        if (have_prev) {
            out.delta = std::abs(v - prev);
            prev = v;
            if (out.delta * convergence_scale < kPanelTol) break;
        } else {
            prev = v;
            have_prev = true;
        }
        for (auto& p : panels) p *= 2;
    }
    out.value = prev;
    return out;
}

SuccessReport degenerate_success(const std::string& method) {
    SuccessReport rep;
    rep.value = 1.0;
    rep.method = method;
    rep.error_estimate = 0.0;
    return rep;
}

void check_box_matches(const Matrix& r, const Box& box) {
    if (box.dim() != r.rows())
        throw std::invalid_argument("box dimension does not match the matrix");
}

// enumeration of all box points in lexicographic order
std::vector<std::vector<int>> enumerate_box(const Box& box, long long guard) {
    if (box.cardinality(guard) > guard)
        throw BoxTooLargeError("box has more than " + std::to_string(guard) + " points");
    std::vector<std::vector<int>> points;
    std::vector<int> x(box.lower);
    while (true) {
        points.push_back(x);
        bool done = true;
        for (std::size_t i = box.dim(); i-- > 0;) {
            if (x[i] < box.upper[i]) {
                ++x[i];
                done = false;
                break;
            }
            x[i] = box.lower[i];
        }
        if (done) break;
    }
    return points;
}

struct HalfSpace {
    std::vector<double> w;  // R (x - x_hat)
    double threshold;       // ||w||^2 / 2
};

std::vector<HalfSpace> success_region(const Matrix& r, const std::vector<int>& x_hat,
                                      const Box& box) {
    std::vector<HalfSpace> cons;
    const std::size_t n = r.rows();
    for (const auto& x : enumerate_box(box, 4096)) {
        if (x == x_hat) continue;
        std::vector<int> diff(n);
        for (std::size_t i = 0; i < n; ++i) diff[i] = x[i] - x_hat[i];
        HalfSpace h;
        h.w.assign(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = i; j < n; ++j) s += r(i, j) * diff[j];
            h.w[i] = s;
        }
        double norm2 = 0.0;
        for (double v : h.w) norm2 += v * v;
        h.threshold = 0.5 * norm2;
        cons.push_back(std::move(h));
    }
    // most binding constraints first for early rejection
    std::sort(cons.begin(), cons.end(),
              [](const HalfSpace& a, const HalfSpace& b) { return a.threshold < b.threshold; });
    return cons;
}

constexpr std::size_t kMcShards = 16;

std::vector<std::size_t> shard_sizes(std::size_t samples) {
    std::vector<std::size_t> sizes(kMcShards, samples / kMcShards);
    for (std::size_t s = 0; s < samples % kMcShards; ++s) ++sizes[s];
    return sizes;
}

// Laplace-smoothed so a degenerate 0/1 estimate still reports the
// uncertainty a finite sample carries.
double binom_se(std::size_t hits, std::size_t samples) {
    if (samples == 0) return 0.0;
    const double s = static_cast<double>(samples);
    const double p = (static_cast<double>(hits) + 1.0) / (s + 2.0);
    return std::sqrt(p * (1.0 - p) / s);
}

} // namespace

PositionClass classify(const std::vector<int>& x_hat, const Box& box) {
    if (!box.contains(x_hat))
        throw std::invalid_argument("parameter vector lies outside the box");
    PositionClass pos(box.dim());
    for (std::size_t i = 0; i < box.dim(); ++i) {
        if (x_hat[i] == box.lower[i])
            pos[i] = Position::AtLower;
        else if (x_hat[i] == box.upper[i])
            pos[i] = Position::AtUpper;
        else
            pos[i] = Position::Interior;
    }
    return pos;
}

double phi_sigma(double zeta, double sigma) {
    if (zeta < 0.0) throw std::invalid_argument("phi_sigma: zeta must be >= 0");
    if (!(sigma > 0.0)) throw std::invalid_argument("phi_sigma: sigma must be positive");
    return std::erf(zeta / (2.0 * std::sqrt(2.0) * sigma));
}

double normal_cdf(double z) {
    return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

SuccessReport p_ob(const Matrix& r, double sigma) {
    require_upper_triangular(r);
    if (sigma <= kDegenerateSigma) return degenerate_success("ob");
    SuccessReport rep;
    rep.method = "ob";
    rep.value = 1.0;
    for (std::size_t i = 0; i < r.rows(); ++i) {
        const double f = phi_sigma(r(i, i), sigma);
        rep.detail.push_back(f);
        rep.value *= f;
    }
    return rep;
}

SuccessReport p_bb_det(const Matrix& r, double sigma, const PositionClass& pos) {
    require_upper_triangular(r);
    if (pos.size() != r.rows()) throw std::invalid_argument("position class dimension mismatch");
    if (sigma <= kDegenerateSigma) return degenerate_success("bb-det");
    SuccessReport rep;
    rep.method = "bb-det";
    rep.value = 1.0;
    for (std::size_t i = 0; i < r.rows(); ++i) {
        const double phi = phi_sigma(r(i, i), sigma);
        const double f = pos[i] == Position::Interior ? phi : 0.5 * (1.0 + phi);
        rep.detail.push_back(f);
        rep.value *= f;
    }
    return rep;
}

ProbabilityBounds p_bb_det_bounds(const Matrix& r, double sigma) {
    require_upper_triangular(r);
    ProbabilityBounds b{1.0, 1.0};
    if (sigma <= kDegenerateSigma) return b;
    for (std::size_t i = 0; i < r.rows(); ++i) {
        const double phi = phi_sigma(r(i, i), sigma);
        b.low *= phi;
        b.high *= 0.5 * (1.0 + phi);
    }
    return b;
}

SuccessReport p_bb_rand(const Matrix& r, double sigma, const Box& box) {
    require_upper_triangular(r);
    check_box_matches(r, box);
    if (sigma <= kDegenerateSigma) return degenerate_success("bb-rand");
    SuccessReport rep;
    rep.method = "bb-rand";
    rep.value = 1.0;
    for (std::size_t i = 0; i < r.rows(); ++i) {
        const double gamma = static_cast<double>(box.width(i));
        const double f = (1.0 + (gamma - 1.0) * phi_sigma(r(i, i), sigma)) / gamma;
        rep.detail.push_back(f);
        rep.value *= f;
    }
    return rep;
}

SuccessReport gauss_box_integral(const Matrix& r, double sigma, const IntervalProduct& domain) {
    const double norm_const =
        product_diag(r) / std::pow(kSqrt2Pi * sigma, static_cast<double>(r.rows()));
    const RawQuad q = integrate_raw(r, sigma, domain, norm_const);
    SuccessReport rep;
    rep.method = "quadrature";
    rep.value = q.empty ? 0.0 : norm_const * q.value;
    rep.error_estimate = norm_const * q.delta + q.trunc_mass;
    return rep;
}

double raw_box_integral(const Matrix& r, double sigma, const IntervalProduct& domain,
                        double* error_estimate) {
    const RawQuad q = integrate_raw(r, sigma, domain, 1.0);
    if (error_estimate) {
        const double norm_const =
            product_diag(r) / std::pow(kSqrt2Pi * sigma, static_cast<double>(r.rows()));
        *error_estimate = q.delta + (norm_const > 0.0 ? q.trunc_mass / norm_const : 0.0);
    }
    return q.empty ? 0.0 : q.value;
}

SuccessReport p_br_det(const Matrix& r, double sigma, const PositionClass& pos) {
    require_upper_triangular(r);
    if (pos.size() != r.rows()) throw std::invalid_argument("position class dimension mismatch");
    if (sigma <= kDegenerateSigma) return degenerate_success("br-det");
    IntervalProduct domain(pos.size());
    for (std::size_t i = 0; i < pos.size(); ++i) {
        switch (pos[i]) {
            case Position::AtLower: domain[i] = {-kInf, 0.5}; break;
            case Position::Interior: domain[i] = {-0.5, 0.5}; break;
            case Position::AtUpper: domain[i] = {-0.5, kInf}; break;
        }
    }
    SuccessReport rep = gauss_box_integral(r, sigma, domain);
    rep.method = "br-det";
    return rep;
}

SuccessReport p_or(const Matrix& r, double sigma) {
    require_upper_triangular(r);
    if (sigma <= kDegenerateSigma) return degenerate_success("or");
    SuccessReport rep =
        gauss_box_integral(r, sigma, IntervalProduct(r.rows(), Interval{-0.5, 0.5}));
    rep.method = "or";
    return rep;
}

SuccessReport p_br_rand_expansion(const Matrix& r, double sigma, const Box& box) {
    require_upper_triangular(r);
    check_box_matches(r, box);
    const std::size_t n = r.rows();
    if (n > 3) throw DimensionTooLargeError("p_br_rand limited to n <= 3");
    if (sigma <= kDegenerateSigma) return degenerate_success("br-rand-expansion");

    SuccessReport rep;
    rep.method = "br-rand-expansion";
    for (std::size_t mask = 0; mask < (1u << n); ++mask) {
        double coeff = 1.0;
        IntervalProduct domain(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double gamma = static_cast<double>(box.width(i));
            if (mask & (1u << i)) {
                coeff *= 1.0 / gamma;               // alpha_i, full line
                domain[i] = {-kInf, kInf};
            } else {
                coeff *= (gamma - 1.0) / gamma;     // beta_i, unit interval
                domain[i] = {-0.5, 0.5};
            }
        }
        const SuccessReport term = gauss_box_integral(r, sigma, domain);
        rep.value += coeff * term.value;
        rep.error_estimate += coeff * term.error_estimate;
    }
    return rep;
}

SuccessReport p_br_rand(const Matrix& r, double sigma, const Box& box) {
    require_upper_triangular(r);
    check_box_matches(r, box);
    const std::size_t n = r.rows();
    if (n > 3) throw DimensionTooLargeError("p_br_rand limited to n <= 3");
    const long long card = box.cardinality(512);
    if (card > 512) throw BoxTooLargeError("p_br_rand limited to 512 box points");
    if (sigma <= kDegenerateSigma) return degenerate_success("br-rand");

    // box average of the per-position values, grouped by position class
    // (the value depends on the class only)
    double sum = 0.0, err = 0.0;
    PositionClass pos(n);
    auto walk = [&](auto&& self, std::size_t i, double count) -> void {
        if (i == n) {
            const SuccessReport part = p_br_det(r, sigma, pos);
            sum += count * part.value;
            err += count * part.error_estimate;
            return;
        }
        const double interior = static_cast<double>(box.width(i)) - 2.0;
        pos[i] = Position::AtLower;
        self(self, i + 1, count);
        pos[i] = Position::AtUpper;
        self(self, i + 1, count);
        if (interior > 0.0) {
            pos[i] = Position::Interior;
            self(self, i + 1, count * interior);
        }
    };
    walk(walk, 0, 1.0);

    SuccessReport rep;
    rep.method = "br-rand";
    rep.value = sum / static_cast<double>(card);
    rep.error_estimate = err / static_cast<double>(card);

    const SuccessReport alt = p_br_rand_expansion(r, sigma, box);
    const double mismatch = std::abs(rep.value - alt.value);
    const double budget =
        std::max(1e-8, 10.0 * (rep.error_estimate + alt.error_estimate));
    if (mismatch > budget)
        throw ConsistencyError("box-average and mixture-expansion forms disagree by " +
                               std::to_string(mismatch));
    rep.error_estimate += mismatch;
    rep.detail = {rep.value, alt.value};
    return rep;
}

SuccessReport p_bl_det(const Matrix& r, double sigma, const std::vector<int>& x_hat,
                       const Box& box, std::size_t samples, Seed seed) {
    require_upper_triangular(r);
    check_box_matches(r, box);
    if (!box.contains(x_hat)) throw std::invalid_argument("x_hat lies outside the box");
    if (samples == 0) throw std::invalid_argument("need at least one sample");
    if (sigma <= kDegenerateSigma) return degenerate_success("bl-det");

    const auto cons = success_region(r, x_hat, box);
    const std::size_t n = r.rows();
    const auto sizes = shard_sizes(samples);
    std::array<std::size_t, kMcShards> hits{};

    parallel_for(kMcShards, [&](std::size_t s) {
        Stream stream(seed, {stream_label::montecarlo, s});
        std::vector<double> xi(n);
        std::size_t count = 0;
        for (std::size_t k = 0; k < sizes[s]; ++k) {
            for (auto& v : xi) v = sigma * stream.normal();
            bool inside = true;
            for (const auto& h : cons) {
                double dot = 0.0;
                for (std::size_t i = 0; i < n; ++i) dot += h.w[i] * xi[i];
                if (dot > h.threshold) {
                    inside = false;
                    break;
                }
            }
            if (inside) ++count;
        }
        hits[s] = count;
    });

    std::size_t total = 0;
    for (std::size_t h : hits) total += h;
    SuccessReport rep;
    rep.method = "bl-det";
    rep.value = static_cast<double>(total) / static_cast<double>(samples);
    rep.error_estimate = binom_se(total, samples);
    return rep;
}

SuccessReport p_bl_det_simulated(const Matrix& r, double sigma, const std::vector<int>& x_hat,
                                 const Box& box, std::size_t samples, Seed seed) {
    require_upper_triangular(r);
    check_box_matches(r, box);
    if (!box.contains(x_hat)) throw std::invalid_argument("x_hat lies outside the box");
    if (samples == 0) throw std::invalid_argument("need at least one sample");
    if (box.cardinality(4096) > 4096)
        throw BoxTooLargeError("p_bl_det_simulated limited to 4096 box points");
    if (sigma <= kDegenerateSigma) return degenerate_success("bl-sim");

    const std::size_t n = r.rows();
    const auto rx = multiply_int(r, x_hat);
    const auto sizes = shard_sizes(samples);
    std::array<std::size_t, kMcShards> hits{};

    parallel_for(kMcShards, [&](std::size_t s) {
        Stream stream(seed, {stream_label::montecarlo, s});
        TriangularInstance tri;
        tri.r = r;
        tri.sigma = sigma;
        tri.box = box;
        tri.y_tilde.resize(n);
        std::size_t count = 0;
        for (std::size_t k = 0; k < sizes[s]; ++k) {
            for (std::size_t i = 0; i < n; ++i)
                tri.y_tilde[i] = rx[i] + sigma * stream.normal();
            const DetectResult res = detect_sphere(tri);
            if (res.x == x_hat) ++count;
        }
        hits[s] = count;
    });

    std::size_t total = 0;
    for (std::size_t h : hits) total += h;
    SuccessReport rep;
    rep.method = "bl-sim";
    rep.value = static_cast<double>(total) / static_cast<double>(samples);
    rep.error_estimate = binom_se(total, samples);
    return rep;
}

SuccessReport p_bl_rand(const Matrix& r, double sigma, const Box& box,
                        std::size_t samples, Seed seed) {
    require_upper_triangular(r);
    check_box_matches(r, box);
    if (sigma <= kDegenerateSigma) return degenerate_success("bl-rand");

    const auto points = enumerate_box(box, 4096);
    const std::size_t card = points.size();
    if (samples < card) throw std::invalid_argument("need at least one sample per box point");

    std::vector<std::size_t> budget(card, samples / card);
    for (std::size_t i = 0; i < samples % card; ++i) ++budget[i];

    std::vector<double> values(card, 0.0), variances(card, 0.0);
    parallel_for(card, [&](std::size_t i) {
        std::uint64_t tag = 0;
        {
            Stream t(seed, {stream_label::montecarlo, 0xb1a5ULL, i});
            tag = t.next_u64();
        }
        const SuccessReport part = p_bl_det(r, sigma, points[i], box, budget[i], Seed{tag});
        values[i] = part.value;
        variances[i] = part.error_estimate * part.error_estimate;
    });

    SuccessReport rep;
    rep.method = "bl-rand";
    double sum = 0.0, var = 0.0;
    for (std::size_t i = 0; i < card; ++i) {
        sum += values[i];
        var += variances[i];
    }
    rep.value = sum / static_cast<double>(card);
    rep.error_estimate = std::sqrt(var) / static_cast<double>(card);
    return rep;
}

SuccessReport p_bl_det_upper(const Matrix& r, double sigma) {
    require_upper_triangular(r);
    if (sigma <= kDegenerateSigma) return degenerate_success("bl-upper");
    double min_norm = kInf;
    for (std::size_t i = 0; i < r.cols(); ++i)
        min_norm = std::min(min_norm, column_norm(r, i, i + 1));
    SuccessReport rep;
    rep.method = "bl-upper";
    rep.value = 0.5 * (1.0 + phi_sigma(min_norm, sigma));
    return rep;
}

SuccessReport mu_bl(const Matrix& r, double sigma, const Box& box) {
    require_upper_triangular(r);
    check_box_matches(r, box);
    if (sigma <= kDegenerateSigma) return degenerate_success("mu-bl");
    SuccessReport rep;
    rep.method = "mu-bl";
    rep.value = 1.0;
    for (std::size_t i = 0; i < r.rows(); ++i) {
        const double gamma = static_cast<double>(box.width(i));
        const double col = column_norm(r, i, i + 1);
        const double f =
            1.0 / gamma + (gamma - 1.0) / gamma * phi_sigma(col * col / r(i, i), sigma);
        rep.detail.push_back(f);
        rep.value *= f;
    }
    return rep;
}

ProductBoundCheck product_bound_check(const Matrix& u, const std::vector<double>& half_widths) {
    require_upper_triangular(u);
    const std::size_t n = u.rows();
    if (n > 3) throw DimensionTooLargeError("product_bound_check limited to n <= 3");
    if (half_widths.size() != n) throw std::invalid_argument("half_widths dimension mismatch");
    for (double a : half_widths)
        if (!(a > 0.0)) throw std::invalid_argument("half widths must be positive");

    // exp(-||U xi||^2) corresponds to sigma = 1/sqrt(2) in the engine
    const double sigma = 1.0 / std::sqrt(2.0);
    IntervalProduct domain(n);
    for (std::size_t i = 0; i < n; ++i) domain[i] = {-half_widths[i], half_widths[i]};

    ProductBoundCheck out;
    out.lhs = raw_box_integral(u, sigma, domain, &out.lhs_error);
    out.rhs = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double uii = u(i, i);
        out.rhs *= std::isfinite(half_widths[i])
                       ? kSqrtPi / uii * std::erf(uii * half_widths[i])
                       : kSqrtPi / uii;
    }
    return out;
}

} // namespace bils
