#include "bils/detectors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bils/errors.hpp"

namespace bils {

std::string method_name(Method m) {
    switch (m) {
        case Method::Rounding: return "rounding";
        case Method::Babai: return "babai";
        case Method::Bils: return "bils";
        case Method::BruteForce: return "brute";
    }
    return "?";
}

int round_half_down(double v) {
    return static_cast<int>(std::ceil(v - 0.5));
}

namespace {

int clamp_to(int v, int lo, int hi) { return std::min(std::max(v, lo), hi); }

void validate(const TriangularInstance& tri) {
    require_upper_triangular(tri.r);
    const std::size_t n = tri.r.cols();
    if (tri.y_tilde.size() != n || tri.box.dim() != n)
        throw std::invalid_argument("triangular instance: dimension mismatch");
    if (!tri.perm.empty() && tri.perm.size() != n)
        throw std::invalid_argument("triangular instance: bad permutation");
}

std::vector<int> unpermute(const std::vector<int>& x_perm, const std::vector<std::size_t>& perm) {
    if (perm.empty()) return x_perm;
    std::vector<int> x(x_perm.size());
    for (std::size_t k = 0; k < perm.size(); ++k) x[perm[k]] = x_perm[k];
    return x;
}

DetectResult finish(const TriangularInstance& tri, std::vector<int> x_perm, Method m,
                    std::uint64_t nodes = 0) {
    DetectResult out;
    out.objective = objective_of(tri, x_perm);
    out.x = unpermute(x_perm, tri.perm);
    out.method = m;
    out.nodes = nodes;
    return out;
}

std::vector<int> babai_point(const TriangularInstance& tri) {
    const std::size_t n = tri.dim();
    std::vector<int> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = tri.y_tilde[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= tri.r(i, j) * x[j];
        const double c = s / tri.r(i, i);
        x[i] = clamp_to(round_half_down(c), tri.box.lower[i], tri.box.upper[i]);
    }
    return x;
}

} // namespace

double objective_of(const TriangularInstance& tri, const std::vector<int>& x_perm) {
    const std::size_t n = tri.dim();
    if (x_perm.size() != n) throw std::invalid_argument("objective_of: length mismatch");
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (std::size_t j = i; j < n; ++j) sum += tri.r(i, j) * x_perm[j];
        const double resid = tri.y_tilde[i] - sum;
        total += resid * resid;
    }
    return total;
}

DetectResult detect_rounding(const TriangularInstance& tri) {
    validate(tri);
    const auto d = back_substitute(tri.r, tri.y_tilde);
    std::vector<int> x(tri.dim());
    for (std::size_t i = 0; i < tri.dim(); ++i)
        x[i] = clamp_to(round_half_down(d[i]), tri.box.lower[i], tri.box.upper[i]);
    return finish(tri, std::move(x), Method::Rounding);
}

DetectResult detect_babai(const TriangularInstance& tri) {
    validate(tri);
    return finish(tri, babai_point(tri), Method::Babai);
}

DetectResult detect_sphere(const TriangularInstance& tri) {
    validate(tri);
    const std::size_t n = tri.dim();

    std::vector<int> best = babai_point(tri);
    double beta = objective_of(tri, best);
    std::uint64_t nodes = 0;

    // Per-level search state.  Candidates at level i are produced from the
    // two frontiers next_down/next_up around the conditional center.
    std::vector<int> x(n, 0);
    std::vector<double> center(n, 0.0);
    std::vector<double> cost_below(n, 0.0);
    std::vector<int> next_down(n, 0), next_up(n, 0);
    std::vector<bool> started(n, false);

    auto enter_level = [&](std::size_t i) {
        double s = tri.y_tilde[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= tri.r(i, j) * x[j];
        center[i] = s / tri.r(i, i);
        started[i] = false;
    };

    // next candidate at level i in increasing-distance order (smaller
    // integer first on ties); false when the box is exhausted
    auto advance = [&](std::size_t i) -> bool {
        const int lo = tri.box.lower[i], hi = tri.box.upper[i];
        if (!started[i]) {
            started[i] = true;
            x[i] = clamp_to(round_half_down(center[i]), lo, hi);
            next_down[i] = x[i] - 1;
            next_up[i] = x[i] + 1;
            return true;
        }
        const bool down_ok = next_down[i] >= lo;
        const bool up_ok = next_up[i] <= hi;
        if (!down_ok && !up_ok) return false;
        if (down_ok &&
            (!up_ok || center[i] - next_down[i] <= next_up[i] - center[i])) {
            x[i] = next_down[i]--;
        } else {
            x[i] = next_up[i]++;
        }
        return true;
    };

    std::size_t level = n - 1;
    cost_below[n - 1] = 0.0;
    enter_level(level);

    while (true) {
        bool moved_up = false;
        if (!advance(level)) {
            moved_up = true;                      // box exhausted at this level
        } else {
            const double diff = tri.r(level, level) * (center[level] - x[level]);
            const double cost = cost_below[level] + diff * diff;
            if (level == 0) ++nodes;
            if (cost >= beta) {
                moved_up = true;                  // farther candidates only get worse
            } else if (level == 0) {
                beta = cost;
                best = x;
                // the next level-0 candidate is at least this far; the prune
                // above will back us out on the following iteration
            } else {
                cost_below[level - 1] = cost;
                --level;
                enter_level(level);
            }
        }
        if (moved_up) {
            if (level == n - 1) break;
            ++level;
        }
    }

    DetectResult out = finish(tri, std::move(best), Method::Bils, nodes);
    return out;
}

DetectResult detect_bruteforce(const TriangularInstance& tri) {
    validate(tri);
    const long long guard = 10'000'000;
    const long long count = tri.box.cardinality(guard);
    if (count > guard)
        throw BoxTooLargeError("brute force limited to 1e7 box points");

    const std::size_t n = tri.dim();
    std::vector<int> x(tri.box.lower);
    std::vector<int> best;
    double best_obj = 0.0;
    std::uint64_t nodes = 0;

    // odometer in lexicographic order (last dimension fastest), so the
    // first strict minimum seen is the lexicographically smallest one
    while (true) {
        const double obj = objective_of(tri, x);
        ++nodes;
        if (best.empty() || obj < best_obj) {
            best = x;
            best_obj = obj;
        }
        bool done = true;
        for (std::size_t i = n; i-- > 0;) {
            if (x[i] < tri.box.upper[i]) {
                ++x[i];
                done = false;
                break;
            }
            x[i] = tri.box.lower[i];
        }
        if (done) break;
    }
    return finish(tri, std::move(best), Method::BruteForce, nodes);
}

} // namespace bils
