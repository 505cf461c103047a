#include <doctest.h>

#include <cmath>
#include <random>

#include "bils/detectors.hpp"
#include "bils/errors.hpp"
#include "bils/probability.hpp"
#include "oracles.hpp"

using namespace bils;

namespace {

const Matrix kExample1R{{2.0, -1.0}, {0.0, 1.0}};
const Matrix kExample2R{{2.0, -1.0}, {0.0, 2.0}};
constexpr double kInf = std::numeric_limits<double>::infinity();

// oracle-computed constants (series erf / high-resolution reference
// integration), frozen
constexpr double kPhi1 = 0.382924922548026;
constexpr double kPhi2 = 0.682689492137086;
constexpr double kPbbExample1 = 0.581758308896514;
constexpr double kPbbExample2 = 0.707860981737141;
constexpr double kPobExample1 = 0.261418820900945;
constexpr double kMuExample2 = 0.752456864070604;
constexpr double kStdNormalCdf1 = 0.841344746068543;
constexpr double kPorExample1 = 0.254132477013;    // reference quadrature
constexpr double kPbrExample1 = 0.619185137128;    // reference quadrature
constexpr double kPblExample2 = 0.684476557863;    // reference integration of the region
constexpr double kOr3dPin = 0.069033659370;        // reference quadrature, 3-d
constexpr double kProductLhsPin = 0.798380705475;
constexpr double kProductRhsPin = 0.851120667509;

double combined_se(const SuccessReport& a, const SuccessReport& b) {
    return std::sqrt(a.error_estimate * a.error_estimate + b.error_estimate * b.error_estimate);
}

} // namespace

TEST_CASE("phi_sigma matches the series oracle to 1e-14") {
    for (double zeta : {0.0, 0.1, 0.5, 1.0, 2.0, 2.5, 4.0, 8.0})
        for (double sigma : {0.3, 1.0, 2.5})
            CHECK(std::abs(phi_sigma(zeta, sigma) - oracle::phi_sigma(zeta, sigma)) <= 1e-14);
    CHECK(phi_sigma(0.0, 1.0) == 0.0);
    CHECK(phi_sigma(2.0, 1.0) == doctest::Approx(kPhi2).epsilon(1e-13));
    CHECK(phi_sigma(1e9, 1.0) == 1.0);
    CHECK_THROWS_AS(phi_sigma(-1.0, 1.0), std::invalid_argument);
}

TEST_CASE("normal_cdf matches the oracle") {
    for (double z : {-6.0, -2.0, -0.5, 0.0, 0.3, 1.0, 4.5})
        CHECK(std::abs(normal_cdf(z) - oracle::normal_cdf(z)) <= 1e-14);
}

TEST_CASE("p_ob is the product of diagonal phis") {
    const auto rep = p_ob(kExample1R, 1.0);
    CHECK(rep.value == doctest::Approx(kPobExample1).epsilon(1e-12));
    CHECK(rep.error_estimate == 0.0);

    // off-diagonal entries are irrelevant
    const Matrix other{{2.0, 17.0}, {0.0, 1.0}};
    CHECK(p_ob(other, 1.0).value == rep.value);

    CHECK(p_ob(kExample1R, 1e-13).value == 1.0);
}

TEST_CASE("p_bb_det reproduces the worked examples") {
    const auto ex1 = p_bb_det(kExample1R, 1.0, {Position::AtLower, Position::AtLower});
    CHECK(ex1.value == doctest::Approx(kPbbExample1).epsilon(1e-12));

    const auto ex2 = p_bb_det(kExample2R, 1.0, {Position::AtUpper, Position::AtUpper});
    CHECK(ex2.value == doctest::Approx(kPbbExample2).epsilon(1e-12));

    // interior everywhere collapses to the ordinary Babai probability
    const auto interior = p_bb_det(kExample1R, 1.0, {Position::Interior, Position::Interior});
    CHECK(interior.value == p_ob(kExample1R, 1.0).value);
}

TEST_CASE("p_bb_det_bounds bracket the position-dependent value") {
    const auto b = p_bb_det_bounds(kExample1R, 1.0);
    CHECK(b.low == doctest::Approx(kPobExample1).epsilon(1e-12));
    CHECK(b.high == doctest::Approx(kPbbExample1).epsilon(1e-12));

    const auto b1 = p_bb_det_bounds(Matrix{{2.0}}, 1.0);
    CHECK(b1.low == doctest::Approx(kPhi2).epsilon(1e-12));
    CHECK(b1.high == doctest::Approx(kStdNormalCdf1).epsilon(1e-12));

    const auto b0 = p_bb_det_bounds(kExample1R, 1e-15);
    CHECK(b0.low == 1.0);
    CHECK(b0.high == 1.0);

    std::mt19937_64 gen(5);
    for (int rep = 0; rep < 20; ++rep) {
        const Matrix r = oracle::random_upper(gen, 3, 0.3, 3.0);
        const auto bb = p_bb_det_bounds(r, 0.7);
        CHECK(bb.low <= bb.high);
        PositionClass pos{Position::AtLower, Position::Interior, Position::AtUpper};
        const double mid = p_bb_det(r, 0.7, pos).value;
        CHECK(bb.low <= mid + 1e-15);
        CHECK(mid <= bb.high + 1e-15);
    }
}

TEST_CASE("p_bb_rand closed form") {
    CHECK(p_bb_rand(Matrix{{2.0}}, 1.0, Box::uniform(1, 0, 1)).value ==
          doctest::Approx(kStdNormalCdf1).epsilon(1e-12));

    // wide boxes approach the ordinary probability from above
    const Box wide = Box::uniform(2, 0, 1000000);
    const double v = p_bb_rand(kExample1R, 1.0, wide).value;
    const double ob = p_ob(kExample1R, 1.0).value;
    CHECK(v > ob);
    CHECK(v - ob <= 4e-6);
}

TEST_CASE("p_bb_rand agrees with a Babai simulation at n=20") {
    std::mt19937_64 gen(2024);
    const std::size_t n = 20;
    const Box box = Box::uniform(n, 0, 1);
    const double sigma = sigma_from_snr(16.0, 1);
    const Matrix a = oracle::random_gaussian(gen, n, n);
    const auto f = qr_householder(a);
    const double theory = p_bb_rand(f.r, sigma, box).value;

    std::normal_distribution<double> normal(0.0, 1.0);
    const int trials = 10000;
    int hits = 0;
    TriangularInstance tri;
    tri.r = f.r;
    tri.box = box;
    tri.sigma = sigma;
    for (int t = 0; t < trials; ++t) {
        const auto x_hat = oracle::random_box_point(gen, box);
        tri.y_tilde = multiply_int(tri.r, x_hat);
        for (auto& v : tri.y_tilde) v += sigma * normal(gen);
        if (detect_babai(tri).x == x_hat) ++hits;
    }
    const double emp = static_cast<double>(hits) / trials;
    const double se = std::sqrt(std::max(emp * (1 - emp), 1e-9) / trials);
    CHECK(std::abs(emp - theory) <= 3.0 * se);
}

TEST_CASE("gauss_box_integral separable and worked cases") {
    const auto sep = gauss_box_integral(Matrix::identity(2), 1.0,
                                        {{-0.5, 0.5}, {-0.5, 0.5}});
    CHECK(sep.value == doctest::Approx(0.146631496308412).epsilon(1e-9));
    CHECK(sep.error_estimate >= 0.0);
    CHECK(sep.error_estimate <= 1e-8);

    const auto ex1 = gauss_box_integral(kExample1R, 1.0, {{-kInf, 0.5}, {-kInf, 0.5}});
    CHECK(ex1.value == doctest::Approx(kPbrExample1).epsilon(5e-8));

    const auto full = gauss_box_integral(kExample1R, 0.8,
                                         {{-kInf, kInf}, {-kInf, kInf}});
    CHECK(full.value == doctest::Approx(1.0).epsilon(1e-9));

    const Matrix r3{{1.0, 0.5, -0.3}, {0.0, 1.2, 0.7}, {0.0, 0.0, 0.8}};
    const auto pin = gauss_box_integral(r3, 0.9, IntervalProduct(3, {-0.5, 0.5}));
    CHECK(pin.value == doctest::Approx(kOr3dPin).epsilon(2e-7));

    CHECK_THROWS_AS(gauss_box_integral(Matrix::identity(5), 1.0,
                                       IntervalProduct(5, {-0.5, 0.5})),
                    DimensionTooLargeError);
    CHECK_THROWS_AS(gauss_box_integral(Matrix::identity(2), 1.0,
                                       {{0.5, -0.5}, {-0.5, 0.5}}),
                    std::invalid_argument);
}

TEST_CASE("quadrature agrees with Monte Carlo on strongly correlated factors") {
    // large off-diagonal: the transformed noise has wildly different
    // marginal scales, stressing the truncation and panel logic
    const Matrix r{{0.3, 5.0}, {0.0, 0.3}};
    const double sigma = 1.0;
    std::mt19937_64 gen(71);
    std::normal_distribution<double> normal(0.0, 1.0);

    const auto estimate = [&](double lo0, double hi0, double lo1, double hi1) {
        const std::size_t samples = 2000000;
        std::size_t hits = 0;
        for (std::size_t s = 0; s < samples; ++s) {
            const double v0 = sigma * normal(gen), v1 = sigma * normal(gen);
            // xi = R^-1 v by back substitution
            const double xi1 = v1 / 0.3;
            const double xi0 = (v0 - 5.0 * xi1) / 0.3;
            if (xi0 > lo0 && xi0 <= hi0 && xi1 > lo1 && xi1 <= hi1) ++hits;
        }
        return static_cast<double>(hits) / static_cast<double>(samples);
    };

    const auto interior = gauss_box_integral(r, sigma, {{-0.5, 0.5}, {-0.5, 0.5}});
    const double mc_interior = estimate(-0.5, 0.5, -0.5, 0.5);
    CHECK(std::abs(interior.value - mc_interior) <= 4.5e-4);  // ~4 MC standard errors

    const auto one_sided = gauss_box_integral(r, sigma, {{-kInf, 0.5}, {-0.5, kInf}});
    const double mc_one_sided = estimate(-1e30, 0.5, -0.5, 1e30);
    CHECK(std::abs(one_sided.value - mc_one_sided) <= 2e-3);
}

TEST_CASE("the grouped box average equals the literal per-point average") {
    std::mt19937_64 gen(73);
    const Matrix r = oracle::random_upper(gen, 2, 0.4, 2.0);
    const Box box({0, -1}, {3, 1});
    const double sigma = 0.6;

    double literal = 0.0;
    int count = 0;
    for (int x0 = 0; x0 <= 3; ++x0)
        for (int x1 = -1; x1 <= 1; ++x1) {
            literal += p_br_det(r, sigma, classify({x0, x1}, box)).value;
            ++count;
        }
    literal /= count;
    const auto grouped = p_br_rand(r, sigma, box);
    CHECK(grouped.value == doctest::Approx(literal).epsilon(1e-10));
}

TEST_CASE("p_br_det reproduces Example 1 and the 1-d boundary value") {
    const auto ex1 = p_br_det(kExample1R, 1.0, {Position::AtLower, Position::AtLower});
    CHECK(ex1.value == doctest::Approx(0.6192).epsilon(8e-4));
    CHECK(ex1.value == doctest::Approx(kPbrExample1).epsilon(5e-8));

    const auto oneD = p_br_det(Matrix{{2.0}}, 1.0, {Position::AtLower});
    CHECK(oneD.value == doctest::Approx(kStdNormalCdf1).epsilon(1e-10));

    // Example 1 is the rounding > Babai counterexample
    CHECK(ex1.value > p_bb_det(kExample1R, 1.0, {Position::AtLower, Position::AtLower}).value);
}

TEST_CASE("all-interior p_br_det equals the ordinary rounding probability") {
    const auto inter = p_br_det(kExample1R, 1.0, {Position::Interior, Position::Interior});
    const auto por = p_or(kExample1R, 1.0);
    CHECK(inter.value == por.value);
    CHECK(por.value == doctest::Approx(kPorExample1).epsilon(1e-7));
}

TEST_CASE("p_or lower-bounds p_br_det over every position class") {
    std::mt19937_64 gen(13);
    for (int rep = 0; rep < 5; ++rep) {
        const Matrix r = oracle::random_upper(gen, 2, 0.4, 2.5);
        const double sigma = 0.8;
        const double por = p_or(r, sigma).value;
        for (Position p0 : {Position::AtLower, Position::Interior, Position::AtUpper})
            for (Position p1 : {Position::AtLower, Position::Interior, Position::AtUpper}) {
                const auto v = p_br_det(r, sigma, {p0, p1});
                CHECK(v.value >= por - 1e-9);
                if (p0 == Position::Interior && p1 == Position::Interior)
                    CHECK(std::abs(v.value - por) <= 1e-12);
                else
                    CHECK(v.value > por + 1e-6);
            }
    }
}

TEST_CASE("p_br_rand in one dimension collapses to p_bb_rand") {
    const auto rep = p_br_rand(Matrix{{2.0}}, 1.0, Box::uniform(1, 0, 1));
    CHECK(rep.value == doctest::Approx(kStdNormalCdf1).epsilon(1e-9));

    std::mt19937_64 gen(15);
    std::uniform_real_distribution<double> diag(0.4, 3.0);
    for (int rep_i = 0; rep_i < 10; ++rep_i) {
        const Matrix r{{diag(gen)}};
        const Box box = Box::uniform(1, 0, 1 + rep_i % 4);
        const double sigma = 0.3 + 0.2 * (rep_i % 3);
        CHECK(p_br_rand(r, sigma, box).value ==
              doctest::Approx(p_bb_rand(r, sigma, box).value).epsilon(1e-9));
    }
}

TEST_CASE("p_br_rand internal routes agree") {
    std::mt19937_64 gen(19);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t n = 2 + rep % 2;
        const Matrix r = oracle::random_upper(gen, n, 0.3, 3.0);
        const Box box = Box::uniform(n, 0, (rep % 2) ? 3 : 1);
        const double sigma = 0.25 + 0.25 * (rep % 4);
        const auto v = p_br_rand(r, sigma, box);
        REQUIRE(v.detail.size() == 2);
        CHECK(std::abs(v.detail[0] - v.detail[1]) <= 1e-8);

        const auto alt = p_br_rand_expansion(r, sigma, box);
        CHECK(alt.value == doctest::Approx(v.detail[1]).epsilon(1e-14));
    }
}

TEST_CASE("p_br_rand guards") {
    CHECK_THROWS_AS(p_br_rand(Matrix::identity(4), 1.0, Box::uniform(4, 0, 1)),
                    DimensionTooLargeError);
    CHECK_THROWS_AS(p_br_rand(Matrix::identity(3), 1.0, Box::uniform(3, 0, 8)),
                    BoxTooLargeError);
}

TEST_CASE("p_br_rand shrinks toward p_or as the box grows") {
    const Matrix r{{1.4, 0.6}, {0.0, 0.9}};
    const double sigma = 0.5;
    const double por = p_or(r, sigma).value;
    double prev_gap = kInf;
    double first_gap = 0.0, last_gap = 0.0;
    for (int u = 1; u <= 20; ++u) {
        const double v = p_br_rand(r, sigma, Box::uniform(2, 0, u)).value;
        const double gap = v - por;
        CHECK(gap > 0.0);
        CHECK(gap <= prev_gap + 1e-9);
        prev_gap = gap;
        if (u == 1) first_gap = gap;
        if (u == 20) last_gap = gap;
    }
    CHECK(last_gap < first_gap / 4.0);
}

TEST_CASE("p_bl_det membership estimate on Example 2") {
    const Box box = Box::uniform(2, 1, 2);
    const std::vector<int> x_hat{2, 2};
    const auto v = p_bl_det(kExample2R, 1.0, x_hat, box, 400000, Seed{7});
    CHECK(std::abs(v.value - kPblExample2) <= 4.0 * v.error_estimate + 1e-6);

    // Example 2 is the Babai > maximum-likelihood counterexample
    CHECK(p_bb_det(kExample2R, 1.0, classify(x_hat, box)).value >
          v.value + 4.0 * v.error_estimate);

    CHECK(p_bl_det(kExample2R, 1e-14, x_hat, box, 10, Seed{1}).value == 1.0);
}

TEST_CASE("the two bl-det estimators agree") {
    const Box box = Box::uniform(2, 1, 2);
    const std::vector<int> x_hat{2, 2};
    const auto a = p_bl_det(kExample2R, 1.0, x_hat, box, 200000, Seed{11});
    const auto b = p_bl_det_simulated(kExample2R, 1.0, x_hat, box, 200000, Seed{12});
    CHECK(std::abs(a.value - b.value) <= 4.0 * combined_se(a, b));
}

TEST_CASE("p_bl_det equals p_bb_det in one dimension") {
    const Matrix r{{2.0}};
    const Box box = Box::uniform(1, 0, 3);
    // interior point
    const auto inner = p_bl_det(r, 1.0, {1}, box, 200000, Seed{21});
    const double bb_inner = p_bb_det(r, 1.0, {Position::Interior}).value;
    CHECK(std::abs(inner.value - bb_inner) <= 4.0 * inner.error_estimate);
    // boundary point
    const auto edge = p_bl_det(r, 1.0, {0}, box, 200000, Seed{22});
    const double bb_edge = p_bb_det(r, 1.0, {Position::AtLower}).value;
    CHECK(std::abs(edge.value - bb_edge) <= 4.0 * edge.error_estimate);
}

TEST_CASE("p_bl_det symmetric parameter pairs match on Example 2") {
    const Box box = Box::uniform(2, 1, 2);
    const auto p11 = p_bl_det(kExample2R, 1.0, {1, 1}, box, 150000, Seed{31});
    const auto p22 = p_bl_det(kExample2R, 1.0, {2, 2}, box, 150000, Seed{32});
    CHECK(std::abs(p11.value - p22.value) <= 4.0 * combined_se(p11, p22));
    const auto p12 = p_bl_det(kExample2R, 1.0, {1, 2}, box, 150000, Seed{33});
    const auto p21 = p_bl_det(kExample2R, 1.0, {2, 1}, box, 150000, Seed{34});
    CHECK(std::abs(p12.value - p21.value) <= 4.0 * combined_se(p12, p21));
}

TEST_CASE("p_bl_rand matches a direct uniform-parameter simulation") {
    const Box box = Box::uniform(2, 1, 2);
    const auto theory = p_bl_rand(kExample2R, 1.0, box, 400000, Seed{41});

    std::mt19937_64 gen(4242);
    std::normal_distribution<double> normal(0.0, 1.0);
    TriangularInstance tri;
    tri.r = kExample2R;
    tri.box = box;
    tri.sigma = 1.0;
    const int trials = 200000;
    int hits = 0;
    for (int t = 0; t < trials; ++t) {
        const auto x_hat = oracle::random_box_point(gen, box);
        tri.y_tilde = multiply_int(tri.r, x_hat);
        for (auto& v : tri.y_tilde) v += normal(gen);
        if (detect_sphere(tri).x == x_hat) ++hits;
    }
    const double emp = static_cast<double>(hits) / trials;
    const double se = std::sqrt(emp * (1 - emp) / trials);
    CHECK(std::abs(theory.value - emp) <=
          4.0 * std::sqrt(se * se + theory.error_estimate * theory.error_estimate));

    CHECK(p_bl_rand(kExample2R, 1e-14, box, 10, Seed{1}).value == 1.0);
}

TEST_CASE("p_bl_rand equals p_bb_rand in one dimension") {
    const Matrix r{{1.7}};
    const Box box = Box::uniform(1, 0, 3);
    const auto mc = p_bl_rand(r, 0.8, box, 200000, Seed{51});
    const double closed = p_bb_rand(r, 0.8, box).value;
    CHECK(std::abs(mc.value - closed) <= 4.0 * mc.error_estimate);
}

TEST_CASE("p_bl_det_upper worked values and dominance") {
    const auto ub = p_bl_det_upper(kExample2R, 1.0);
    CHECK(ub.value == doctest::Approx(kStdNormalCdf1).epsilon(1e-12));

    Matrix diag(3, 3);
    diag(0, 0) = 2.0;
    diag(1, 1) = 0.7;
    diag(2, 2) = 1.1;
    CHECK(p_bl_det_upper(diag, 0.9).value ==
          doctest::Approx(0.5 * (1.0 + phi_sigma(0.7, 0.9))).epsilon(1e-13));

    // dominates the Example-2 maximum-likelihood value and the box average
    CHECK(ub.value > kPblExample2);
    const auto rand_est = p_bl_rand(kExample2R, 1.0, Box::uniform(2, 1, 2), 100000, Seed{61});
    CHECK(ub.value >= rand_est.value - 4.0 * rand_est.error_estimate);
}

TEST_CASE("mu_bl worked value, diagonal equality, dominance") {
    const auto mu = mu_bl(kExample2R, 1.0, Box::uniform(2, 1, 2));
    CHECK(mu.value == doctest::Approx(kMuExample2).epsilon(1e-12));

    std::mt19937_64 gen(23);
    for (int rep = 0; rep < 10; ++rep) {
        Matrix diag(3, 3);
        std::uniform_real_distribution<double> d(0.3, 3.0);
        for (std::size_t i = 0; i < 3; ++i) diag(i, i) = d(gen);
        const Box box = Box::uniform(3, 0, 2 + rep % 3);
        const double sigma = 0.4 + 0.2 * (rep % 3);
        CHECK(std::abs(mu_bl(diag, sigma, box).value - p_bb_rand(diag, sigma, box).value) <=
              1e-12);
    }

    const auto bl = p_bl_rand(kExample2R, 1.0, Box::uniform(2, 1, 2), 200000, Seed{71});
    CHECK(bl.value <= mu.value + 4.0 * bl.error_estimate);
    CHECK(mu_bl(kExample2R, 1e-14, Box::uniform(2, 1, 2)).value == 1.0);
}

TEST_CASE("p_bb_det interior never exceeds the maximum-likelihood value") {
    std::mt19937_64 gen(29);
    for (int rep = 0; rep < 3; ++rep) {
        const Matrix r = oracle::random_upper(gen, 2, 0.5, 2.0);
        const Box box = Box::uniform(2, 0, 2);
        const auto bl = p_bl_det(r, 0.7, {1, 1}, box, 150000, Seed{static_cast<uint64_t>(80 + rep)});
        const double bb = p_bb_det(r, 0.7, {Position::Interior, Position::Interior}).value;
        CHECK(bb <= bl.value + 4.0 * bl.error_estimate);
    }
}

TEST_CASE("product_bound_check: separable equality, worked pin, infinite bounds") {
    Matrix diag(2, 2);
    diag(0, 0) = 1.0;
    diag(1, 1) = 2.0;
    const auto sep = product_bound_check(diag, {0.7, 1.1});
    CHECK(sep.lhs == doctest::Approx(sep.rhs).epsilon(1e-9));

    const Matrix u{{1.0, 1.0}, {0.0, 1.0}};
    const auto pin = product_bound_check(u, {0.5, 0.5});
    CHECK(pin.lhs == doctest::Approx(kProductLhsPin).epsilon(1e-6));
    CHECK(pin.rhs == doctest::Approx(kProductRhsPin).epsilon(1e-12));
    CHECK(pin.lhs < pin.rhs);

    const auto open = product_bound_check(u, {kInf, kInf});
    CHECK(open.lhs <= open.rhs + 1e-9);
    CHECK(open.rhs == doctest::Approx(M_PI).epsilon(1e-12));  // (sqrt(pi)/1)^2

    std::mt19937_64 gen(37);
    for (int rep = 0; rep < 10; ++rep) {
        const Matrix ru = oracle::random_upper(gen, 3, 0.4, 2.0);
        const auto c = product_bound_check(ru, {0.8, 1.3, 0.5});
        CHECK(c.lhs <= c.rhs + 1e-9 + c.lhs_error);
    }
}

TEST_CASE("classify splits a vector against its box") {
    const Box box({0, 0, -1}, {3, 2, 1});
    const auto pos = classify({0, 1, 1}, box);
    CHECK(pos == PositionClass{Position::AtLower, Position::Interior, Position::AtUpper});
    CHECK_THROWS_AS(classify({4, 1, 1}, box), std::invalid_argument);
}

TEST_CASE("degenerate sigma returns certainty across the board") {
    const Box box = Box::uniform(2, 0, 1);
    CHECK(p_ob(kExample1R, 0.0).value == 1.0);
    CHECK(p_bb_det(kExample1R, 0.0, {Position::AtLower, Position::AtLower}).value == 1.0);
    CHECK(p_bb_rand(kExample1R, 0.0, box).value == 1.0);
    CHECK(p_br_det(kExample1R, 0.0, {Position::AtLower, Position::AtLower}).value == 1.0);
    CHECK(p_br_rand(kExample1R, 0.0, box).value == 1.0);
    CHECK(p_bl_det_upper(kExample1R, 0.0).value == 1.0);
    CHECK(mu_bl(kExample1R, 0.0, box).value == 1.0);
}
