#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bils/linalg.hpp"
#include "bils/model.hpp"
#include "bils/rng.hpp"

namespace bils {

/// A probability value with its provenance and a numerical-error estimate:
/// 0 for closed forms, truncation + refinement delta for quadrature,
/// binomial standard error for Monte Carlo.
struct SuccessReport {
    double value = 0.0;
    std::string method;
    double error_estimate = 0.0;
    std::vector<double> detail;  // per-dimension factors, or cross-check values
};

/// Per-dimension interval, endpoints may be infinite.
struct Interval {
    double lo;
    double hi;
};

/// Product of per-dimension intervals (integration domain).
using IntervalProduct = std::vector<Interval>;

enum class Position { AtLower, Interior, AtUpper };
using PositionClass = std::vector<Position>;

/// Position class of a concrete parameter vector inside its box.
PositionClass classify(const std::vector<int>& x_hat, const Box& box);

/// phi_sigma(zeta) = erf( zeta / (2 sqrt(2) sigma) ), the one-dimensional
/// correct-rounding probability building block.
double phi_sigma(double zeta, double sigma);

/// Standard normal CDF (exposed for oracles and truncation bounds).
double normal_cdf(double z);

/// Success probability of the ordinary Babai detector: prod phi_sigma(r_ii).
SuccessReport p_ob(const Matrix& r, double sigma);

/// Deterministic box-constrained Babai success probability: boundary
/// dimensions contribute (1 + phi)/2, interior dimensions phi.
SuccessReport p_bb_det(const Matrix& r, double sigma, const PositionClass& pos);

/// Position-free bounds: prod phi <= P <= 2^-n prod (1 + phi).
struct ProbabilityBounds {
    double low = 0.0;
    double high = 0.0;
};
ProbabilityBounds p_bb_det_bounds(const Matrix& r, double sigma);

/// Babai success probability for x uniform over the box.
SuccessReport p_bb_rand(const Matrix& r, double sigma, const Box& box);

/// Normalized Gaussian mass of R^-1-transformed noise over a product
/// domain:  det(R)/(sqrt(2 pi) sigma)^n * integral exp(-||R xi||^2 / 2 sigma^2).
/// Tensor Gauss-Legendre with automatic panel doubling; infinite ends are
/// truncated where the 1-D marginal tail mass falls below 1e-12.
/// Guarded at n <= 4.
SuccessReport gauss_box_integral(const Matrix& r, double sigma, const IntervalProduct& domain);

/// Same integral without the normalizing constant (unnormalized integrands).
double raw_box_integral(const Matrix& r, double sigma, const IntervalProduct& domain,
                        double* error_estimate);

/// Deterministic rounding success probability; the domain per dimension is
/// (-inf, 1/2], (-1/2, 1/2] or [-1/2, inf) according to the position class.
SuccessReport p_br_det(const Matrix& r, double sigma, const PositionClass& pos);

/// P^OR: the all-interior case, the position-free lower bound.
SuccessReport p_or(const Matrix& r, double sigma);

/// Rounding success probability for uniform x: the box average of
/// per-position values, cross-checked internally against the 2^n
/// mixture expansion with weights 1/width and (width-1)/width.
/// detail = { averaged form, expansion form }.
/// Guarded at n <= 3 and 512 box points.
SuccessReport p_br_rand(const Matrix& r, double sigma, const Box& box);

/// The 2^n mixture expansion route alone (exposed for consistency tests).
SuccessReport p_br_rand_expansion(const Matrix& r, double sigma, const Box& box);

/// Deterministic maximum-likelihood success probability by Monte Carlo
/// membership in the half-space intersection
///   { xi : 2 (x - x_hat)^T R^T xi <= ||R (x - x_hat)||^2  for all x in B }.
/// Guarded at 4096 box points.
SuccessReport p_bl_det(const Matrix& r, double sigma, const std::vector<int>& x_hat,
                       const Box& box, std::size_t samples, Seed seed);

/// Independent estimator of the same probability: simulate noise, run the
/// sphere decoder, count exact recoveries.  Agrees with p_bl_det up to
/// Monte Carlo error.
SuccessReport p_bl_det_simulated(const Matrix& r, double sigma, const std::vector<int>& x_hat,
                                 const Box& box, std::size_t samples, Seed seed);

/// Maximum-likelihood success probability for uniform x: box average of
/// p_bl_det with the sample budget split across the box points.
SuccessReport p_bl_rand(const Matrix& r, double sigma, const Box& box,
                        std::size_t samples, Seed seed);

/// Box-independent upper bound (1 + phi(min_i ||R[1:i,i]||)) / 2.
SuccessReport p_bl_det_upper(const Matrix& r, double sigma);

/// Computable upper bound on the uniform-x maximum-likelihood success
/// probability: prod( 1/width + (width-1)/width * phi(||R e_i||^2 / r_ii) ).
SuccessReport mu_bl(const Matrix& r, double sigma, const Box& box);

/// Both sides of the symmetric-box Gaussian product inequality:
/// lhs = integral over prod [-a_i, a_i] of exp(-||U xi||^2),
/// rhs = prod_i integral of exp(-u_ii^2 t^2).  lhs <= rhs always.
struct ProductBoundCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double lhs_error = 0.0;
};
ProductBoundCheck product_bound_check(const Matrix& u, const std::vector<double>& half_widths);

} // namespace bils
