#pragma once

#include <cstddef>
#include <vector>

#include "bils/linalg.hpp"
#include "bils/rng.hpp"

namespace bils {

/// Integer box constraint, lower[i] < upper[i] for every dimension.
struct Box {
    std::vector<int> lower;
    std::vector<int> upper;

    Box() = default;
    Box(std::vector<int> lo, std::vector<int> up);
    /// Uniform bounds [lo, up] in every one of n dimensions.
    static Box uniform(std::size_t n, int lo, int up);

    std::size_t dim() const { return lower.size(); }
    /// Number of integers in dimension i.
    long long width(std::size_t i) const { return static_cast<long long>(upper[i]) - lower[i] + 1; }
    /// Total number of integer points; saturates at `cap`.
    long long cardinality(long long cap) const;
    bool contains(const std::vector<int>& x) const;
    Box permuted(const std::vector<std::size_t>& perm) const;
};

/// One realization of the linear model y = A x + v.
struct LinearInstance {
    Matrix a;
    std::vector<int> x_true;
    std::vector<double> noise;
    std::vector<double> y;
    double sigma = 0.0;
    Box box;
};

/// Model after the orthogonal reduction: y_tilde = R x + v_tilde.  The
/// permutation maps solution position k back to original column perm[k];
/// it is the identity when the factors came from a plain QR.
struct TriangularInstance {
    Matrix r;
    std::vector<double> y_tilde;
    double sigma = 0.0;
    Box box;
    std::vector<std::size_t> perm;

    std::size_t dim() const { return r.cols(); }
};

/// sigma from SNR(dB) for the box [0,u]:  SNR = 10 log10( u(u+2) / (12 sigma^2) ).
double sigma_from_snr(double snr_db, unsigned u);

/// Entries of A i.i.d. standard normal, drawn row-major.
Matrix gaussian_matrix(std::size_t m, std::size_t n, Stream& stream);

/// x uniform over the box, one independent draw per dimension.
std::vector<int> uniform_box_vector(const Box& box, Stream& stream);

/// A ~ N(0,1) entries, x uniform over box, v ~ N(0, sigma^2 I), y = A x + v.
LinearInstance generate_instance(std::size_t m, std::size_t n, const Box& box,
                                 double sigma, Seed seed);

/// Left-multiply the model by Q^T; the box is carried through the
/// factor's column permutation.
TriangularInstance to_triangular(const LinearInstance& inst, const QrFactors& factors);

/// Reduce an observed y directly (detect CLI path: no x_true available).
TriangularInstance to_triangular(const Matrix& a_unused_check, const std::vector<double>& y,
                                 const Box& box, const QrFactors& factors, double sigma = 0.0);

} // namespace bils
