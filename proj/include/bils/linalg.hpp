#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace bils {

/// Dense real matrix, row-major.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<double>& data() const { return data_; }

    double frobenius_norm() const;
    bool all_finite() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix multiply(const Matrix& a, const Matrix& b);
std::vector<double> multiply(const Matrix& a, const std::vector<double>& x);
std::vector<double> multiply_int(const Matrix& a, const std::vector<int>& x);
/// a^T y (used for Q^T y without forming the transpose).
std::vector<double> transpose_multiply(const Matrix& a, const std::vector<double>& y);

/// Columns of the input permuted: out[:, k] = a[:, perm[k]].
Matrix permute_columns(const Matrix& a, const std::vector<std::size_t>& perm);

/// Thin QR of A (or A*P when perm is not the identity): A*P = Q*R with
/// Q^T Q = I and R upper triangular, r_ii > 0.
struct QrFactors {
    Matrix q;                       // m x n, orthonormal columns
    Matrix r;                       // n x n, upper triangular, positive diagonal
    std::vector<std::size_t> perm;  // column k of A*P is column perm[k] of A
};

/// Householder QR with the diagonal of R forced positive by sign flips.
/// Throws RankDeficientError when a pivot norm drops below
/// 1e-10 * ||a||_F.
QrFactors qr_householder(const Matrix& a);

/// QR after V-BLAST column reordering: positions are assigned from the
/// last to the first, each time picking the not-yet-assigned column with
/// the largest residual orthogonal to the remaining ones, which maximizes
/// the resulting r_kk.  Ties go to the smallest column index.
QrFactors vblast_order(const Matrix& a);

/// Solve R d = rhs for upper-triangular R with positive diagonal.
std::vector<double> back_substitute(const Matrix& r, const std::vector<double>& rhs);

/// Check shape + strict upper-triangularity + positive diagonal; throws
/// std::invalid_argument when violated.
void require_upper_triangular(const Matrix& r);

/// Euclidean norm of the column segment r[0:rows, col].
double column_norm(const Matrix& a, std::size_t col, std::size_t rows);

} // namespace bils
