#include "bils/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "bils/errors.hpp"

namespace bils {

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows.begin() == rows.end() ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_)
            throw std::invalid_argument("Matrix: ragged initializer");
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

double Matrix::frobenius_norm() const {
    double sum = 0.0;
    for (double v : data_) sum += v * v;
    return std::sqrt(sum);
}

bool Matrix::all_finite() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](double v) { return std::isfinite(v); });
}

Matrix multiply(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("multiply: shape mismatch");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

std::vector<double> multiply(const Matrix& a, const std::vector<double>& x) {
    if (a.cols() != x.size()) throw std::invalid_argument("multiply: shape mismatch");
    std::vector<double> y(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) sum += a(i, j) * x[j];
        y[i] = sum;
    }
    return y;
}

std::vector<double> multiply_int(const Matrix& a, const std::vector<int>& x) {
    std::vector<double> xd(x.begin(), x.end());
    return multiply(a, xd);
}

std::vector<double> transpose_multiply(const Matrix& a, const std::vector<double>& y) {
    if (a.rows() != y.size()) throw std::invalid_argument("transpose_multiply: shape mismatch");
    std::vector<double> out(a.cols(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double yi = y[i];
        for (std::size_t j = 0; j < a.cols(); ++j) out[j] += a(i, j) * yi;
    }
    return out;
}

Matrix permute_columns(const Matrix& a, const std::vector<std::size_t>& perm) {
    Matrix out(a.rows(), perm.size());
    for (std::size_t k = 0; k < perm.size(); ++k) {
        if (perm[k] >= a.cols()) throw std::invalid_argument("permute_columns: index out of range");
        for (std::size_t i = 0; i < a.rows(); ++i) out(i, k) = a(i, perm[k]);
    }
    return out;
}

double column_norm(const Matrix& a, std::size_t col, std::size_t rows) {
    double sum = 0.0;
    for (std::size_t i = 0; i < rows; ++i) sum += a(i, col) * a(i, col);
    return std::sqrt(sum);
}

namespace {

// Thin Householder QR of `a`, writing Q (m x n) and R (n x n).  The caller
// owns the rank threshold; `perm` is only recorded in the result.
QrFactors qr_core(const Matrix& a, std::vector<std::size_t> perm) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    if (m < n || n == 0) throw std::invalid_argument("qr: need rows >= cols >= 1");
    if (!a.all_finite()) throw std::invalid_argument("qr: non-finite entries");

    const double rank_tol = 1e-10 * a.frobenius_norm();

    Matrix w = a;                       // reduced in place
    std::vector<std::vector<double>> reflectors;
    reflectors.reserve(n);

    for (std::size_t k = 0; k < n; ++k) {
        const double head = w(k, k);
        double sum = 0.0;
        for (std::size_t i = k; i < m; ++i) sum += w(i, k) * w(i, k);
        const double norm = std::sqrt(sum);
        if (!(norm > rank_tol))
            throw RankDeficientError("pivot " + std::to_string(k + 1) + " norm " +
                                     std::to_string(norm) + " below threshold");

        std::vector<double> v(m - k);
        for (std::size_t i = k; i < m; ++i) v[i - k] = w(i, k);
        const double alpha = head >= 0.0 ? -norm : norm;
        v[0] -= alpha;
        double vnorm2 = 0.0;
        for (double t : v) vnorm2 += t * t;

        if (vnorm2 > 0.0) {
            const double beta = 2.0 / vnorm2;
            for (std::size_t j = k; j < n; ++j) {
                double dot = 0.0;
                for (std::size_t i = k; i < m; ++i) dot += v[i - k] * w(i, j);
                dot *= beta;
                for (std::size_t i = k; i < m; ++i) w(i, j) -= dot * v[i - k];
            }
        }
        w(k, k) = alpha;
        for (std::size_t i = k + 1; i < m; ++i) w(i, k) = 0.0;
        reflectors.push_back(std::move(v));
    }

    // Q = H_1 ... H_n * [I_n; 0]
    Matrix q(m, n);
    for (std::size_t j = 0; j < n; ++j) q(j, j) = 1.0;
    for (std::size_t k = n; k-- > 0;) {
        const auto& v = reflectors[k];
        double vnorm2 = 0.0;
        for (double t : v) vnorm2 += t * t;
        if (vnorm2 == 0.0) continue;
        const double beta = 2.0 / vnorm2;
        for (std::size_t j = 0; j < n; ++j) {
            double dot = 0.0;
            for (std::size_t i = k; i < m; ++i) dot += v[i - k] * q(i, j);
            dot *= beta;
            for (std::size_t i = k; i < m; ++i) q(i, j) -= dot * v[i - k];
        }
    }

    Matrix r(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) r(i, j) = w(i, j);

    // positive-diagonal convention
    for (std::size_t i = 0; i < n; ++i) {
        if (r(i, i) < 0.0) {
            for (std::size_t j = i; j < n; ++j) r(i, j) = -r(i, j);
            for (std::size_t row = 0; row < m; ++row) q(row, i) = -q(row, i);
        }
    }

    return QrFactors{std::move(q), std::move(r), std::move(perm)};
}

} // namespace

QrFactors qr_householder(const Matrix& a) {
    std::vector<std::size_t> identity(a.cols());
    for (std::size_t k = 0; k < identity.size(); ++k) identity[k] = k;
    return qr_core(a, std::move(identity));
}

QrFactors vblast_order(const Matrix& a) {
    const std::size_t n = a.cols();
    std::vector<std::size_t> remaining(n);
    for (std::size_t k = 0; k < n; ++k) remaining[k] = k;
    std::vector<std::size_t> perm(n);

    // Position k gets the remaining column whose residual orthogonal to the
    // span of the others is largest; that residual equals 1/||row_c(R_S^-1)||
    // for the QR factor R_S of the current submatrix.
    for (std::size_t k = n; k-- > 0;) {
        const std::size_t s = remaining.size();
        if (s == 1) {
            perm[k] = remaining[0];
            remaining.clear();
            break;
        }
        Matrix sub = permute_columns(a, remaining);
        QrFactors f = qr_core(sub, {});
        // row norms of R^-1 via forward substitution on R^T x = e_c
        std::size_t best = 0;
        double best_row_norm = -1.0;
        for (std::size_t c = 0; c < s; ++c) {
            // x = row c of R^-1: solve x^T R = e_c^T, i.e. R^T x = e_c
            std::vector<double> x(s, 0.0);
            for (std::size_t j = c; j < s; ++j) {
                double sum = (j == c) ? 1.0 : 0.0;
                for (std::size_t i = c; i < j; ++i) sum -= f.r(i, j) * x[i];
                x[j] = sum / f.r(j, j);
            }
            double norm2 = 0.0;
            for (double t : x) norm2 += t * t;
            if (best_row_norm < 0.0 || norm2 < best_row_norm) {
                best_row_norm = norm2;
                best = c;
            }
        }
        perm[k] = remaining[best];
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
    }

    Matrix reordered = permute_columns(a, perm);
    return qr_core(reordered, std::move(perm));
}

void require_upper_triangular(const Matrix& r) {
    if (r.rows() != r.cols() || r.rows() == 0)
        throw std::invalid_argument("expected a square upper-triangular matrix");
    double max_abs = 0.0;
    for (double v : r.data()) max_abs = std::max(max_abs, std::abs(v));
    const double tol = 1e-12 * max_abs;
    for (std::size_t i = 0; i < r.rows(); ++i) {
        if (!(r(i, i) > 0.0))
            throw std::invalid_argument("diagonal entry " + std::to_string(i + 1) +
                                        " is not positive");
        for (std::size_t j = 0; j < i; ++j)
            if (std::abs(r(i, j)) > tol)
                throw std::invalid_argument("matrix is not upper triangular");
    }
}

std::vector<double> back_substitute(const Matrix& r, const std::vector<double>& rhs) {
    require_upper_triangular(r);
    const std::size_t n = r.rows();
    if (rhs.size() != n) throw std::invalid_argument("back_substitute: length mismatch");
    std::vector<double> d(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double sum = rhs[i];
        for (std::size_t j = i + 1; j < n; ++j) sum -= r(i, j) * d[j];
        d[i] = sum / r(i, i);
    }
    return d;
}

} // namespace bils
