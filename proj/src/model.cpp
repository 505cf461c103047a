#include "bils/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "bils/errors.hpp"

namespace bils {

Box::Box(std::vector<int> lo, std::vector<int> up)
    : lower(std::move(lo)), upper(std::move(up)) {
    if (lower.size() != upper.size() || lower.empty())
        throw std::invalid_argument("Box: bound vectors must be nonempty and equal length");
    for (std::size_t i = 0; i < lower.size(); ++i)
        if (lower[i] >= upper[i])
            throw std::invalid_argument("Box: need lower < upper in every dimension (dim " +
                                        std::to_string(i + 1) + ")");
}

Box Box::uniform(std::size_t n, int lo, int up) {
    return Box(std::vector<int>(n, lo), std::vector<int>(n, up));
}

long long Box::cardinality(long long cap) const {
    long long total = 1;
    for (std::size_t i = 0; i < dim(); ++i) {
        total *= width(i);
        if (total > cap) return cap + 1;
    }
    return total;
}

bool Box::contains(const std::vector<int>& x) const {
    if (x.size() != dim()) return false;
    for (std::size_t i = 0; i < dim(); ++i)
        if (x[i] < lower[i] || x[i] > upper[i]) return false;
    return true;
}

Box Box::permuted(const std::vector<std::size_t>& perm) const {
    Box out = *this;
    for (std::size_t k = 0; k < perm.size(); ++k) {
        out.lower[k] = lower[perm[k]];
        out.upper[k] = upper[perm[k]];
    }
    return out;
}

double sigma_from_snr(double snr_db, unsigned u) {
    if (u == 0) throw std::invalid_argument("sigma_from_snr: u must be >= 1");
    if (!std::isfinite(snr_db)) throw std::invalid_argument("sigma_from_snr: SNR must be finite");
    const double num = static_cast<double>(u) * (static_cast<double>(u) + 2.0);
    return std::sqrt(num / (12.0 * std::pow(10.0, snr_db / 10.0)));
}

Matrix gaussian_matrix(std::size_t m, std::size_t n, Stream& stream) {
    Matrix a(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = stream.normal();
    return a;
}

std::vector<int> uniform_box_vector(const Box& box, Stream& stream) {
    std::vector<int> x(box.dim());
    for (std::size_t i = 0; i < box.dim(); ++i)
        x[i] = stream.uniform_int(box.lower[i], box.upper[i]);
    return x;
}

LinearInstance generate_instance(std::size_t m, std::size_t n, const Box& box,
                                 double sigma, Seed seed) {
    if (m < n) throw std::invalid_argument("generate_instance: need m >= n");
    if (box.dim() != n) throw std::invalid_argument("generate_instance: box dimension mismatch");
    if (sigma < 0.0) throw std::invalid_argument("generate_instance: sigma must be >= 0");

    Stream mat_stream(seed, {stream_label::matrix});
    Stream par_stream(seed, {stream_label::parameter});
    Stream noise_stream(seed, {stream_label::noise});

    LinearInstance inst;
    inst.a = gaussian_matrix(m, n, mat_stream);
    inst.x_true = uniform_box_vector(box, par_stream);
    inst.noise = noise_stream.normal_vector(m, sigma);
    inst.sigma = sigma;
    inst.box = box;
    inst.y = multiply_int(inst.a, inst.x_true);
    for (std::size_t i = 0; i < m; ++i) inst.y[i] += inst.noise[i];
    return inst;
}

TriangularInstance to_triangular(const LinearInstance& inst, const QrFactors& factors) {
    return to_triangular(inst.a, inst.y, inst.box, factors, inst.sigma);
}

TriangularInstance to_triangular(const Matrix& a, const std::vector<double>& y,
                                 const Box& box, const QrFactors& factors, double sigma) {
    if (factors.q.rows() != y.size() || factors.q.rows() != a.rows() ||
        factors.q.cols() != a.cols() || box.dim() != a.cols())
        throw std::invalid_argument("to_triangular: dimension mismatch");
    TriangularInstance tri;
    tri.r = factors.r;
    tri.y_tilde = transpose_multiply(factors.q, y);
    tri.sigma = sigma;
    tri.box = box.permuted(factors.perm);
    tri.perm = factors.perm;
    return tri;
}

} // namespace bils
