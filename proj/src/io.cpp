#include "bils/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "bils/errors.hpp"
#include "bils/model.hpp"

namespace bils {

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

Matrix read_matrix(std::istream& in) {
    std::size_t m = 0, n = 0;
    std::string header;
    if (!std::getline(in, header)) throw FormatError("matrix: missing header line");
    {
        std::istringstream hs(header);
        if (!(hs >> m >> n) || m == 0 || n == 0)
            throw FormatError("matrix: header must be 'm n' with positive integers");
        std::string extra;
        if (hs >> extra) throw FormatError("matrix: trailing tokens in header");
    }
    Matrix a(m, n);
    for (std::size_t i = 0; i < m; ++i) {
        std::string line;
        if (!std::getline(in, line)) throw FormatError("matrix: missing row " + std::to_string(i + 1));
        std::istringstream ls(line);
        for (std::size_t j = 0; j < n; ++j) {
            if (!(ls >> a(i, j)))
                throw FormatError("matrix: bad entry at row " + std::to_string(i + 1) +
                                  " col " + std::to_string(j + 1));
        }
        std::string extra;
        if (ls >> extra) throw FormatError("matrix: trailing tokens in row " + std::to_string(i + 1));
    }
    if (!a.all_finite()) throw FormatError("matrix: non-finite entry");
    return a;
}

Matrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open matrix file: " + path);
    return read_matrix(in);
}

void write_matrix(std::ostream& out, const Matrix& a) {
    out << a.rows() << ' ' << a.cols() << '\n';
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (j) out << ' ';
            out << format_real(a(i, j));
        }
        out << '\n';
    }
}

void write_matrix_file(const std::string& path, const Matrix& a) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot open for writing: " + path);
    write_matrix(out, a);
}

std::vector<double> read_vector_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open vector file: " + path);
    std::vector<double> v;
    double x;
    while (in >> x) v.push_back(x);
    if (!in.eof()) throw FormatError("vector file has non-numeric content: " + path);
    if (v.empty()) throw FormatError("vector file is empty: " + path);
    return v;
}

Box read_box_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open box file: " + path);
    std::vector<int> lo, up;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        int l, u;
        if (!(ls >> l >> u)) throw FormatError("box file: expected 'l u' per line");
        lo.push_back(l);
        up.push_back(u);
    }
    if (lo.empty()) throw FormatError("box file is empty: " + path);
    return Box(std::move(lo), std::move(up));
}

void write_instance(std::ostream& out, const LinearInstance& inst) {
    write_matrix(out, inst.a);
    out << 'x';
    for (int v : inst.x_true) out << ' ' << v;
    out << '\n';
    out << "sigma " << format_real(inst.sigma) << '\n';
    out << 'y';
    for (double v : inst.y) out << ' ' << format_real(v);
    out << '\n';
}

LinearInstance read_instance(std::istream& in) {
    LinearInstance inst;
    inst.a = read_matrix(in);
    std::string line;

    if (!std::getline(in, line)) throw FormatError("instance: missing x line");
    {
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag != "x") throw FormatError("instance: expected x line");
        int v;
        while (ls >> v) inst.x_true.push_back(v);
        if (inst.x_true.size() != inst.a.cols())
            throw FormatError("instance: x has wrong length");
    }

    if (!std::getline(in, line)) throw FormatError("instance: missing sigma line");
    {
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag != "sigma" || !(ls >> inst.sigma) || inst.sigma < 0.0)
            throw FormatError("instance: bad sigma line");
    }

    if (!std::getline(in, line)) throw FormatError("instance: missing y line");
    {
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag != "y") throw FormatError("instance: expected y line");
        double v;
        while (ls >> v) inst.y.push_back(v);
        if (inst.y.size() != inst.a.rows())
            throw FormatError("instance: y has wrong length");
    }

    // noise is reconstructible only when x is known exactly: v = y - A x
    inst.noise = inst.y;
    const auto ax = multiply_int(inst.a, inst.x_true);
    for (std::size_t i = 0; i < inst.noise.size(); ++i) inst.noise[i] -= ax[i];
    return inst;
}

} // namespace bils
