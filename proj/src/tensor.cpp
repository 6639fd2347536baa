#include "wem/tensor.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace wem {

bool is_finite(const Matrix& m) { return m.allFinite(); }
bool is_finite(const Vector& v) { return v.allFinite(); }

void require_finite(const Matrix& m, const std::string& what) {
    if (!m.allFinite())
        throw InvalidInput(what + ": non-finite entries");
}

void require_finite(const Vector& v, const std::string& what) {
    if (!v.allFinite())
        throw InvalidInput(what + ": non-finite entries");
}

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

Measure::Measure(Vector weights) : weights_(std::move(weights)) {
    if (weights_.size() == 0)
        throw InvalidMeasure("measure: empty weight vector");
    require_finite(weights_, "measure weights");
    if ((weights_.array() <= 0.0).any())
        throw InvalidMeasure("measure: weights must be strictly positive");
    if (std::abs(weights_.sum() - 1.0) > 1e-12)
        throw InvalidMeasure("measure: weights must sum to 1");
}

Measure normalize_measure(const Vector& raw) {
    if (raw.size() == 0 || !raw.allFinite())
        throw InvalidMeasure("normalize_measure: empty or non-finite input");
    if ((raw.array() < 0.0).any())
        throw InvalidMeasure("normalize_measure: negative entries");
    const double total = raw.sum();
    if (total <= 0.0)
        throw InvalidMeasure("normalize_measure: all entries zero");

    Vector w = raw / total;
    constexpr double kFloor = 1e-9;
    bool floored = false;
    for (Index i = 0; i < w.size(); ++i) {
        if (w[i] == 0.0) {
            w[i] = kFloor;
            floored = true;
        }
    }
    if (floored)
        w /= w.sum();
    return Measure(std::move(w));
}

Measure uniform_measure(Index n) {
    return Measure(Vector::Constant(n, 1.0 / static_cast<double>(n)));
}

Matrix pairwise_sq_euclidean(const Matrix& x) {
    require_finite(x, "pairwise_sq_euclidean input");
    const Index n = x.rows();
    Vector sq = x.rowwise().squaredNorm();
    Matrix d = sq.replicate(1, n) + sq.transpose().replicate(n, 1) - 2.0 * (x * x.transpose());
    d = d.cwiseMax(0.0);
    d.diagonal().setZero();
    // symmetrize away the rounding skew of the Gram-matrix form
    d = 0.5 * (d + Matrix(d.transpose()));
    return d;
}

Matrix pairwise_euclidean(const Matrix& x) {
    return pairwise_sq_euclidean(x).cwiseSqrt();
}

double SeededRng::uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double SeededRng::normal() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_normal_;
    }
    const double u1 = 1.0 - uniform01(); // (0, 1]
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    cached_normal_ = r * std::sin(theta);
    has_cached_ = true;
    return r * std::cos(theta);
}

int SeededRng::uniform_int(int lo, int hi) {
    if (hi < lo)
        throw InvalidInput("uniform_int: empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(next_u64() % span);
}

Matrix SeededRng::normal_matrix(Index rows, Index cols, double stddev) {
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j)
            m(i, j) = stddev * normal();
    return m;
}

Matrix SeededRng::uniform_matrix(Index rows, Index cols, double lo, double hi) {
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j)
            m(i, j) = uniform(lo, hi);
    return m;
}

void write_matrix_csv(const std::string& path, const Matrix& m) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open for writing: " + path);
    out << m.rows() << "," << m.cols() << "\n";
    char buf[64];
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", m(i, j));
            out << buf << (j + 1 < m.cols() ? "," : "");
        }
        out << "\n";
    }
    if (!out)
        throw IoError("write failed: " + path);
}

Matrix read_matrix_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open for reading: " + path);
    std::string line;
    if (!std::getline(in, line))
        throw FormatError("matrix csv: missing header: " + path);
    Index rows = 0, cols = 0;
    {
        char comma = 0;
        std::istringstream hs(line);
        if (!(hs >> rows >> comma >> cols) || comma != ',' || rows <= 0 || cols <= 0)
            throw FormatError("matrix csv: bad header '" + line + "' in " + path);
    }
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        if (!std::getline(in, line))
            throw FormatError("matrix csv: truncated at row " + std::to_string(i) + ": " + path);
        std::istringstream ls(line);
        std::string cell;
        for (Index j = 0; j < cols; ++j) {
            if (!std::getline(ls, cell, ','))
                throw FormatError("matrix csv: row " + std::to_string(i) + " too short: " + path);
            try {
                m(i, j) = std::stod(cell);
            } catch (const std::exception&) {
                throw FormatError("matrix csv: bad number '" + cell + "' in " + path);
            }
        }
    }
    return m;
}

} // namespace wem
