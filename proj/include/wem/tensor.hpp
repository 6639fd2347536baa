#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <string>

#include "wem/error.hpp"

namespace wem {

// Row-major dense storage; problem sizes are tens to low hundreds of nodes.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

bool is_finite(const Matrix& m);
bool is_finite(const Vector& v);

// Throws InvalidInput naming `what` if any entry is NaN/Inf.
void require_finite(const Matrix& m, const std::string& what);
void require_finite(const Vector& v, const std::string& what);

// x log x with the limit value 0 at x = 0.
double xlogx(double x);

/// Probability weights over a finite node set. Strictly positive, sum 1.
class Measure {
public:
    // Validates: every weight > 0, finite, sum within 1e-12 of 1.
    explicit Measure(Vector weights);

    Index size() const { return weights_.size(); }
    const Vector& weights() const { return weights_; }
    double operator[](Index i) const { return weights_[i]; }

private:
    Vector weights_;
};

// Scales a nonnegative vector to sum 1. Zero entries are floored at 1e-9
// (after the first normalization) and the result renormalized, so the
// support stays strictly positive.
Measure normalize_measure(const Vector& raw);

Measure uniform_measure(Index n);

// Symmetric n x n matrix of squared Euclidean distances between rows of X.
Matrix pairwise_sq_euclidean(const Matrix& x);

// Plain Euclidean distances; used for point-set cost matrices.
Matrix pairwise_euclidean(const Matrix& x);

/// Deterministic seeded RNG. The stream is a pure function of the seed:
/// mt19937_64 words, with uniform/normal draws derived in-house so the
/// sequence does not depend on the standard library's distributions.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // [0, 1)
    double uniform01();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Standard normal via Box-Muller (second draw cached).
    double normal();

    // Inclusive range.
    int uniform_int(int lo, int hi);

    Matrix normal_matrix(Index rows, Index cols, double stddev = 1.0);
    Matrix uniform_matrix(Index rows, Index cols, double lo, double hi);

private:
    std::mt19937_64 engine_;
    double cached_normal_ = 0.0;
    bool has_cached_ = false;
};

// Matrix text exchange format: header line "rows,cols", then one
// comma-separated row per line. Doubles are written with 17 significant
// digits so a write/read round trip is exact.
void write_matrix_csv(const std::string& path, const Matrix& m);
Matrix read_matrix_csv(const std::string& path);

} // namespace wem
