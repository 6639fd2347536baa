#pragma once

#include <utility>

#include "wem/tensor.hpp"

namespace wem {

/// Coupling between two measures; rows marginalize to the source measure,
/// columns to the target, total mass 1.
struct TransportPlan {
    Matrix t;

    Index rows() const { return t.rows(); }
    Index cols() const { return t.cols(); }
    Vector row_marginals() const { return t.rowwise().sum(); }
    Vector col_marginals() const { return t.colwise().sum().transpose(); }
    double mass() const { return t.sum(); }
};

// Independence coupling mu nu^T; the Algorithm-style initial plan.
TransportPlan product_plan(const Measure& mu, const Measure& nu);

enum class EntropyKind {
    Standard,  // H(T) = sum_ij T_ij (1 - log T_ij); solved by Sinkhorn scaling
    LogBarrier // H(T) = -sum_ij log T_ij; experimental dual Newton solve
};

struct SinkhornConfig {
    double eta = 0.1;          // entropic strength (= 1/learning-rate)
    int max_iters = 10000;
    double marginal_tol = 1e-9;
    bool log_domain = false;   // force log-domain scaling
    EntropyKind entropy = EntropyKind::Standard;
};

// Stabilization policy: log-domain on for eta < 0.05, linear scaling otherwise.
SinkhornConfig default_sinkhorn_config(double eta);

struct SolveReport {
    int iterations_used = 0;
    double final_marginal_error = 0.0;
    bool converged = false;
    double objective = 0.0;      // <C, T> - eta * H(T)
    bool used_log_domain = false;
};

// Entropy-regularized OT: min_{T in Gamma(mu, nu)} <cost, T> - eta * H(T).
// Linear scaling falls back to the log-domain path automatically if the
// scalings underflow; it never errors for small eta.
std::pair<TransportPlan, SolveReport> sinkhorn_solve(const Matrix& cost,
                                                     const Measure& mu,
                                                     const Measure& nu,
                                                     const SinkhornConfig& cfg);

// Exact unregularized 2x2 optimum via the one-parameter closed form:
// T11 = t, feasible t in [max(0, mu1+nu1-1), min(mu1, nu1)], objective linear
// in t, optimum at an endpoint (lower endpoint on ties).
TransportPlan exact_ot_2x2(const Matrix& cost, const Measure& mu, const Measure& nu);

// Max of the L1 row-marginal and L1 column-marginal deviations.
double marginal_error(const TransportPlan& plan, const Measure& mu, const Measure& nu);

// sum_ij (T_ij - T_ij log T_ij), the entropy Sinkhorn regularizes with.
double entropy_std(const Matrix& t);

// sum_ij T_ij log(T_ij / R_ij) - T_ij + R_ij.
double kl_divergence(const Matrix& t, const Matrix& ref);

} // namespace wem
