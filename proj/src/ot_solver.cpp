#include "wem/ot_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wem {

namespace {

Vector log_sum_exp_rowwise(const Matrix& m) {
    Vector c = m.rowwise().maxCoeff();
    Vector r = (m - c.replicate(1, m.cols())).array().exp().rowwise().sum();
    return c.array() + r.array().log();
}

double plan_marginal_error(const Matrix& t, const Vector& mu, const Vector& nu) {
    const double row = (t.rowwise().sum() - mu).lpNorm<1>();
    const double col = (t.colwise().sum().transpose() - nu).lpNorm<1>();
    return std::max(row, col);
}

double entropic_objective(const Matrix& cost, const Matrix& t, double eta) {
    return cost.cwiseProduct(t).sum() - eta * entropy_std(t);
}

std::pair<TransportPlan, SolveReport> sinkhorn_log_domain(const Matrix& cost,
                                                          const Vector& mu,
                                                          const Vector& nu,
                                                          const SinkhornConfig& cfg) {
    const Index n = cost.rows(), m = cost.cols();
    const double eta = cfg.eta;
    Vector f = Vector::Zero(n), g = Vector::Zero(m);
    Vector logmu = mu.array().log();
    Vector lognu = nu.array().log();

    Matrix t(n, m);
    SolveReport rep;
    rep.used_log_domain = true;
    for (int it = 1; it <= cfg.max_iters; ++it) {
        Matrix scaled = (f.replicate(1, m) + g.transpose().replicate(n, 1) - cost) / eta;
        f += eta * (logmu - log_sum_exp_rowwise(scaled));
        scaled = (f.replicate(1, m) + g.transpose().replicate(n, 1) - cost) / eta;
        g += eta * (lognu - log_sum_exp_rowwise(scaled.transpose()));

        t = ((f.replicate(1, m) + g.transpose().replicate(n, 1) - cost) / eta).array().exp();
        rep.iterations_used = it;
        rep.final_marginal_error = plan_marginal_error(t, mu, nu);
        if (rep.final_marginal_error <= cfg.marginal_tol) {
            rep.converged = true;
            break;
        }
    }
    rep.objective = entropic_objective(cost, t, eta);
    return {TransportPlan{std::move(t)}, rep};
}

// Linear-scaling path; returns false when the Gibbs kernel underflows and the
// caller must retry in log-domain.
bool sinkhorn_linear(const Matrix& cost, const Vector& mu, const Vector& nu,
                     const SinkhornConfig& cfg, Matrix& t_out, SolveReport& rep) {
    const Index n = cost.rows(), m = cost.cols();
    const double eta = cfg.eta;
    Matrix gibbs = (-cost / eta).array().exp();
    if (!gibbs.allFinite() || (gibbs.rowwise().sum().array() <= 0.0).any() ||
        (gibbs.colwise().sum().array() <= 0.0).any())
        return false;

    Vector u = Vector::Ones(n), v = Vector::Ones(m);
    for (int it = 1; it <= cfg.max_iters; ++it) {
        Vector gv = gibbs * v;
        if (!gv.allFinite() || (gv.array() <= 0.0).any())
            return false;
        u = mu.cwiseQuotient(gv);
        Vector gtu = gibbs.transpose() * u;
        if (!gtu.allFinite() || (gtu.array() <= 0.0).any())
            return false;
        v = nu.cwiseQuotient(gtu);
        if (!u.allFinite() || !v.allFinite())
            return false;

        t_out = u.asDiagonal() * gibbs * v.asDiagonal();
        rep.iterations_used = it;
        rep.final_marginal_error = plan_marginal_error(t_out, mu, nu);
        if (rep.final_marginal_error <= cfg.marginal_tol) {
            rep.converged = true;
            break;
        }
    }
    rep.objective = entropic_objective(cost, t_out, eta);
    return true;
}

// Experimental log-barrier variant: min <C,T> + eta * sum -log T_ij.
// Dual stationarity gives T_ij = eta / (C_ij + a_i + b_j); a and b are fixed
// by the marginals via monotone per-row/per-column root-finds.
std::pair<TransportPlan, SolveReport> barrier_solve(const Matrix& cost,
                                                    const Vector& mu,
                                                    const Vector& nu,
                                                    const SinkhornConfig& cfg) {
    const Index n = cost.rows(), m = cost.cols();
    const double eta = cfg.eta;
    const double cmin = cost.minCoeff();
    // Start with all duals large enough that every denominator is positive.
    Vector a = Vector::Constant(n, 1.0 - std::min(0.0, cmin));
    Vector b = Vector::Constant(m, 1.0 - std::min(0.0, cmin));

    auto solve_row = [&](Index i) {
        // Find a_i with sum_j eta / (C_ij + a_i + b_j) = mu_i (decreasing in a_i).
        double lo = -std::numeric_limits<double>::infinity();
        for (Index j = 0; j < m; ++j)
            lo = std::max(lo, -(cost(i, j) + b[j]));
        double hi = lo + 1.0;
        auto rowsum = [&](double av) {
            double s = 0.0;
            for (Index j = 0; j < m; ++j)
                s += eta / (cost(i, j) + av + b[j]);
            return s;
        };
        while (rowsum(hi) > mu[i])
            hi = lo + 2.0 * (hi - lo);
        double lo2 = lo;
        for (int k = 0; k < 200; ++k) {
            const double mid = (lo2 == -std::numeric_limits<double>::infinity())
                                   ? hi - 1.0
                                   : 0.5 * (lo2 + hi);
            if (rowsum(mid) > mu[i])
                lo2 = mid;
            else
                hi = mid;
            if (std::isfinite(lo2) && hi - lo2 < 1e-15 * (1.0 + std::abs(hi)))
                break;
        }
        a[i] = hi;
    };
    auto solve_col = [&](Index j) {
        double lo = -std::numeric_limits<double>::infinity();
        for (Index i = 0; i < n; ++i)
            lo = std::max(lo, -(cost(i, j) + a[i]));
        double hi = lo + 1.0;
        auto colsum = [&](double bv) {
            double s = 0.0;
            for (Index i = 0; i < n; ++i)
                s += eta / (cost(i, j) + a[i] + bv);
            return s;
        };
        while (colsum(hi) > nu[j])
            hi = lo + 2.0 * (hi - lo);
        double lo2 = lo;
        for (int k = 0; k < 200; ++k) {
            const double mid = (lo2 == -std::numeric_limits<double>::infinity())
                                   ? hi - 1.0
                                   : 0.5 * (lo2 + hi);
            if (colsum(mid) > nu[j])
                lo2 = mid;
            else
                hi = mid;
            if (std::isfinite(lo2) && hi - lo2 < 1e-15 * (1.0 + std::abs(hi)))
                break;
        }
        b[j] = hi;
    };

    Matrix t(n, m);
    SolveReport rep;
    for (int it = 1; it <= cfg.max_iters; ++it) {
        for (Index i = 0; i < n; ++i)
            solve_row(i);
        for (Index j = 0; j < m; ++j)
            solve_col(j);
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < m; ++j)
                t(i, j) = eta / (cost(i, j) + a[i] + b[j]);
        rep.iterations_used = it;
        rep.final_marginal_error = plan_marginal_error(t, mu, nu);
        if (rep.final_marginal_error <= cfg.marginal_tol) {
            rep.converged = true;
            break;
        }
    }
    rep.objective = cost.cwiseProduct(t).sum() -
                    eta * t.array().max(1e-300).log().sum();
    return {TransportPlan{std::move(t)}, rep};
}

} // namespace

TransportPlan product_plan(const Measure& mu, const Measure& nu) {
    return TransportPlan{mu.weights() * nu.weights().transpose()};
}

SinkhornConfig default_sinkhorn_config(double eta) {
    SinkhornConfig cfg;
    cfg.eta = eta;
    cfg.log_domain = eta < 0.05;
    return cfg;
}

std::pair<TransportPlan, SolveReport> sinkhorn_solve(const Matrix& cost,
                                                     const Measure& mu,
                                                     const Measure& nu,
                                                     const SinkhornConfig& cfg) {
    require_finite(cost, "sinkhorn cost");
    if (cost.rows() != mu.size() || cost.cols() != nu.size())
        throw DimMismatch("sinkhorn: cost is " + std::to_string(cost.rows()) + "x" +
                          std::to_string(cost.cols()) + " but measures are " +
                          std::to_string(mu.size()) + " and " + std::to_string(nu.size()));
    if (!(cfg.eta > 0.0))
        throw InvalidInput("sinkhorn: eta must be > 0");
    if (!(cfg.marginal_tol > 0.0))
        throw InvalidInput("sinkhorn: marginal_tol must be > 0");

    if (cfg.entropy == EntropyKind::LogBarrier)
        return barrier_solve(cost, mu.weights(), nu.weights(), cfg);

    if (!cfg.log_domain) {
        Matrix t;
        SolveReport rep;
        if (sinkhorn_linear(cost, mu.weights(), nu.weights(), cfg, t, rep))
            return {TransportPlan{std::move(t)}, rep};
        // scalings underflowed; retry stabilized
    }
    return sinkhorn_log_domain(cost, mu.weights(), nu.weights(), cfg);
}

TransportPlan exact_ot_2x2(const Matrix& cost, const Measure& mu, const Measure& nu) {
    if (cost.rows() != 2 || cost.cols() != 2 || mu.size() != 2 || nu.size() != 2)
        throw DimMismatch("exact_ot_2x2: needs a 2x2 instance");
    require_finite(cost, "exact_ot_2x2 cost");
    const double m1 = mu[0], n1 = nu[0];
    const double lo = std::max(0.0, m1 + n1 - 1.0);
    const double hi = std::min(m1, n1);
    const double coef = cost(0, 0) - cost(0, 1) - cost(1, 0) + cost(1, 1);
    const double t11 = coef > 0.0 ? lo : (coef < 0.0 ? hi : lo);
    Matrix t(2, 2);
    t(0, 0) = t11;
    t(0, 1) = m1 - t11;
    t(1, 0) = n1 - t11;
    t(1, 1) = 1.0 - m1 - n1 + t11;
    t = t.cwiseMax(0.0); // clear rounding residue at the endpoints
    return TransportPlan{std::move(t)};
}

double marginal_error(const TransportPlan& plan, const Measure& mu, const Measure& nu) {
    if (plan.rows() != mu.size() || plan.cols() != nu.size())
        throw DimMismatch("marginal_error: plan shape does not match measures");
    return plan_marginal_error(plan.t, mu.weights(), nu.weights());
}

double entropy_std(const Matrix& t) {
    double h = 0.0;
    for (Index i = 0; i < t.rows(); ++i)
        for (Index j = 0; j < t.cols(); ++j)
            h += t(i, j) - xlogx(t(i, j));
    return h;
}

double kl_divergence(const Matrix& t, const Matrix& ref) {
    if (t.rows() != ref.rows() || t.cols() != ref.cols())
        throw DimMismatch("kl_divergence: shape mismatch");
    double kl = 0.0;
    for (Index i = 0; i < t.rows(); ++i)
        for (Index j = 0; j < t.cols(); ++j) {
            const double a = t(i, j), b = ref(i, j);
            if (a > 0.0) {
                if (b <= 0.0)
                    throw DomainError("kl_divergence: zero reference under positive mass");
                kl += a * std::log(a / b) - a + b;
            } else {
                kl += b;
            }
        }
    return kl;
}

} // namespace wem
