#include "wem/cost_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace wem {

InteractionSet::InteractionSet(Index node_count, std::vector<Interaction> interactions)
    : node_count_(node_count), interactions_(std::move(interactions)) {
    if (node_count_ <= 0)
        throw InvalidInput("interaction set: node_count must be positive");
    std::set<std::pair<Index, Index>> seen;
    for (const auto& e : interactions_) {
        if (e.i < 0 || e.i >= node_count_ || e.j < 0 || e.j >= node_count_)
            throw InvalidInput("interaction set: node index out of range");
        if (!(e.w >= 0.0) || !std::isfinite(e.w))
            throw InvalidInput("interaction set: weight must be finite and >= 0");
        auto key = std::minmax(e.i, e.j);
        if (!seen.insert(key).second)
            throw InvalidInput("interaction set: duplicate pair (" + std::to_string(e.i) +
                               ", " + std::to_string(e.j) + ")");
    }
}

InteractionSet InteractionSet::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open for reading: " + path);
    std::string line;
    Index node_count = -1;
    std::vector<Interaction> edges;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        if (node_count < 0) {
            if (ls >> node_count)
                continue;
            continue; // blank/comment line before the header
        }
        Interaction e;
        if (!(ls >> e.i >> e.j))
            continue;
        if (!(ls >> e.w))
            throw FormatError("edge list: missing weight at line " + std::to_string(lineno) +
                              " of " + path);
        edges.push_back(e);
    }
    if (node_count < 0)
        throw FormatError("edge list: missing node count: " + path);
    return InteractionSet(node_count, std::move(edges));
}

CostMatrix build_zipf_cost(const InteractionSet& e, std::optional<double> force_diagonal) {
    const Index n = e.node_count();
    Matrix c = Matrix::Ones(n, n); // absent pairs cost 1
    for (const auto& edge : e.interactions()) {
        const double cost = 1.0 / (edge.w + 1.0);
        c(edge.i, edge.j) = cost;
        c(edge.j, edge.i) = cost;
    }
    if (force_diagonal)
        c.diagonal().setConstant(*force_diagonal);
    return CostMatrix{std::move(c)};
}

Matrix intra_kernel(const Matrix& x, const KernelConfig& cfg) {
    require_finite(x, "intra_kernel input");
    Matrix d2 = pairwise_sq_euclidean(x);
    switch (cfg.kind) {
    case KernelKind::SquaredEuclidean:
        return d2;
    case KernelKind::Rbf: {
        if (!(cfg.bandwidth > 0.0))
            throw InvalidInput("rbf kernel: bandwidth must be > 0");
        const double s = 2.0 * cfg.bandwidth * cfg.bandwidth;
        return (1.0 - (-d2.array() / s).exp()).matrix();
    }
    }
    throw Unsupported("intra_kernel: unknown kernel kind");
}

Matrix cross_kernel(const Matrix& xp, const Matrix& xq, const KernelConfig& cfg) {
    require_finite(xp, "cross_kernel xp");
    require_finite(xq, "cross_kernel xq");
    if (xp.cols() != xq.cols())
        throw DimMismatch("cross_kernel: embedding dims differ (" + std::to_string(xp.cols()) +
                          " vs " + std::to_string(xq.cols()) + ")");
    const Index n = xp.rows(), m = xq.rows();
    Vector sp = xp.rowwise().squaredNorm();
    Vector sq = xq.rowwise().squaredNorm();
    Matrix d2 = sp.replicate(1, m) + sq.transpose().replicate(n, 1) - 2.0 * (xp * xq.transpose());
    d2 = d2.cwiseMax(0.0);
    switch (cfg.kind) {
    case KernelKind::SquaredEuclidean:
        return d2;
    case KernelKind::Rbf: {
        if (!(cfg.bandwidth > 0.0))
            throw InvalidInput("rbf kernel: bandwidth must be > 0");
        const double s = 2.0 * cfg.bandwidth * cfg.bandwidth;
        return (1.0 - (-d2.array() / s).exp()).matrix();
    }
    }
    throw Unsupported("cross_kernel: unknown kernel kind");
}

Matrix fused_cost(const Matrix& c, const Matrix& x, double beta, const KernelConfig& cfg) {
    if (!(beta >= 0.0 && beta <= 1.0))
        throw InvalidInput("fused_cost: beta must be in [0, 1]");
    Matrix k = intra_kernel(x, cfg);
    if (c.rows() != k.rows() || c.cols() != k.cols())
        throw DimMismatch("fused_cost: cost is " + std::to_string(c.rows()) + "x" +
                          std::to_string(c.cols()) + " but kernel is " +
                          std::to_string(k.rows()) + "x" + std::to_string(k.cols()));
    return (1.0 - beta) * c + beta * k;
}

} // namespace wem
