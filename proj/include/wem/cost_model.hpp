#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wem/tensor.hpp"

namespace wem {

struct Interaction {
    Index i = 0;
    Index j = 0;
    double w = 0.0; // nonnegative interaction count
};

/// Weighted pair interactions over a node set. Undirected: at most one
/// entry per unordered pair; self-loops allowed.
class InteractionSet {
public:
    InteractionSet(Index node_count, std::vector<Interaction> interactions);

    // Text edge list: first non-comment line is the node count, then one
    // "i j w" triple per line; '#' starts a comment.
    static InteractionSet from_file(const std::string& path);

    Index node_count() const { return node_count_; }
    const std::vector<Interaction>& interactions() const { return interactions_; }

private:
    Index node_count_;
    std::vector<Interaction> interactions_;
};

/// Intra-domain dissimilarity built from an interaction set; entries in (0, 1],
/// 1 exactly for absent pairs.
struct CostMatrix {
    Matrix c;
};

enum class KernelKind { SquaredEuclidean, Rbf };

struct KernelConfig {
    KernelKind kind = KernelKind::SquaredEuclidean;
    double bandwidth = 1.0; // rbf only, > 0
};

// c_ij = 1/(w_ij + 1) for listed pairs, 1 otherwise. The diagonal counts as a
// present pair with w = 0 (c_ii = 1) unless a self-loop is listed;
// force_diagonal overrides it with a fixed value.
CostMatrix build_zipf_cost(const InteractionSet& e,
                           std::optional<double> force_diagonal = std::nullopt);

// Pairwise kernel distances within one domain (small = similar). For rbf the
// dissimilarity convention is 1 - exp(-d^2 / 2 sigma^2).
Matrix intra_kernel(const Matrix& x, const KernelConfig& cfg);

// |Vp| x |Vq| cross-domain kernel distances; embedding dims must match.
Matrix cross_kernel(const Matrix& xp, const Matrix& xq, const KernelConfig& cfg);

// C_fused = (1 - beta) * C + beta * K(X, X), beta in [0, 1].
Matrix fused_cost(const Matrix& c, const Matrix& x, double beta, const KernelConfig& cfg);

} // namespace wem
