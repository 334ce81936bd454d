#pragma once

#include <cstdint>
#include <vector>

#include "coaltree/treecore/rooted_tree.hpp"

namespace coaltree::treecore {

// Horton-Strahler orders and branch counts of one tree.
struct HortonAnalysis {
    std::vector<int> order;                    // per vertex id
    int tree_order = 0;                        // order of the root (Omega)
    std::vector<std::int64_t> branch_counts;   // [k-1] -> N_k, k = 1..Omega

    // N_k; zero outside 1..Omega.
    std::int64_t branches(int k) const noexcept {
        return k >= 1 && k <= tree_order ? branch_counts[static_cast<std::size_t>(k - 1)] : 0;
    }
};

// Side-branch counts N_ij (order-i branches that end on an order-j branch,
// i < j) and the Tokunaga ratios tau_ij = N_ij / N_j.
struct TokunagaCounts {
    int tree_order = 0;
    std::vector<std::int64_t> side;  // row-major, (i-1)*tree_order + (j-1)
    std::vector<std::int64_t> branch_counts;

    std::int64_t count(int i, int j) const noexcept;
    // NaN when N_j = 0.
    double tau(int i, int j) const noexcept;
    std::int64_t total_side_branches() const noexcept;
};

// Orders by the leaf-to-root rules: leaves 1; equal children r -> r+1;
// unequal children -> the larger. A branch starts at every vertex whose order
// exceeds both children's orders (or at a leaf).
// Throws DomainError for the empty tree.
HortonAnalysis assign_horton_strahler(const RootedTree& tree);

// Throws ConsistencyError if `analysis` was not computed from `tree`.
TokunagaCounts tokunaga_counts(const RootedTree& tree, const HortonAnalysis& analysis);

}  // namespace coaltree::treecore
