#pragma once

#include <vector>

#include "coaltree/treecore/rooted_tree.hpp"

namespace coaltree::treecore {

// Rooted tree viewed from a designated leaf.
class SelectedLeafTree {
public:
    // Throws DomainError unless `leaf` is a leaf of `tree`.
    SelectedLeafTree(RootedTree tree, VertexId leaf);

    const RootedTree& tree() const noexcept { return tree_; }
    VertexId leaf() const noexcept { return leaf_; }

    // Ancestral path rho: leaf, parent, ..., root.
    std::vector<VertexId> ancestral_path() const;

private:
    RootedTree tree_;
    VertexId leaf_;
};

// T_1, ..., T_n: the sibling subtree hanging off the i-th path vertex above the
// selected leaf. Members past the returned length are the empty tree.
std::vector<RootedTree> forest_decomposition(const SelectedLeafTree& t);

// mu(A, B) = 1 / (1 + sup{n : A_k|n = B_k|n for all k <= n}); 0 iff the two
// decompositions coincide at every depth.
double mu_distance(const SelectedLeafTree& a, const SelectedLeafTree& b);

}  // namespace coaltree::treecore
