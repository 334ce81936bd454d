#include "coaltree/treecore/selected_leaf.hpp"

#include <algorithm>
#include <utility>

#include "coaltree/errors.hpp"
#include "coaltree/treecore/shape.hpp"

namespace coaltree::treecore {

SelectedLeafTree::SelectedLeafTree(RootedTree tree, VertexId leaf) : tree_(std::move(tree)), leaf_(leaf) {
    if (leaf_ < 0 || static_cast<std::size_t>(leaf_) >= tree_.size() || !tree_.vertex(leaf_).is_leaf()) {
        throw DomainError("selected vertex is not a leaf of the tree");
    }
}

std::vector<VertexId> SelectedLeafTree::ancestral_path() const {
    std::vector<VertexId> path;
    for (VertexId v = leaf_; v != kNoVertex; v = tree_.vertex(v).parent) path.push_back(v);
    return path;
}

std::vector<RootedTree> forest_decomposition(const SelectedLeafTree& t) {
    const auto path = t.ancestral_path();
    std::vector<RootedTree> forest;
    forest.reserve(path.size() - 1);
    for (std::size_t i = 1; i < path.size(); ++i) {
        const Vertex& step = t.tree().vertex(path[i]);
        const VertexId sibling = step.left == path[i - 1] ? step.right : step.left;
        forest.push_back(t.tree().subtree(sibling));
    }
    return forest;
}

namespace {

bool restrictions_agree(const std::vector<RootedTree>& a, const std::vector<RootedTree>& b, int n) {
    static const RootedTree kEmpty;
    for (int k = 1; k <= n; ++k) {
        const std::size_t idx = static_cast<std::size_t>(k - 1);
        const RootedTree& ak = idx < a.size() ? a[idx] : kEmpty;
        const RootedTree& bk = idx < b.size() ? b[idx] : kEmpty;
        if (ak.empty() && bk.empty()) continue;
        if (ak.empty() != bk.empty()) return false;
        if (canonical_shape(restrict_depth(ak, n)) != canonical_shape(restrict_depth(bk, n))) return false;
    }
    return true;
}

}  // namespace

double mu_distance(const SelectedLeafTree& a, const SelectedLeafTree& b) {
    const auto fa = forest_decomposition(a);
    const auto fb = forest_decomposition(b);
    // Past this depth every restriction has saturated and every member beyond
    // both path lengths is empty, so agreement there holds for all larger n.
    int bound = static_cast<int>(std::max(fa.size(), fb.size()));
    for (const auto* forest : {&fa, &fb}) {
        for (const auto& member : *forest) bound = std::max(bound, member.height() + 1);
    }
    bound += 1;
    // Agreement at depth n implies agreement at every smaller depth.
    for (int n = 1; n <= bound; ++n) {
        if (!restrictions_agree(fa, fb, n)) return 1.0 / static_cast<double>(n);  // sup = n - 1
    }
    return 0.0;
}

}  // namespace coaltree::treecore
