#include "coaltree/treecore/horton.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "coaltree/errors.hpp"

namespace coaltree::treecore {

namespace {

int merged_order(int a, int b) noexcept { return a == b ? a + 1 : std::max(a, b); }

}  // namespace

std::int64_t TokunagaCounts::count(int i, int j) const noexcept {
    if (i < 1 || j <= i || j > tree_order) return 0;
    return side[static_cast<std::size_t>((i - 1) * tree_order + (j - 1))];
}

double TokunagaCounts::tau(int i, int j) const noexcept {
    if (j < 1 || j > tree_order || branch_counts[static_cast<std::size_t>(j - 1)] == 0) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return static_cast<double>(count(i, j)) / static_cast<double>(branch_counts[static_cast<std::size_t>(j - 1)]);
}

std::int64_t TokunagaCounts::total_side_branches() const noexcept {
    return std::accumulate(side.begin(), side.end(), std::int64_t{0});
}

HortonAnalysis assign_horton_strahler(const RootedTree& tree) {
    if (tree.empty()) throw DomainError("Horton-Strahler ordering needs a tree with at least one leaf");

    HortonAnalysis result;
    result.order.assign(tree.size(), 0);
    std::vector<std::int64_t> counts;
    for (VertexId v : tree.postorder()) {
        const Vertex& vert = tree.vertex(v);
        int r = 1;
        bool starts_branch = true;
        if (!vert.is_leaf()) {
            const int a = result.order[vert.left];
            const int b = result.order[vert.right];
            r = merged_order(a, b);
            starts_branch = (a == b);
        }
        result.order[v] = r;
        if (starts_branch) {
            if (counts.size() < static_cast<std::size_t>(r)) counts.resize(static_cast<std::size_t>(r), 0);
            ++counts[static_cast<std::size_t>(r - 1)];
        }
    }
    result.tree_order = result.order[tree.root()];
    result.branch_counts = std::move(counts);
    return result;
}

TokunagaCounts tokunaga_counts(const RootedTree& tree, const HortonAnalysis& analysis) {
    if (analysis.order.size() != tree.size() || tree.empty() ||
        analysis.tree_order != analysis.order[tree.root()] ||
        analysis.branch_counts.size() != static_cast<std::size_t>(analysis.tree_order)) {
        throw ConsistencyError("Horton analysis does not belong to this tree");
    }
    const int omega = analysis.tree_order;
    TokunagaCounts result;
    result.tree_order = omega;
    result.branch_counts = analysis.branch_counts;
    result.side.assign(static_cast<std::size_t>(omega) * static_cast<std::size_t>(omega), 0);
    for (VertexId v : tree.postorder()) {
        const Vertex& vert = tree.vertex(v);
        if (vert.is_leaf()) {
            if (analysis.order[v] != 1) throw ConsistencyError("Horton analysis does not belong to this tree");
            continue;
        }
        const int a = analysis.order[vert.left];
        const int b = analysis.order[vert.right];
        if (analysis.order[v] != merged_order(a, b)) {
            throw ConsistencyError("Horton analysis does not belong to this tree");
        }
        if (a != b) {
            const int i = std::min(a, b);
            const int j = std::max(a, b);
            ++result.side[static_cast<std::size_t>((i - 1) * omega + (j - 1))];
        }
    }
    return result;
}

}  // namespace coaltree::treecore
