#include "coaltree/treecore/rooted_tree.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "coaltree/errors.hpp"

namespace coaltree::treecore {

RootedTree RootedTree::single_leaf(std::optional<double> mark) {
    TreeBuilder builder;
    builder.add_leaf(mark);
    return std::move(builder).build();
}

bool RootedTree::fully_marked() const noexcept {
    return !vertices_.empty() &&
           std::all_of(vertices_.begin(), vertices_.end(), [](const Vertex& v) { return v.mark.has_value(); });
}

RootedTree RootedTree::subtree(VertexId v) const {
    if (empty()) return {};
    TreeBuilder builder;
    std::vector<VertexId> remap(vertices_.size(), kNoVertex);
    std::vector<std::pair<VertexId, bool>> stack{{v, false}};
    while (!stack.empty()) {
        auto [u, expanded] = stack.back();
        stack.pop_back();
        const Vertex& vert = vertex(u);
        if (vert.is_leaf()) {
            remap[u] = builder.add_leaf(vert.mark);
        } else if (expanded) {
            remap[u] = builder.add_internal(remap[vert.left], remap[vert.right], vert.mark);
        } else {
            stack.emplace_back(u, true);
            stack.emplace_back(vert.right, false);
            stack.emplace_back(vert.left, false);
        }
    }
    return std::move(builder).build();
}

RootedTree RootedTree::with_children_swapped(VertexId v) const {
    RootedTree copy = *this;
    Vertex& vert = copy.vertices_.at(static_cast<std::size_t>(v));
    std::swap(vert.left, vert.right);
    return copy;
}

int RootedTree::height() const {
    if (empty()) return -1;
    std::vector<int> h(vertices_.size(), 0);
    for (VertexId u : postorder_) {
        const Vertex& vert = vertices_[u];
        if (!vert.is_leaf()) h[u] = 1 + std::max(h[vert.left], h[vert.right]);
    }
    return h[root_];
}

VertexId TreeBuilder::add_vertex(std::optional<double> mark) {
    children_.emplace_back();
    marks_.push_back(mark);
    return static_cast<VertexId>(marks_.size() - 1);
}

VertexId TreeBuilder::add_internal(VertexId left, VertexId right, std::optional<double> mark) {
    const VertexId id = add_vertex(mark);
    set_children(id, {left, right});
    return id;
}

void TreeBuilder::set_children(VertexId parent, std::vector<VertexId> children) {
    children_.at(static_cast<std::size_t>(parent)) = std::move(children);
}

void TreeBuilder::set_mark(VertexId v, std::optional<double> mark) { marks_.at(static_cast<std::size_t>(v)) = mark; }

RootedTree TreeBuilder::build() && {
    const std::size_t n = marks_.size();
    RootedTree tree;
    if (n == 0) return tree;

    tree.vertices_.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
        const auto& kids = children_[v];
        if (!kids.empty() && kids.size() != 2) {
            throw StructuralError("vertex " + std::to_string(v) + " has " + std::to_string(kids.size()) +
                                  " children; binary trees need 0 or 2");
        }
        Vertex& vert = tree.vertices_[v];
        vert.mark = marks_[v];
        if (kids.size() == 2) {
            vert.left = kids[0];
            vert.right = kids[1];
        }
        for (VertexId c : kids) {
            if (c < 0 || static_cast<std::size_t>(c) >= n) {
                throw StructuralError("vertex " + std::to_string(v) + " references unknown child " + std::to_string(c));
            }
            if (static_cast<std::size_t>(c) == v) throw StructuralError("vertex " + std::to_string(v) + " is its own child");
        }
    }
    for (std::size_t v = 0; v < n; ++v) {
        for (VertexId c : children_[v]) {
            Vertex& child = tree.vertices_[c];
            if (child.parent != kNoVertex) {
                throw StructuralError("vertex " + std::to_string(c) + " has more than one parent");
            }
            child.parent = static_cast<VertexId>(v);
        }
    }

    VertexId root = kNoVertex;
    for (std::size_t v = 0; v < n; ++v) {
        if (tree.vertices_[v].parent == kNoVertex) {
            if (root != kNoVertex) throw StructuralError("tree has more than one root");
            root = static_cast<VertexId>(v);
        }
    }
    if (root == kNoVertex) throw StructuralError("tree has no root (cycle)");
    tree.root_ = root;

    // Iterative postorder; unreachable vertices can only sit on a cycle.
    tree.postorder_.reserve(n);
    std::vector<std::pair<VertexId, bool>> stack{{root, false}};
    while (!stack.empty()) {
        auto [u, expanded] = stack.back();
        stack.pop_back();
        const Vertex& vert = tree.vertices_[u];
        if (vert.is_leaf() || expanded) {
            tree.postorder_.push_back(u);
            if (vert.is_leaf()) ++tree.leaf_count_;
        } else {
            stack.emplace_back(u, true);
            stack.emplace_back(vert.right, false);
            stack.emplace_back(vert.left, false);
        }
        if (tree.postorder_.size() > n) throw StructuralError("cycle detected");
    }
    if (tree.postorder_.size() != n) throw StructuralError("cycle detected: some vertices unreachable from the root");

    // Marks must move strictly and in one direction along every marked edge.
    int direction = 0;
    for (std::size_t v = 0; v < n; ++v) {
        const Vertex& vert = tree.vertices_[v];
        if (vert.parent == kNoVertex || !vert.mark) continue;
        const auto& parent_mark = tree.vertices_[vert.parent].mark;
        if (!parent_mark) continue;
        const int d = *parent_mark > *vert.mark ? 1 : (*parent_mark < *vert.mark ? -1 : 0);
        if (d == 0 || (direction != 0 && d != direction)) {
            throw StructuralError("time marks are not strictly monotone toward the root at vertex " +
                                  std::to_string(v));
        }
        direction = d;
    }
    return tree;
}

}  // namespace coaltree::treecore
