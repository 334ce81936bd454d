#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace coaltree::treecore {

using VertexId = std::int32_t;
inline constexpr VertexId kNoVertex = -1;

struct Vertex {
    VertexId parent = kNoVertex;
    VertexId left = kNoVertex;
    VertexId right = kNoVertex;
    // Time mark (coalescent time, or series value for level-set trees).
    std::optional<double> mark;

    bool is_leaf() const noexcept { return left == kNoVertex; }
};

// Finite rooted binary tree, immutable once built.
//
// Invariants (checked by TreeBuilder::build): one root, every internal vertex
// has exactly two children, no cycles, and where both ends of an edge carry a
// mark the marks change strictly and in the same direction on every edge.
// A default-constructed tree is the distinguished empty tree.
class RootedTree {
public:
    RootedTree() = default;

    static RootedTree single_leaf(std::optional<double> mark = std::nullopt);

    bool empty() const noexcept { return vertices_.empty(); }
    std::size_t size() const noexcept { return vertices_.size(); }
    std::size_t leaf_count() const noexcept { return leaf_count_; }
    VertexId root() const noexcept { return root_; }

    const Vertex& vertex(VertexId id) const { return vertices_.at(static_cast<std::size_t>(id)); }
    std::span<const Vertex> vertices() const noexcept { return vertices_; }

    // Every vertex appears after both of its children.
    std::span<const VertexId> postorder() const noexcept { return postorder_; }

    // True when every vertex carries a mark.
    bool fully_marked() const noexcept;

    // Copy of the subtree rooted at `v` (marks kept).
    RootedTree subtree(VertexId v) const;

    // Same tree with the children of `v` exchanged.
    RootedTree with_children_swapped(VertexId v) const;

    // Longest root-to-leaf edge count; -1 for the empty tree.
    int height() const;

private:
    friend class TreeBuilder;

    std::vector<Vertex> vertices_;
    std::vector<VertexId> postorder_;
    VertexId root_ = kNoVertex;
    std::size_t leaf_count_ = 0;
};

// Incremental construction of a RootedTree; all structural checks run in build().
class TreeBuilder {
public:
    VertexId add_vertex(std::optional<double> mark = std::nullopt);
    VertexId add_leaf(std::optional<double> mark = std::nullopt) { return add_vertex(mark); }
    VertexId add_internal(VertexId left, VertexId right, std::optional<double> mark = std::nullopt);

    // Replaces the child list of `parent`. Any count is accepted here; build()
    // rejects counts other than 0 or 2.
    void set_children(VertexId parent, std::vector<VertexId> children);
    void set_mark(VertexId v, std::optional<double> mark);

    std::size_t size() const noexcept { return marks_.size(); }

    // Throws StructuralError on unary vertices, several parents, several or no
    // roots, cycles, and non-monotone marks.
    RootedTree build() &&;

private:
    std::vector<std::vector<VertexId>> children_;
    std::vector<std::optional<double>> marks_;
};

}  // namespace coaltree::treecore
