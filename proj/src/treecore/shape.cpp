#include "coaltree/treecore/shape.hpp"

#include <utility>
#include <vector>

#include "coaltree/errors.hpp"

namespace coaltree::treecore {

CanonicalShape canonical_shape(const RootedTree& tree) {
    if (tree.empty()) return {};
    std::vector<std::string> key(tree.size());
    for (VertexId v : tree.postorder()) {
        const Vertex& vert = tree.vertex(v);
        if (vert.is_leaf()) {
            key[v] = "L";
            continue;
        }
        std::string& a = key[vert.left];
        std::string& b = key[vert.right];
        std::string joined;
        joined.reserve(a.size() + b.size() + 2);
        joined += '(';
        if (b < a) {
            joined += b;
            joined += a;
        } else {
            joined += a;
            joined += b;
        }
        joined += ')';
        key[v] = std::move(joined);
        std::string().swap(a);
        std::string().swap(b);
    }
    return std::move(key[tree.root()]);
}

RootedTree prune(const RootedTree& tree) {
    if (tree.empty()) return {};
    TreeBuilder builder;
    std::vector<VertexId> image(tree.size(), kNoVertex);
    for (VertexId v : tree.postorder()) {
        const Vertex& vert = tree.vertex(v);
        if (vert.is_leaf()) continue;
        const VertexId a = image[vert.left];
        const VertexId b = image[vert.right];
        if (a == kNoVertex && b == kNoVertex) {
            image[v] = builder.add_leaf(vert.mark);
        } else if (a == kNoVertex || b == kNoVertex) {
            image[v] = a == kNoVertex ? b : a;
        } else {
            image[v] = builder.add_internal(a, b, vert.mark);
        }
    }
    return std::move(builder).build();
}

RootedTree restrict_depth(const RootedTree& tree, int n) {
    if (n < 1) throw DomainError("restriction depth must be at least 1");
    if (tree.empty()) return {};
    TreeBuilder builder;
    // (source vertex, depth); build top-down then attach children.
    std::vector<std::pair<VertexId, int>> stack{{tree.root(), 0}};
    std::vector<VertexId> image(tree.size(), kNoVertex);
    std::vector<VertexId> order;
    while (!stack.empty()) {
        auto [u, depth] = stack.back();
        stack.pop_back();
        image[u] = builder.add_vertex(tree.vertex(u).mark);
        order.push_back(u);
        const Vertex& vert = tree.vertex(u);
        if (!vert.is_leaf() && depth + 1 < n) {
            stack.emplace_back(vert.right, depth + 1);
            stack.emplace_back(vert.left, depth + 1);
        }
    }
    for (VertexId u : order) {
        const Vertex& vert = tree.vertex(u);
        if (!vert.is_leaf() && image[vert.left] != kNoVertex) {
            builder.set_children(image[u], {image[vert.left], image[vert.right]});
        }
    }
    return std::move(builder).build();
}

}  // namespace coaltree::treecore
