#pragma once

#include <string>

#include "coaltree/treecore/rooted_tree.hpp"

namespace coaltree::treecore {

// Embedding-free text key for the combinatorial shape of a tree.
//
// Leaf -> "L"; internal vertex -> "(" + a + b + ")" where a <= b are the child
// keys in plain lexicographic order, so "((LL)L)" is the 3-leaf comb. Two trees
// get the same key iff they are isomorphic as unlabeled rooted trees. The empty
// tree maps to the empty string.
using CanonicalShape = std::string;

CanonicalShape canonical_shape(const RootedTree& tree);

// Removes every leaf, then collapses vertices left with a single child.
// A single leaf prunes to the empty tree.
RootedTree prune(const RootedTree& tree);

// Vertices at depth < n (root has depth 0). Depth n-1 vertices become leaves.
// Throws DomainError for n < 1.
RootedTree restrict_depth(const RootedTree& tree, int n);

}  // namespace coaltree::treecore
