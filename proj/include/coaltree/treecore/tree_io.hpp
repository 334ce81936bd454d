#pragma once

#include <string>
#include <string_view>

#include "coaltree/treecore/rooted_tree.hpp"

namespace coaltree::treecore {

// Text format:
//   tree := node
//   node := "L" [":" mark] | "(" node "," node ")" [":" mark]
//   mark := decimal real
// Whitespace between tokens is ignored.

// Throws ParseError (with byte offset) on malformed input and StructuralError
// if the marks are not monotone toward the root.
RootedTree parse_tree(std::string_view text);

// Marks are written in shortest round-trip form. Throws DomainError for the
// empty tree, which has no representation.
std::string serialize_tree(const RootedTree& tree);

}  // namespace coaltree::treecore
