#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "coaltree/rng.hpp"
#include "coaltree/treecore/rooted_tree.hpp"

namespace coaltree::stats {

// Random N-leaf trees. `comb` is deterministic (every internal vertex has a
// leaf child) and only serves as a deliberately wrong model in power checks.
enum class Generator { kingman, whitenoise, fragmentation, comb };

// "kingman", "whitenoise", "fragmentation", "comb"; DomainError otherwise.
Generator parse_generator(std::string_view name);
std::string generator_name(Generator g);

// whitenoise: level-set tree of the extended white noise built from N-1
// uniform values. Throws DomainError for n < 1 (n < 2 for whitenoise).
treecore::RootedTree generate_tree(Generator g, std::int64_t n, Rng& rng);

treecore::RootedTree comb_tree(std::int64_t n);

}  // namespace coaltree::stats
