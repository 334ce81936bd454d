#include "coaltree/stats/replicates.hpp"

#include <algorithm>

namespace coaltree::stats {

unsigned resolve_threads(unsigned requested, std::size_t work) {
    unsigned n = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
    if (work < n) n = static_cast<unsigned>(std::max<std::size_t>(work, 1));
    return n;
}

}  // namespace coaltree::stats
