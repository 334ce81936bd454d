#include "coaltree/stats/generators.hpp"

#include "coaltree/coalescent/simulate.hpp"
#include "coaltree/errors.hpp"
#include "coaltree/levelset/series.hpp"

namespace coaltree::stats {

Generator parse_generator(std::string_view name) {
    if (name == "kingman") return Generator::kingman;
    if (name == "whitenoise") return Generator::whitenoise;
    if (name == "fragmentation") return Generator::fragmentation;
    if (name == "comb") return Generator::comb;
    throw DomainError("unknown generator '" + std::string(name) + "'");
}

std::string generator_name(Generator g) {
    switch (g) {
        case Generator::kingman:
            return "kingman";
        case Generator::whitenoise:
            return "whitenoise";
        case Generator::fragmentation:
            return "fragmentation";
        case Generator::comb:
            return "comb";
    }
    return "unknown";
}

treecore::RootedTree comb_tree(std::int64_t n) {
    if (n < 1) throw DomainError("comb needs at least one leaf");
    treecore::TreeBuilder builder;
    treecore::VertexId spine = builder.add_leaf();
    for (std::int64_t i = 1; i < n; ++i) spine = builder.add_internal(spine, builder.add_leaf());
    return std::move(builder).build();
}

treecore::RootedTree generate_tree(Generator g, std::int64_t n, Rng& rng) {
    switch (g) {
        case Generator::kingman:
            return coalescent::simulate_kingman(n, rng).tree;
        case Generator::whitenoise: {
            if (n < 2) throw DomainError("white-noise trees need N >= 2");
            const levelset::Series w =
                levelset::sample_white_noise(static_cast<std::size_t>(n - 1), levelset::NoiseDistribution::uniform01, rng);
            return levelset::level_set_tree(levelset::extend_white_noise(w));
        }
        case Generator::fragmentation:
            return coalescent::simulate_uniform_fragmentation(n, rng);
        case Generator::comb:
            return comb_tree(n);
    }
    throw DomainError("unknown generator");
}

}  // namespace coaltree::stats
