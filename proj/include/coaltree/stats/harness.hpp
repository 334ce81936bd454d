#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "coaltree/stats/generators.hpp"
#include "coaltree/treecore/shape.hpp"

namespace coaltree::stats {

struct BranchStats {
    std::int64_t leaves = 0;
    std::size_t replicates = 0;
    // Index k-1 for orders k = 1..(largest order seen); a replicate whose tree
    // is lower contributes N_k = 0.
    std::vector<double> mean_ratio;  // mean of N_k / N_1
    std::vector<double> se_ratio;    // standard error of that mean (sd / sqrt(reps), sd with n-1)
    std::vector<double> mean_count;  // mean of N_k
    std::vector<double> cv;          // sd(N_k) / mean(N_k); NaN where the mean is 0

    int max_order() const noexcept { return static_cast<int>(mean_ratio.size()); }
};

// DomainError unless n >= 2 and reps >= 2. Deterministic in (g, n, reps, base_seed).
BranchStats branch_statistics(Generator g, std::int64_t n, std::size_t reps, std::uint64_t base_seed,
                              unsigned threads = 0);

struct ShapeHistogram {
    std::int64_t leaves = 0;
    std::size_t total = 0;
    std::map<treecore::CanonicalShape, std::size_t> counts;

    double frequency(const treecore::CanonicalShape& shape) const;
};

inline constexpr std::int64_t kMaxHistogramLeaves = 12;

// DomainError unless 1 <= n <= 12 and reps >= 1.
ShapeHistogram shape_distribution(Generator g, std::int64_t n, std::size_t reps, std::uint64_t base_seed,
                                  unsigned threads = 0);

struct EquivalenceResult {
    double chi_square = 0.0;
    int dof = 0;
    double p_value = 1.0;
    double total_variation = 0.0;  // on the raw cells
    std::size_t pooled_cells = 0;
};

// Two-sample chi-square on a 2 x C table. Cells whose smaller expected count
// is below 5 are pooled, rarest (by combined count) first; a leftover pool
// below 5 joins the last completed one. DomainError if the leaf counts
// differ; TestUndefinedError if a histogram is empty or fewer than two cells
// survive pooling. Identical inputs give chi_square = 0 and p = 1.
EquivalenceResult equivalence_test(const ShapeHistogram& a, const ShapeHistogram& b);

struct EmpiricalTokunaga {
    std::int64_t leaves = 0;
    std::size_t replicates = 0;
    int min_i = 2;
    // Index k-1 for k = 1..; pairs (i, i+k) with i >= min_i from every tree.
    // mean = sum N_{i,i+k} / sum N_{i+k}: the tau_{i,i+k} averaged with weight
    // N_{i+k}. The plain average of tau (unweighted_mean) gives a top-of-tree
    // pair, where N_j is 1 or 2, the same say as a pair with thousands of
    // branches, and is visibly biased at N = 2^14.
    std::vector<double> mean;
    std::vector<double> se;  // ratio-estimator standard error over trees
    std::vector<double> unweighted_mean;
    std::vector<std::size_t> samples;  // number of (tree, i) pairs
};
// DomainError unless n >= 2, reps >= 1 and min_i >= 1.
EmpiricalTokunaga empirical_tokunaga(Generator g, std::int64_t n, std::size_t reps, std::uint64_t base_seed,
                                     int min_i = 2, unsigned threads = 0);

// Pools the tau_{i,i+k} of given trees the same way (used for fixed inputs).
EmpiricalTokunaga pooled_tokunaga(const std::vector<treecore::RootedTree>& trees, int min_i = 2);

}  // namespace coaltree::stats
