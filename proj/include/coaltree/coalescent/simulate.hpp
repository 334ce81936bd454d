#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "coaltree/coalescent/kernel.hpp"
#include "coaltree/rng.hpp"
#include "coaltree/treecore/rooted_tree.hpp"

namespace coaltree::coalescent {

using treecore::VertexId;

struct MergeEvent {
    double time = 0.0;
    VertexId cluster_a = treecore::kNoVertex;  // tree vertices of the merged clusters
    VertexId cluster_b = treecore::kNoVertex;
    VertexId merged = treecore::kNoVertex;
    std::int64_t mass_a = 0;
    std::int64_t mass_b = 0;
    int order_a = 0;  // Horton-Strahler orders of the merged clusters
    int order_b = 0;

    std::int64_t mass() const noexcept { return mass_a + mass_b; }
};

// Merger history of an n-particle coalescent. Leaves carry mark 0 and every
// internal vertex the time of its merge.
struct CoalescentTrajectory {
    std::int64_t n = 0;
    std::vector<MergeEvent> events;
    treecore::RootedTree tree;
};

// Kingman's n-coalescent with the 1/n time scaling: every pair of clusters
// merges at rate 1/n, so with m clusters left the next merge comes after an
// Exp(m(m-1)/(2n)) wait and joins a uniformly chosen pair.
// Throws DomainError for n < 1.
CoalescentTrajectory simulate_kingman(std::int64_t n, Rng& rng);
CoalescentTrajectory simulate_kingman(std::int64_t n, std::uint64_t seed);

struct GeneralOptions {
    // Multiply the kernel by 1/n (the Kingman convention for a constant kernel).
    bool scale_by_n = false;
};

// Exact (Gillespie) simulation for an arbitrary kernel: the waiting time is
// exponential with the summed pair rate and the pair is drawn proportionally
// to its rate. Throws DomainError if the kernel is undefined at a mass <= n.
CoalescentTrajectory simulate_general(std::int64_t n, const Kernel& kernel, Rng& rng, GeneralOptions options = {});
CoalescentTrajectory simulate_general(std::int64_t n, const Kernel& kernel, std::uint64_t seed,
                                      GeneralOptions options = {});

// Top-down uniform mass splitting: mass m -> (x, m - x) with x uniform on
// 1..m-1. Combinatorial tree, no marks.
treecore::RootedTree simulate_uniform_fragmentation(std::int64_t n, Rng& rng);
treecore::RootedTree simulate_uniform_fragmentation(std::int64_t n, std::uint64_t seed);

// Relative cluster counts as right-continuous step functions of time.
// Step s covers [times[s], times[s+1]) (the last step extends to infinity);
// step 0 starts at t = 0 with every cluster of order 1.
class OrderCountSteps {
public:
    OrderCountSteps(std::int64_t n, std::vector<double> times, int max_order, std::vector<std::int64_t> counts);

    std::size_t step_count() const noexcept { return times_.size(); }
    double time(std::size_t step) const { return times_.at(step); }
    int max_order() const noexcept { return max_order_; }

    // eta_{j,N} on step s; zero for j outside 1..max_order.
    double eta(std::size_t step, int j) const;
    // eta_(N) = clusters / N on step s.
    double eta_total(std::size_t step) const;
    std::int64_t count(std::size_t step, int j) const;

    // Step containing time t >= 0.
    std::size_t step_at(double t) const;

private:
    std::int64_t n_;
    std::vector<double> times_;
    int max_order_;
    std::vector<std::int64_t> counts_;  // step * max_order + (j - 1)
};

// Replays the merges: a same-order merge takes two clusters from order j and
// adds one of order j+1; a cross-order merge removes one cluster of the lower
// order.
OrderCountSteps order_count_trajectories(const CoalescentTrajectory& trajectory);

// Columns: event_index,time,mass_a,mass_b,order_a,order_b
void write_trajectory_csv(std::ostream& out, const CoalescentTrajectory& trajectory);

}  // namespace coaltree::coalescent
