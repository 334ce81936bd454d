#pragma once

#include <span>
#include <string>
#include <vector>

#include "coaltree/hortonode/h_system.hpp"

namespace coaltree::hortonode {

struct HortonRatios {
    std::vector<double> values;  // values[k-1] = N_k, k = 1..K
    double tail_bound = 0.0;     // bound on each value's [1-eps, 1] error

    double at(int k) const;      // N_k
    double ratio(int k) const;   // n_k = N_k / N_{k+1}, k = 1..K-1
    int size() const noexcept { return static_cast<int>(values.size()); }
};

// N_k = integral over [0,1] of (1 - h_{k-1}(x)(1-x))^2, k = 1..K.
HortonRatios horton_ratios(const HSolution& sol);

// coalescent: T_ij = N_ij / N_j, N_ij = 2 * integral (h_i - h_{i-1})(h_j - h_{j-1})(1-x)^2.
// pruned: T_ij of the pruned tree, i.e. the coalescent T_{i+1,j+1}; this is
// the indexing under which the familiar 0.8196, 0.5687, ... row appears.
enum class TreeView { coalescent, pruned };

struct TokunagaMatrix {
    int max_order = 0;  // j ranges over 2..max_order
    TreeView view = TreeView::coalescent;
    std::vector<double> values;  // row-major (i-1) * max_order + (j-1), NaN unless i < j
    double tail_bound = 0.0;

    // DomainError unless 1 <= i < j <= max_order.
    double at(int i, int j) const;
};

// DomainError if the requested orders need more than the solved h_K.
TokunagaMatrix tokunaga_matrix(const HSolution& sol, int max_order, TreeView view);

struct GammaSequence {
    std::vector<double> values;            // values[k-1] = h_k(1) / h_{k+1}(1), k = 1..K-1
    std::vector<double> values_at_cutoff;  // same ratio at x = 1 - eps
    double r_via_gamma = 0.0;              // 1 / last gamma
    std::vector<std::string> warnings;     // monotonicity violations (either sequence)

    double at(int k) const;
};

// Near x = 1, h_{k+1} varies on the scale 1 / (2 h_k(1)), so for k around 10
// the cutoff ratio is visibly off (~1e-4 relative at eps = 1e-8); `values`
// uses the regular continuation to x = 1.
GammaSequence gamma_sequence(const HSolution& sol);

struct REstimate {
    double r_ratio = 0.0;     // N_{K-1} / N_K
    double r_root_raw = 0.0;  // N_K^(-1/K)
    double r_root = 0.0;      // root sequence extrapolated linearly in 1/k (last three points)
    double difference = 0.0;  // |r_root - r_ratio|
};

// Needs at least 4 values, all positive (DomainError otherwise).
REstimate estimate_R(std::span<const double> horton_values);

}  // namespace coaltree::hortonode
