#pragma once

#include <string>
#include <vector>

#include "coaltree/coalescent/kernel.hpp"
#include "coaltree/hortonode/integrator.hpp"

namespace coaltree::hortonode {

struct GeneralConfig {
    int max_order = 4;      // J: orders 1..J tracked separately, higher orders pooled
    int max_mass = 512;     // M: clusters heavier than M leave for the lost-mass sink
    double t_max = 200.0;
    double tolerance = 1e-9;
    double lost_mass_warning = 1e-3;  // warn above this lost fraction; fail above 0.5

    // DomainError unless J >= 1, M >= 2^J, t_max > 0, tolerance in (0, 1e-3).
    void validate() const;
};

// eta_{j,k}(t) for orders j = 1..J plus a pooled class J+1 for orders above J,
// masses k = 1..M, the lost mass, and the running count of created order-j
// clusters (j = 2..J+1).
class GeneralSolution {
public:
    GeneralSolution(GeneralConfig config, DenseTrajectory trajectory, std::vector<std::string> warnings);

    const GeneralConfig& config() const noexcept { return config_; }
    const DenseTrajectory& trajectory() const noexcept { return trajectory_; }
    const std::vector<std::string>& warnings() const noexcept { return warnings_; }

    // Order index j in 1..J+1 (J+1 = all orders above J), mass k in 1..M.
    double eta(int j, int k, double t) const;
    // sum over k of eta_{j,k}(t).
    double order_total(int j, double t) const;
    // sum over j of eta_{j,k}(t) summed over k: the cluster count per N.
    double cluster_total(double t) const;
    // sum of k eta_{j,k}(t).
    double mass_total(double t) const;
    double lost_mass(double t) const;
    // N_j estimate: 1 for j = 1, otherwise the number of order-j clusters
    // created by t_max (order-(j-1) pairs, including those that overflow M).
    double horton_estimate(int j) const;

private:
    std::size_t slot(int j, int k) const;

    GeneralConfig config_;
    DenseTrajectory trajectory_;
    std::vector<std::string> warnings_;
};

// Mass-and-order rate equations with kernel K: a pair of clusters (a, k1),
// (b, k2) merges at rate K(k1, k2) eta_{a,k1} eta_{b,k2} (halved within a
// class) into order a+1 if a = b, else max(a, b), and mass k1 + k2.
// Throws DomainError for an invalid config or a kernel tabulated below M,
// SolverError if more than half the mass is lost.
GeneralSolution solve_general_smoluchowski_horton(const coalescent::Kernel& kernel, const GeneralConfig& config);

}  // namespace coaltree::hortonode
