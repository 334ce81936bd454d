#pragma once

#include <string>
#include <vector>

#include "coaltree/hortonode/g_system.hpp"
#include "coaltree/hortonode/h_system.hpp"

namespace coaltree::hortonode {

struct InvariantCheck {
    std::string name;
    bool passed = false;
    double worst = 0.0;      // worst observed discrepancy (or margin, see detail)
    double tolerance = 0.0;
    std::string detail;
};

struct InvariantReport {
    std::vector<InvariantCheck> checks;

    bool all_passed() const;
    // DomainError if absent.
    const InvariantCheck& find(const std::string& name) const;
};

// Max relative difference over the grid against a re-solve at tolerance / 100.
double global_error_estimate(const HSolution& sol);

// envelope, half_identity, sandwich, exponent_bounds, gamma_monotone.
InvariantReport check_h_invariants(const HSolution& sol, double identity_tolerance = 1e-6);

// g_asymptote: |t g_j(t) / 2 - 1| <= 1% at t = t_max for j <= max_j.
// g_integral_identity: int g_j^2/2 = int g_j g_{j+1} on [0, inf), within the
// uncertainty of the two tail estimates, 2 (|a_j - 2| + |a_{j+1} - 2|) / t_max
// with a_j = t_max g_j(t_max), plus 1e-9.
InvariantReport check_g_invariants(const GSolution& g, int max_j = 5);

// change_of_variables: h_k from g_{k+1} vs the h-system, relative, on x <= x_max.
// functional_iteration: H h_k vs h_{k+1} for k <= max_k on a uniform grid.
InvariantReport check_cross_solvers(const HSolution& sol, const GSolution& g, double tolerance, int max_k = 6,
                                    double x_max = 0.99, std::size_t functional_points = 100000);

}  // namespace coaltree::hortonode
