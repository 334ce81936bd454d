#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "coaltree/coalescent/simulate.hpp"
#include "coaltree/hortonode/g_system.hpp"

namespace coaltree::stats {

// eta(t) = 2/(t+2), the limit of clusters / N.
inline double eta_closed_form(double t) { return 2.0 / (t + 2.0); }
// Integral of eta^2/2 over [K, inf).
inline double closed_form_tail(double horizon) { return 2.0 / (horizon + 2.0); }

// L2[0, horizon] distance between clusters/N and 2/(t+2), exact on every
// constant piece of the step function.
double l2_to_closed_form(const coalescent::OrderCountSteps& steps, double horizon);

// L2[0, horizon] distance of eta_{j,N} to the ODE eta_j for j = 1..max_order,
// on the common refinement of the event times and the ODE grid with 5-point
// Gauss-Legendre on every piece. DomainError if the ODE does not reach the
// horizon or lacks order max_order + 1.
std::vector<double> l2_to_orders(const coalescent::OrderCountSteps& steps, const hortonode::GSolution& ode,
                                 double horizon, int max_order);

struct HydroReport {
    std::int64_t leaves = 0;
    std::size_t replicates = 0;
    double horizon = 0.0;
    double mean_l2_total = 0.0;  // clusters/N vs 2/(t+2)
    double se_l2_total = 0.0;
    std::vector<double> mean_l2_order;  // index j-1
};

// Kingman replicates; DomainError unless n >= 2, reps >= 1, horizon > 0.
HydroReport hydrodynamic_check(std::int64_t n, std::size_t reps, std::uint64_t base_seed,
                               const hortonode::GSolution& ode, double horizon, int max_order, unsigned threads = 0);

}  // namespace coaltree::stats
