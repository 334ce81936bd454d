#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "coaltree/hortonode/integrator.hpp"

namespace coaltree::hortonode {

struct SolverConfig {
    int max_order = 12;        // K: h_1..h_K are solved
    double epsilon = 1e-8;     // domain is [0, 1 - epsilon]
    double tolerance = 1e-13;  // local error tolerance (relative and absolute)
    double min_step = 1e-12;   // delta_min
    double refinement = 0.05;  // step <= max(delta_min, refinement * (1 - x))
    double max_step = 1e-2;

    // DomainError unless K >= 2, 0 < epsilon <= 1e-6, min_step >= 1e-12, ...
    void validate() const;
};

// Integrator order of the h-system solve.
inline constexpr int kIntegratorOrder = 5;

// Integral over [0, 1 - epsilon] plus the estimated contribution of
// [1 - epsilon, 1]; `tail_bound` bounds that contribution's error.
struct Quadrature {
    double value = 0.0;
    double tail = 0.0;
    double tail_bound = 0.0;
};

// h_0..h_K on [0, 1 - epsilon] with the solver grid kept for quadrature.
class HSolution {
public:
    // `at_one` holds h_0(1)..h_K(1): the h_k equations are regular at x = 1
    // (only the envelope 1/(1-x) blows up), so the last segment is stepped too.
    HSolution(SolverConfig config, DenseTrajectory trajectory, std::vector<double> at_one);

    const SolverConfig& config() const noexcept { return config_; }
    int max_order() const noexcept { return config_.max_order; }
    double right_end() const noexcept { return 1.0 - config_.epsilon; }
    std::span<const double> grid() const noexcept { return trajectory_.grid(); }
    const DenseTrajectory& trajectory() const noexcept { return trajectory_; }

    // h_k at grid point i; h_0 = 0 and h_1 = 1.
    double at(int k, std::size_t i) const;
    // h_k(x) for x in [0, 1 - epsilon]; DomainError for k outside 0..K.
    double operator()(int k, double x) const;
    // h_0(x)..h_K(x) written to out (size K + 1).
    void evaluate_all(double x, std::span<double> out) const;
    // h_k(1).
    double at_one(int k) const;

    // Integrand f(x, {h_0(x), .., h_K(x)}), integrated by 5-point Gauss-Legendre
    // on every step of the solver grid. The tail over [1 - epsilon, 1] is the
    // trapezoid of f(1 - epsilon) and f(1); its reported error bound is the
    // crude epsilon * sup|f|, with sup|f| given by the caller.
    using Integrand = std::function<double(double, std::span<const double>)>;
    Quadrature integrate(const Integrand& f, double integrand_bound = 1.0) const;

private:
    SolverConfig config_;
    DenseTrajectory trajectory_;
    std::vector<double> at_one_;
};

// Solves h_{k+1}' = 2 h_k h_{k+1} - h_k^2, h_k(0) = 1, for k = 1..K-1 with
// h_1 = 1; the system is lower triangular and is stepped jointly.
// Throws DomainError for an invalid config and SolverError on failure.
HSolution solve_h_system(const SolverConfig& config);

}  // namespace coaltree::hortonode
