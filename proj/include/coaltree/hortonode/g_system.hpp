#pragma once

#include <vector>

#include "coaltree/hortonode/integrator.hpp"

namespace coaltree::hortonode {

// g_1(t) = 2/(t+2) and g_{j+1}' = g_j^2/2 - g_j g_{j+1}, g_j(0) = 0 (j >= 2),
// on [0, t_max], together with the running integrals of g_j^2/2 and g_j g_{j+1}.
class GSolution {
public:
    GSolution(int max_order, double t_max, DenseTrajectory trajectory);

    int max_order() const noexcept { return max_order_; }
    double t_max() const noexcept { return t_max_; }
    const DenseTrajectory& trajectory() const noexcept { return trajectory_; }

    // g_j(t), j = 1..K; g_1 is the closed form. DomainError outside [0, t_max].
    double g(int j, double t) const;
    // eta_j(t) = g_j(t) - g_{j+1}(t), j = 1..K-1.
    double eta(int j, double t) const;

    // Integral of g_j^2/2 over [0, t_max] plus the tail estimate from
    // t g_j(t) ~ const: (t_max g_j(t_max))^2 / (2 t_max). Equals N_j for j >= 2.
    double half_square_integral(int j) const;
    double half_square_tail(int j) const;
    // Integral of g_j g_{j+1} over [0, inf), j = 1..K-1, same tail treatment.
    double cross_integral(int j) const;
    double cross_tail(int j) const;

    // h_k(x) = 1/(1-x) - (1-x)^-2 g_{k+1}(2x/(1-x)), k = 0..K-1, for
    // x <= max_h_argument() (the image of t_max).
    double h_from_g(int k, double x) const;
    double max_h_argument() const noexcept { return t_max_ / (t_max_ + 2.0); }

private:
    double raw(std::size_t component, double t) const;
    double end_value(std::size_t component) const;

    int max_order_;
    double t_max_;
    DenseTrajectory trajectory_;
};

// Throws DomainError unless K >= 2 and t_max >= 1e3; SolverError on failure.
GSolution solve_g_system(int max_order, double t_max, double tolerance = 1e-11);

}  // namespace coaltree::hortonode
