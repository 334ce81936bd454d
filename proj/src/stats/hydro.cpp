#include "coaltree/stats/hydro.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "coaltree/errors.hpp"
#include "coaltree/stats/replicates.hpp"

namespace coaltree::stats {

double l2_to_closed_form(const coalescent::OrderCountSteps& steps, double horizon) {
    if (!(horizon > 0.0)) throw DomainError("horizon must be positive");
    double sum = 0.0;
    for (std::size_t s = 0; s < steps.step_count(); ++s) {
        const double a = steps.time(s);
        if (a >= horizon) break;
        const double b = s + 1 < steps.step_count() ? std::min(steps.time(s + 1), horizon) : horizon;
        if (b <= a) continue;
        const double c = steps.eta_total(s);
        // integral of (c - 2/(t+2))^2 over [a, b]
        sum += c * c * (b - a) - 4.0 * c * std::log((b + 2.0) / (a + 2.0)) + 4.0 * (1.0 / (a + 2.0) - 1.0 / (b + 2.0));
    }
    return std::sqrt(std::max(sum, 0.0));
}

std::vector<double> l2_to_orders(const coalescent::OrderCountSteps& steps, const hortonode::GSolution& ode,
                                 double horizon, int max_order) {
    if (!(horizon > 0.0 && horizon <= ode.t_max())) throw DomainError("ODE solution does not cover the horizon");
    if (max_order < 1 || max_order + 1 > ode.max_order()) throw DomainError("ODE solution lacks the requested orders");
    static constexpr std::array<double, 5> node = {0.0, -0.5384693101056831, 0.5384693101056831,
                                                   -0.9061798459386640, 0.9061798459386640};
    static constexpr std::array<double, 5> weight = {0.5688888888888889, 0.4786286704993665, 0.4786286704993665,
                                                     0.2369268850561891, 0.2369268850561891};
    const auto& traj = ode.trajectory();
    const auto grid = traj.grid();
    // Merge event times and ODE grid points below the horizon.
    std::vector<double> cuts;
    for (std::size_t s = 0; s < steps.step_count() && steps.time(s) < horizon; ++s) cuts.push_back(steps.time(s));
    for (double t : grid) {
        if (t >= horizon) break;
        cuts.push_back(t);
    }
    cuts.push_back(horizon);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::vector<double> sum(static_cast<std::size_t>(max_order), 0.0);
    std::vector<double> state(traj.dimension());
    std::size_t step = 0, interval = 0;
    for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
        const double a = cuts[p], b = cuts[p + 1];
        while (step + 1 < steps.step_count() && steps.time(step + 1) <= a) ++step;
        while (interval + 2 < grid.size() && grid[interval + 1] <= a) ++interval;
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (std::size_t q = 0; q < node.size(); ++q) {
            const double t = mid + half * node[q];
            traj.evaluate_in(interval, t, state);
            // state[j-2] = g_j for j >= 2; g_1 is closed form.
            double upper = eta_closed_form(t);
            for (int j = 1; j <= max_order; ++j) {
                const double next = state[static_cast<std::size_t>(j - 1)];
                const double d = steps.eta(step, j) - (upper - next);
                sum[static_cast<std::size_t>(j - 1)] += half * weight[q] * d * d;
                upper = next;
            }
        }
    }
    for (double& s : sum) s = std::sqrt(s);
    return sum;
}

HydroReport hydrodynamic_check(std::int64_t n, std::size_t reps, std::uint64_t base_seed,
                               const hortonode::GSolution& ode, double horizon, int max_order, unsigned threads) {
    if (n < 2) throw DomainError("hydrodynamic check needs N >= 2");
    if (reps < 1) throw DomainError("hydrodynamic check needs at least one replicate");
    if (!(horizon > 0.0)) throw DomainError("horizon must be positive");
    struct One {
        double total = 0.0;
        std::vector<double> orders;
    };
    const auto runs = run_replicates<One>(reps, base_seed, threads, [&](std::size_t, Rng& rng) {
        const auto steps = coalescent::order_count_trajectories(coalescent::simulate_kingman(n, rng));
        return One{l2_to_closed_form(steps, horizon), l2_to_orders(steps, ode, horizon, max_order)};
    });
    HydroReport out;
    out.leaves = n;
    out.replicates = reps;
    out.horizon = horizon;
    out.mean_l2_order.assign(static_cast<std::size_t>(max_order), 0.0);
    double ss = 0.0;
    for (const auto& r : runs) {
        out.mean_l2_total += r.total;
        for (std::size_t j = 0; j < r.orders.size(); ++j) out.mean_l2_order[j] += r.orders[j];
    }
    out.mean_l2_total /= static_cast<double>(reps);
    for (double& m : out.mean_l2_order) m /= static_cast<double>(reps);
    for (const auto& r : runs) ss += (r.total - out.mean_l2_total) * (r.total - out.mean_l2_total);
    out.se_l2_total = reps > 1 ? std::sqrt(ss / static_cast<double>(reps - 1) / static_cast<double>(reps)) : 0.0;
    return out;
}

}  // namespace coaltree::stats
