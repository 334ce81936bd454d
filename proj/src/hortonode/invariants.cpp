#include "coaltree/hortonode/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "coaltree/errors.hpp"
#include "coaltree/hortonode/functional.hpp"
#include "coaltree/hortonode/ratios.hpp"

namespace coaltree::hortonode {

bool InvariantReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const InvariantCheck& c) { return c.passed; });
}

const InvariantCheck& InvariantReport::find(const std::string& name) const {
    for (const auto& c : checks) {
        if (c.name == name) return c;
    }
    throw DomainError("no invariant named " + name);
}

namespace {

std::string format(const char* fmt, double a, double b = 0.0) {
    char buffer[160];
    std::snprintf(buffer, sizeof buffer, fmt, a, b);
    return buffer;
}

// ||1 - h_k / h||^2 over [0, 1].
double distance_to_envelope(const HSolution& sol, int k) {
    const auto idx = static_cast<std::size_t>(k);
    return sol.integrate([idx](double x, std::span<const double> h) {
        const double d = 1.0 - h[idx] * (1.0 - x);
        return d * d;
    }).value;
}

}  // namespace

double global_error_estimate(const HSolution& sol) {
    SolverConfig finer = sol.config();
    finer.tolerance /= 100.0;
    const HSolution reference = solve_h_system(finer);
    double worst = 0.0;
    const auto grid = sol.grid();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (int k = 2; k <= sol.max_order(); ++k) {
            worst = std::max(worst, std::abs(sol.at(k, i) / reference(k, grid[i]) - 1.0));
        }
    }
    return worst;
}

InvariantReport check_h_invariants(const HSolution& sol, double identity_tolerance) {
    InvariantReport report;
    const int K = sol.max_order();
    // h_K agrees with 1/(1-x) to O(x^K), far below the global error, so the
    // comparisons get a slack of ten times the measured global error.
    const double slack = std::max(10.0 * global_error_estimate(sol), 10.0 * sol.config().tolerance);

    {
        InvariantCheck c{"envelope", true, 0.0, slack, ""};
        const auto grid = sol.grid();
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double envelope = 1.0 / (1.0 - grid[i]);
            double previous = 0.0;  // h_0
            for (int k = 1; k <= K; ++k) {
                const double hk = sol.at(k, i);
                const double violation = (previous - hk) / std::max(1.0, hk);
                if (violation > c.worst) c.worst = violation;
                previous = hk;
            }
            const double top = (previous - envelope) / envelope;
            if (top > c.worst) c.worst = top;
        }
        c.passed = c.worst <= slack;
        c.detail = "max relative violation of 0 <= h_k <= h_{k+1} <= 1/(1-x) over the grid; tolerance is 10x the "
                   "global error estimate";
        report.checks.push_back(c);
    }

    {
        InvariantCheck c{"half_identity", true, 0.0, identity_tolerance, ""};
        for (int k = 0; k < K; ++k) {
            const double lhs = std::sqrt(distance_to_envelope(sol, k + 1));
            const auto a = static_cast<std::size_t>(k + 1), b = static_cast<std::size_t>(k);
            const double rhs = std::sqrt(sol.integrate([a, b](double x, std::span<const double> h) {
                const double d = (h[a] - h[b]) * (1.0 - x);
                return d * d;
            }).value);
            c.worst = std::max(c.worst, std::abs(lhs - rhs));
        }
        c.passed = c.worst <= identity_tolerance;
        c.detail = "max |‖1 - h_{k+1}/h‖ - ‖(h_{k+1} - h_k)/h‖|";
        report.checks.push_back(c);
    }

    {
        // ||1 - h_{k+1}/h||^2 <= 1/h_{k+1}(1) <= ||1 - h_k/h||^2; worst is the
        // smallest margin (negative on failure).
        InvariantCheck c{"sandwich", true, 0.0, sol.config().epsilon, ""};
        double margin = INFINITY;
        std::vector<double> norm(static_cast<std::size_t>(K) + 1);
        for (int k = 0; k <= K; ++k) norm[static_cast<std::size_t>(k)] = distance_to_envelope(sol, k);
        for (int k = 0; k < K; ++k) {
            const double middle = 1.0 / sol.at_one(k + 1);
            margin = std::min(margin, middle - norm[static_cast<std::size_t>(k + 1)]);
            margin = std::min(margin, norm[static_cast<std::size_t>(k)] - middle);
        }
        c.worst = margin;
        c.passed = margin >= -c.tolerance;
        c.detail = "smallest margin of the two inequalities over k = 0..K-1";
        report.checks.push_back(c);
    }

    {
        const HortonRatios ratios = horton_ratios(sol);
        InvariantCheck c{"exponent_bounds", true, 0.0, 0.0, ""};
        double lo = INFINITY, hi = -INFINITY;
        for (int k = 1; k < ratios.size(); ++k) {
            lo = std::min(lo, ratios.ratio(k));
            hi = std::max(hi, ratios.ratio(k));
        }
        c.passed = lo >= 2.0 && hi <= 4.0;
        c.worst = std::min(lo - 2.0, 4.0 - hi);
        c.detail = format("n_k within [%.10f, %.10f]", lo, hi);
        report.checks.push_back(c);
    }

    {
        const GammaSequence gamma = gamma_sequence(sol);
        InvariantCheck c{"gamma_monotone", true, 0.0, 0.0, ""};
        double worst = 0.0;
        for (std::size_t k = 1; k < gamma.values.size(); ++k) {
            worst = std::max(worst, gamma.values[k - 1] - gamma.values[k]);
        }
        c.worst = worst;
        c.passed = worst <= 0.0;
        c.detail = gamma.warnings.empty() ? "gamma_k nondecreasing" : gamma.warnings.front();
        report.checks.push_back(c);
    }
    return report;
}

InvariantReport check_g_invariants(const GSolution& g, int max_j) {
    InvariantReport report;
    const double T = g.t_max();
    const int top = std::min(max_j, g.max_order());
    {
        InvariantCheck c{"g_asymptote", true, 0.0, 0.01, ""};
        for (int j = 1; j <= top; ++j) c.worst = std::max(c.worst, std::abs(T * g.g(j, T) / 2.0 - 1.0));
        c.passed = c.worst <= c.tolerance;
        c.detail = format("max |t g_j(t)/2 - 1| at t = %.0f", T);
        report.checks.push_back(c);
    }
    {
        InvariantCheck c{"g_integral_identity", true, 0.0, 0.0, ""};
        bool ok = true;
        for (int j = 1; j < g.max_order() && j <= top; ++j) {
            const double diff = std::abs(g.half_square_integral(j) - g.cross_integral(j));
            const double aj = T * g.g(j, T), ak = T * g.g(j + 1, T);
            const double allowed = 2.0 * (std::abs(aj - 2.0) + std::abs(ak - 2.0)) / T + 1e-9;
            ok = ok && diff <= allowed;
            if (diff > c.worst) {
                c.worst = diff;
                c.tolerance = allowed;
            }
        }
        c.passed = ok;
        c.detail = "max |int g_j^2/2 - int g_j g_{j+1}| (tolerance of that j)";
        report.checks.push_back(c);
    }
    return report;
}

InvariantReport check_cross_solvers(const HSolution& sol, const GSolution& g, double tolerance, int max_k,
                                    double x_max, std::size_t functional_points) {
    InvariantReport report;
    const int top = std::min(max_k, std::min(sol.max_order() - 1, g.max_order() - 1));
    {
        InvariantCheck c{"change_of_variables", true, 0.0, tolerance, ""};
        const double limit = std::min(x_max, g.max_h_argument());
        for (const double x : sol.grid()) {
            if (x > limit) break;
            for (int k = 1; k <= top; ++k) {
                c.worst = std::max(c.worst, std::abs(g.h_from_g(k, x) / sol(k, x) - 1.0));
            }
        }
        c.passed = c.worst <= tolerance;
        c.detail = format("max relative difference on [0, %.4f]", limit);
        report.checks.push_back(c);
    }
    {
        InvariantCheck c{"functional_iteration", true, 0.0, tolerance, ""};
        std::vector<double> x(functional_points + 1), f(functional_points + 1);
        for (std::size_t i = 0; i <= functional_points; ++i) {
            x[i] = sol.right_end() * static_cast<double>(i) / static_cast<double>(functional_points);
        }
        double usable = 1.0;
        for (int k = 1; k <= top; ++k) {
            for (std::size_t i = 0; i < x.size(); ++i) f[i] = sol(k, x[i]);
            const FunctionalResult next = iterate_functional(x, f);
            usable = std::min(usable, next.max_usable_x);
            for (std::size_t i = 0; i < next.usable_count; ++i) {
                c.worst = std::max(c.worst, std::abs(next.values[i] / sol(k + 1, x[i]) - 1.0));
            }
        }
        c.passed = c.worst <= tolerance;
        c.detail = format("max relative difference, usable up to x = %.10f", usable);
        report.checks.push_back(c);
    }
    return report;
}

}  // namespace coaltree::hortonode
