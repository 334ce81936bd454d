#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "coaltree/errors.hpp"
#include "coaltree/hortonode/export.hpp"
#include "coaltree/hortonode/functional.hpp"

using namespace coaltree;
using namespace coaltree::hortonode;

namespace {

// Reference values from an independent 25-digit Taylor-series ODE solve.
constexpr double kN4 = 0.03604231171520110650;
constexpr double kH3AtOne = 13.965009895570875748;
constexpr double kGamma2 = 0.30035983367227374020;
constexpr double kCoalescentT12 = 0.79179207419798767042;
constexpr double kPrunedT12 = 0.81959563628555275570;

const HSolution& solution() {
    static const HSolution sol = solve_h_system(SolverConfig{});
    return sol;
}

const GSolution& g_solution() {
    static const GSolution g = solve_g_system(12, 1e4);
    return g;
}

}  // namespace

TEST_CASE("Dormand-Prince integrator") {
    SUBCASE("exponential growth and dense output") {
        const OdeRhs rhs = [](double, std::span<const double> y, std::span<double> dy) { dy[0] = y[0]; };
        const double y0[] = {1.0};
        IntegratorOptions opt;
        const auto tr = integrate_dopri5(rhs, 0.0, 1.0, y0, opt);
        CHECK(tr.back() == 1.0);
        CHECK(tr.state(tr.size() - 1)[0] == doctest::Approx(std::exp(1.0)).epsilon(1e-9));
        double worst = 0.0;
        for (int i = 0; i <= 1000; ++i) {
            const double x = i / 1000.0;
            worst = std::max(worst, std::abs(tr.evaluate(x, 0) / std::exp(x) - 1.0));
        }
        CHECK(worst < 1e-9);
    }
    SUBCASE("oscillator") {
        const OdeRhs rhs = [](double, std::span<const double> y, std::span<double> dy) {
            dy[0] = y[1];
            dy[1] = -y[0];
        };
        const double y0[] = {0.0, 1.0};
        IntegratorOptions opt;
        opt.rtol = opt.atol = 1e-12;
        const auto tr = integrate_dopri5(rhs, 0.0, 10.0, y0, opt);
        double out[2];
        tr.evaluate(7.3, out);
        CHECK(out[0] == doctest::Approx(std::sin(7.3)).epsilon(1e-9));
        CHECK(out[1] == doctest::Approx(std::cos(7.3)).epsilon(1e-9));
        CHECK_THROWS_AS(tr.evaluate(10.5, 0), DomainError);
    }
    SUBCASE("step cap is honoured") {
        const OdeRhs rhs = [](double, std::span<const double>, std::span<double> dy) { dy[0] = 1.0; };
        const double y0[] = {0.0};
        IntegratorOptions opt;
        opt.step_cap = [](double) { return 0.01; };
        const auto tr = integrate_dopri5(rhs, 0.0, 1.0, y0, opt);
        const auto grid = tr.grid();
        for (std::size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] - grid[i - 1] <= 0.01 + 1e-15);
    }
    SUBCASE("stiff problem with a large minimum step fails") {
        const OdeRhs rhs = [](double x, std::span<const double> y, std::span<double> dy) {
            dy[0] = -1e8 * (y[0] - std::cos(x));
        };
        const double y0[] = {0.0};
        IntegratorOptions opt;
        opt.min_step = 1e-3;
        CHECK_THROWS_AS(integrate_dopri5(rhs, 0.0, 1.0, y0, opt), SolverError);
    }
}

TEST_CASE("h-system closed forms") {
    const auto& sol = solution();
    double worst = 0.0;
    for (std::size_t i = 0; i < sol.grid().size(); ++i) {
        const double x = sol.grid()[i];
        CHECK(sol.at(1, i) == 1.0);
        CHECK(sol.at(0, i) == 0.0);
        worst = std::max(worst, std::abs(sol.at(2, i) / ((1.0 + std::exp(2.0 * x)) / 2.0) - 1.0));
    }
    CHECK(worst < 1e-8);
    CHECK(sol.at_one(2) == doctest::Approx(4.1945280495).epsilon(1e-10));
    CHECK(sol.at_one(3) == doctest::Approx(kH3AtOne).epsilon(1e-10));
    CHECK(sol(2, 0.5) == doctest::Approx((1.0 + std::exp(1.0)) / 2.0).epsilon(1e-10));
    CHECK_THROWS_AS(sol(13, 0.5), DomainError);
    CHECK_THROWS_AS(sol(2, 1.0), DomainError);
}

TEST_CASE("solver config validation") {
    SolverConfig c;
    c.max_order = 1;
    CHECK_THROWS_AS(solve_h_system(c), DomainError);
    c = SolverConfig{};
    c.epsilon = 0.1;
    CHECK_THROWS_AS(solve_h_system(c), DomainError);
    c = SolverConfig{};
    c.min_step = 1e-14;
    CHECK_THROWS_AS(solve_h_system(c), DomainError);
}

TEST_CASE("Horton ratios") {
    const auto r = horton_ratios(solution());
    CHECK(r.at(1) == 1.0);
    CHECK(r.at(2) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    const double e2 = std::exp(2.0);
    CHECK(std::abs(r.at(3) - (e2 * e2 / 128.0 - e2 / 8.0 + 233.0 / 384.0)) < 1e-12);
    CHECK(std::abs(r.at(4) - kN4) < 1e-12);
    for (int k = 1; k < r.size(); ++k) {
        CHECK(r.ratio(k) >= 2.0);
        CHECK(r.ratio(k) <= 4.0);
    }
    CHECK(r.tail_bound <= 1e-8);
}

TEST_CASE("R estimates") {
    std::vector<double> geometric;
    for (int k = 1; k <= 10; ++k) geometric.push_back(std::pow(3.0, -(k - 1)));
    const auto g = estimate_R(geometric);
    CHECK(g.r_ratio == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(g.r_root == doctest::Approx(3.0).epsilon(1e-12));

    const auto r = estimate_R(horton_ratios(solution()).values);
    CHECK(std::abs(r.r_ratio - 3.0438279) < 1e-6);
    CHECK(std::abs(r.r_root - r.r_ratio) < 1e-4);
    CHECK_THROWS_AS(estimate_R(std::vector<double>{1.0, 0.3, 0.1}), DomainError);
    CHECK_THROWS_AS(estimate_R(std::vector<double>{1.0, 0.3, 0.0, 0.01}), DomainError);
}

TEST_CASE("gamma sequence") {
    const auto g = gamma_sequence(solution());
    CHECK(g.at(1) == doctest::Approx(2.0 / (1.0 + std::exp(2.0))).epsilon(1e-12));
    CHECK(g.at(2) == doctest::Approx(kGamma2).epsilon(1e-10));
    for (std::size_t k = 1; k < g.values.size(); ++k) CHECK(g.values[k] >= g.values[k - 1]);
    CHECK(g.warnings.empty());
    CHECK(std::abs(1.0 / g.at(9) - 3.0438279) < 2e-4);
}

TEST_CASE("Tokunaga matrices") {
    const auto& sol = solution();
    const auto coal = tokunaga_matrix(sol, 6, TreeView::coalescent);
    const auto pruned = tokunaga_matrix(sol, 6, TreeView::pruned);
    CHECK(coal.at(1, 2) == doctest::Approx(kCoalescentT12).epsilon(1e-10));
    CHECK(pruned.at(1, 2) == doctest::Approx(kPrunedT12).epsilon(1e-10));
    for (int i = 1; i < 5; ++i) {
        for (int j = i + 1; j <= 5; ++j) CHECK(pruned.at(i, j) == doctest::Approx(coal.at(i + 1, j + 1)));
    }
    CHECK_THROWS_AS(coal.at(2, 2), DomainError);
    CHECK_THROWS_AS(tokunaga_matrix(sol, 12, TreeView::pruned), DomainError);
}

TEST_CASE("g-system") {
    const auto& g = g_solution();
    for (const double t : {0.0, 0.3, 7.0, 120.0, 9999.0}) CHECK(g.g(1, t) == 2.0 / (t + 2.0));
    for (int j = 2; j <= 5; ++j) CHECK(g.g(j, 0.0) == 0.0);
    CHECK_THROWS_AS(g.g(1, 2e4), DomainError);
    CHECK_THROWS_AS(solve_g_system(4, 10.0), DomainError);

    // int g_j^2/2 is N_j.
    const auto r = horton_ratios(solution());
    for (int j = 2; j <= 4; ++j) CHECK(std::abs(g.half_square_integral(j) - r.at(j)) < 1e-6);

    const auto report = check_g_invariants(g);
    CHECK(report.all_passed());
    CHECK(report.find("g_asymptote").worst < 0.01);
    CHECK_THROWS_AS(report.find("nothing"), DomainError);
}

TEST_CASE("analytic invariants and cross-solver checks") {
    const auto& sol = solution();
    const auto report = check_h_invariants(sol);
    for (const auto& c : report.checks) {
        INFO(c.name << " worst " << c.worst << " tol " << c.tolerance);
        CHECK(c.passed);
    }
    CHECK(report.find("half_identity").worst <= 1e-6);
    const auto cross = check_cross_solvers(sol, g_solution(), 1e-9);
    for (const auto& c : cross.checks) {
        INFO(c.name << " worst " << c.worst);
        CHECK(c.passed);
    }
}

TEST_CASE("integrating-factor functional") {
    const std::size_t n = 20001;
    std::vector<double> x(n), ones(n, 1.0), h2(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = 0.99 * static_cast<double>(i) / (n - 1);
        h2[i] = (1.0 + std::exp(2.0 * x[i])) / 2.0;
    }
    const auto r = iterate_functional(x, ones);
    CHECK(r.values[0] == 1.0);
    CHECK(r.usable_count == n);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(r.values[i] / h2[i] - 1.0));
    CHECK(worst < 1e-10);
    CHECK(iterate_functional(x, h2).values[0] == 1.0);

    std::vector<double> negative = ones;
    negative[5] = -1.0;
    CHECK_THROWS_AS(iterate_functional(x, negative), DomainError);
    CHECK_THROWS_AS(iterate_functional(std::vector<double>{0.0, 0.1, 0.2}, std::vector<double>{1.0, 1.0, 1.0}),
                    DomainError);
}

TEST_CASE("general mass-order system") {
    GeneralConfig cfg;
    cfg.max_order = 3;
    cfg.max_mass = 128;
    cfg.t_max = 5.0;
    const auto sol = solve_general_smoluchowski_horton(coalescent::Kernel::constant(), cfg);
    CHECK(sol.eta(1, 1, 0.0) == 1.0);
    CHECK(sol.eta(2, 2, 0.0) == 0.0);
    CHECK(sol.lost_mass(0.0) == 0.0);
    const auto& g = g_solution();
    for (const double t : {0.0, 0.5, 1.0, 2.5, 5.0}) {
        CHECK(sol.mass_total(t) + sol.lost_mass(t) == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(sol.cluster_total(t) == doctest::Approx(2.0 / (t + 2.0)).epsilon(1e-6));
        for (int j = 1; j <= 3; ++j) CHECK(std::abs(sol.order_total(j, t) - g.eta(j, t)) < 1e-6);
    }
    CHECK(sol.horton_estimate(1) == 1.0);
    CHECK(sol.warnings().empty());

    cfg.max_mass = 16;
    cfg.t_max = 10.0;
    CHECK(!solve_general_smoluchowski_horton(coalescent::Kernel::constant(), cfg).warnings().empty());
    cfg.max_mass = 4;
    CHECK_THROWS_AS(solve_general_smoluchowski_horton(coalescent::Kernel::constant(), cfg), DomainError);
    cfg.max_mass = 8;
    cfg.t_max = 500.0;
    CHECK_THROWS_AS(solve_general_smoluchowski_horton(coalescent::Kernel::constant(), cfg), SolverError);
}

TEST_CASE("exports") {
    SolverConfig c;
    c.max_order = 4;
    const auto sol = solve_h_system(c);
    std::ostringstream out;
    write_h_csv(out, sol);
    CHECK(out.str().rfind("x,h_1,h_2,h_3,h_4\n", 0) == 0);
    const auto j = horton_summary(sol);
    CHECK(j["horton"]["rows"].size() == 4);
    CHECK(j["config"]["integrator_order"] == 5);
    CHECK(j.contains("R"));
    CHECK(to_json(tokunaga_matrix(sol, 3, TreeView::pruned))["view"] == "pruned");
}
