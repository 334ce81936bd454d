#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cmath>
#include <set>
#include <sstream>

#include "coaltree/coalescent/kernel.hpp"
#include "coaltree/coalescent/simulate.hpp"
#include "coaltree/errors.hpp"
#include "coaltree/treecore/shape.hpp"

using namespace coaltree;
using namespace coaltree::coalescent;

namespace {

const std::string kBalanced = "((LL)(LL))";

double balanced_fraction(int reps, const std::function<treecore::RootedTree(Rng&)>& make) {
    Rng rng(99);
    int balanced = 0;
    for (int r = 0; r < reps; ++r) balanced += treecore::canonical_shape(make(rng)) == kBalanced;
    return static_cast<double>(balanced) / reps;
}

}  // namespace

TEST_CASE("kernels") {
    CHECK(Kernel::constant()(3, 7) == 1.0);
    CHECK(Kernel::constant(2.5)(1, 1) == 2.5);
    CHECK(Kernel::additive()(3, 7) == 10.0);
    CHECK(Kernel::multiplicative()(3, 7) == 21.0);
    CHECK(Kernel::from_name("constant:0.5")(4, 4) == 0.5);
    CHECK(Kernel::from_name("additive")(1, 2) == 3.0);
    CHECK(Kernel::additive().scaled(0.5)(1, 1) == 1.0);
    CHECK_THROWS_AS(Kernel::from_name("gravity"), DomainError);
    CHECK_THROWS_AS(Kernel::constant()(0, 1), DomainError);
    CHECK_THROWS_AS(Kernel::tabulated({{1.0, 2.0}, {3.0, 1.0}}), DomainError);
    CHECK_THROWS_AS(Kernel::tabulated({{1.0, -1.0}, {-1.0, 1.0}}), DomainError);
    const auto t = Kernel::tabulated({{1.0, 2.0}, {2.0, 4.0}});
    CHECK(t(1, 2) == 2.0);
    CHECK(t.max_mass() == 2);
    CHECK_THROWS_AS(t(3, 1), DomainError);
}

TEST_CASE("Kingman trajectories") {
    SUBCASE("one particle") {
        const auto tr = simulate_kingman(1, 1);
        CHECK(tr.events.empty());
        CHECK(tr.tree.size() == 1);
    }
    SUBCASE("bookkeeping") {
        Rng rng(4);
        for (int rep = 0; rep < 20; ++rep) {
            const std::int64_t n = 2 + static_cast<std::int64_t>(rng.uniform_index(500));
            const auto tr = simulate_kingman(n, rng);
            REQUIRE(tr.events.size() == static_cast<std::size_t>(n - 1));
            REQUIRE(tr.tree.leaf_count() == static_cast<std::size_t>(n));
            for (std::size_t i = 1; i < tr.events.size(); ++i) REQUIRE(tr.events[i].time > tr.events[i - 1].time);
            REQUIRE(tr.events.back().mass() == n);
        }
    }
    SUBCASE("two particles merge at rate 1/2") {
        Rng rng(12);
        const int reps = 100000;
        double sum = 0.0;
        for (int r = 0; r < reps; ++r) sum += simulate_kingman(2, rng).events[0].time;
        // Exp(1/2): mean 2, sd 2.
        CHECK(std::abs(sum / reps - 2.0) < 5 * 2.0 / std::sqrt(reps));
    }
    SUBCASE("four leaves: balanced with probability 1/3") {
        const int reps = 40000;
        const double f = balanced_fraction(reps, [](Rng& r) { return simulate_kingman(4, r).tree; });
        CHECK(std::abs(f - 1.0 / 3.0) < 5 * std::sqrt(2.0 / 9.0 / reps));
    }
    SUBCASE("seeded runs repeat") {
        const auto a = simulate_kingman(300, 17);
        const auto b = simulate_kingman(300, 17);
        CHECK(treecore::canonical_shape(a.tree) == treecore::canonical_shape(b.tree));
        CHECK(a.events.back().time == b.events.back().time);
        CHECK_THROWS_AS(simulate_kingman(0, 1), DomainError);
    }
}

TEST_CASE("general kernels") {
    SUBCASE("constant kernel with 1/n scaling is Kingman") {
        const int reps = 40000;
        const double f = balanced_fraction(reps, [](Rng& r) {
            return simulate_general(4, Kernel::constant(), r, {.scale_by_n = true}).tree;
        });
        CHECK(std::abs(f - 1.0 / 3.0) < 5 * std::sqrt(2.0 / 9.0 / reps));
        Rng rng(3);
        double sum = 0.0;
        for (int r = 0; r < reps; ++r) {
            sum += simulate_general(2, Kernel::constant(), rng, {.scale_by_n = true}).events[0].time;
        }
        CHECK(std::abs(sum / reps - 2.0) < 5 * 2.0 / std::sqrt(reps));
    }
    SUBCASE("multiplicative, two particles: Exp(K(1,1))") {
        Rng rng(5);
        const int reps = 50000;
        double sum = 0.0;
        for (int r = 0; r < reps; ++r) sum += simulate_general(2, Kernel::multiplicative(), rng).events[0].time;
        CHECK(std::abs(sum / reps - 1.0) < 5.0 / std::sqrt(reps));
    }
    SUBCASE("additive, three particles: first pair uniform") {
        Rng rng(6);
        const int reps = 30000;
        std::array<int, 3> hits{};
        for (int r = 0; r < reps; ++r) {
            const auto tr = simulate_general(3, Kernel::additive(), rng);
            const auto& e = tr.events[0];
            const int lo = std::min(e.cluster_a, e.cluster_b);
            const int hi = std::max(e.cluster_a, e.cluster_b);
            REQUIRE(hi <= 2);
            ++hits[static_cast<std::size_t>(lo + hi - 1)];  // pairs (0,1), (0,2), (1,2)
        }
        for (const int h : hits) CHECK(std::abs(h / static_cast<double>(reps) - 1.0 / 3.0) < 0.015);
    }
    SUBCASE("kernel table too small") {
        const auto t = Kernel::tabulated({{1.0, 1.0}, {1.0, 1.0}});
        CHECK_THROWS_AS(simulate_general(4, t, 1), DomainError);
    }
}

TEST_CASE("uniform fragmentation") {
    CHECK(treecore::canonical_shape(simulate_uniform_fragmentation(2, 1)) == "(LL)");
    for (std::uint64_t s = 0; s < 20; ++s) {
        CHECK(treecore::canonical_shape(simulate_uniform_fragmentation(3, s)) == "((LL)L)");
    }
    const int reps = 40000;
    const double f = balanced_fraction(reps, [](Rng& r) { return simulate_uniform_fragmentation(4, r); });
    CHECK(std::abs(f - 1.0 / 3.0) < 5 * std::sqrt(2.0 / 9.0 / reps));
}

TEST_CASE("order-count trajectories") {
    SUBCASE("two particles") {
        const auto steps = order_count_trajectories(simulate_kingman(2, 8));
        REQUIRE(steps.step_count() == 2);
        CHECK(steps.eta(0, 1) == 1.0);
        CHECK(steps.eta(0, 2) == 0.0);
        CHECK(steps.eta(1, 1) == 0.0);
        CHECK(steps.eta(1, 2) == 0.5);
    }
    SUBCASE("sums and decrements") {
        const std::int64_t n = 1000;
        const auto steps = order_count_trajectories(simulate_kingman(n, 9));
        CHECK(steps.time(0) == 0.0);
        CHECK(steps.eta_total(0) == 1.0);
        for (std::size_t s = 0; s < steps.step_count(); ++s) {
            double sum = 0.0;
            for (int j = 1; j <= steps.max_order(); ++j) sum += steps.eta(s, j);
            REQUIRE(sum == doctest::Approx(steps.eta_total(s)).epsilon(1e-12));
            if (s > 0) REQUIRE(steps.eta_total(s - 1) - steps.eta_total(s) == doctest::Approx(1.0 / n));
        }
        CHECK(steps.step_at(0.0) == 0);
        CHECK(steps.step_at(1e9) == steps.step_count() - 1);
    }
    SUBCASE("csv") {
        std::ostringstream out;
        write_trajectory_csv(out, simulate_kingman(3, 1));
        CHECK(out.str().rfind("event_index,time,mass_a,mass_b,order_a,order_b\n", 0) == 0);
    }
}
