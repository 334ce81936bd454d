#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "coaltree/errors.hpp"
#include "coaltree/stats/export.hpp"
#include "coaltree/stats/replicates.hpp"
#include "coaltree/treecore/tree_io.hpp"

using namespace coaltree;
using namespace coaltree::stats;

TEST_CASE("replicate runner") {
    const auto draw = [](std::size_t, Rng& rng) { return rng.next_u64(); };
    const auto one = run_replicates<std::uint64_t>(64, 5, 1, draw);
    const auto four = run_replicates<std::uint64_t>(64, 5, 4, draw);
    CHECK(one == four);
    CHECK(one != run_replicates<std::uint64_t>(64, 6, 1, draw));
    const auto index = run_replicates<std::size_t>(10, 0, 3, [](std::size_t i, Rng&) { return i; });
    for (std::size_t i = 0; i < index.size(); ++i) CHECK(index[i] == i);
    CHECK_THROWS_AS(run_replicates<int>(20, 0, 2,
                                        [](std::size_t i, Rng&) -> int {
                                            if (i == 7) throw DomainError("boom");
                                            return 0;
                                        }),
                    DomainError);
    CHECK(resolve_threads(8, 3) == 3);
    CHECK(resolve_threads(1, 100) == 1);
    CHECK(resolve_threads(0, 100) >= 1);
}

TEST_CASE("generators") {
    CHECK(parse_generator("whitenoise") == Generator::whitenoise);
    CHECK(generator_name(Generator::fragmentation) == "fragmentation");
    CHECK_THROWS_AS(parse_generator("yule"), DomainError);
    Rng rng(1);
    for (const auto g : {Generator::kingman, Generator::whitenoise, Generator::fragmentation, Generator::comb}) {
        CHECK(generate_tree(g, 37, rng).leaf_count() == 37);
    }
    CHECK(treecore::canonical_shape(comb_tree(4)) == "(((LL)L)L)");
    CHECK_THROWS_AS(generate_tree(Generator::whitenoise, 1, rng), DomainError);
}

TEST_CASE("branch statistics") {
    SUBCASE("two leaves") {
        const auto s = branch_statistics(Generator::kingman, 2, 50, 1);
        REQUIRE(s.max_order() == 2);
        CHECK(s.mean_count[0] == 2.0);
        CHECK(s.mean_count[1] == 1.0);
        CHECK(s.mean_ratio[1] == 0.5);
        CHECK(s.cv[0] == 0.0);
        CHECK(s.cv[1] == 0.0);
    }
    SUBCASE("thread count does not matter") {
        const auto a = branch_statistics(Generator::whitenoise, 500, 40, 9, 1);
        const auto b = branch_statistics(Generator::whitenoise, 500, 40, 9, 3);
        CHECK(a.mean_ratio == b.mean_ratio);
        CHECK(a.cv == b.cv);
    }
    SUBCASE("kingman and white noise agree") {
        const auto k = branch_statistics(Generator::kingman, 1024, 300, 41);
        const auto w = branch_statistics(Generator::whitenoise, 1024, 300, 42);
        for (int j = 2; j <= 4; ++j) {
            const double se = std::hypot(k.se_ratio[j - 1], w.se_ratio[j - 1]);
            CHECK(std::abs(k.mean_ratio[j - 1] - w.mean_ratio[j - 1]) <= 3 * se);
        }
    }
    SUBCASE("coefficient of variation trends") {
        std::vector<BranchStats> runs;
        for (const std::int64_t n : {1 << 10, 1 << 12, 1 << 14}) {
            runs.push_back(branch_statistics(Generator::kingman, n, 100, 77));
        }
        // Over orders 2..6: rho grows with k at fixed N, shrinks with N at fixed k.
        int up_in_k = 0, down_in_n = 0, total_k = 0, total_n = 0;
        for (const auto& r : runs) {
            for (int k = 2; k < 6; ++k, ++total_k) up_in_k += r.cv[k] > r.cv[k - 1];
        }
        for (int k = 2; k <= 6; ++k) {
            for (std::size_t i = 1; i < runs.size(); ++i, ++total_n) down_in_n += runs[i].cv[k - 1] < runs[i - 1].cv[k - 1];
        }
        CHECK(2 * up_in_k > total_k);
        CHECK(2 * down_in_n > total_n);
    }
    CHECK_THROWS_AS(branch_statistics(Generator::kingman, 1, 10, 1), DomainError);
    CHECK_THROWS_AS(branch_statistics(Generator::kingman, 10, 1, 1), DomainError);
}

TEST_CASE("shape histograms and the equivalence test") {
    SUBCASE("three leaves: one shape") {
        const auto h = shape_distribution(Generator::kingman, 3, 1000, 2);
        CHECK(h.counts.size() == 1);
        CHECK(h.frequency("((LL)L)") == 1.0);
    }
    SUBCASE("four leaves: 1/3 balanced") {
        for (const auto g : {Generator::kingman, Generator::fragmentation, Generator::whitenoise}) {
            const auto h = shape_distribution(g, 4, 100000, 3);
            CHECK(std::abs(h.frequency("((LL)(LL))") - 1.0 / 3.0) < 0.005);
            CHECK(std::abs(h.frequency("(((LL)L)L)") - 2.0 / 3.0) < 0.005);
        }
    }
    SUBCASE("a histogram against itself") {
        const auto h = shape_distribution(Generator::kingman, 6, 5000, 4);
        const auto r = equivalence_test(h, h);
        CHECK(r.chi_square == 0.0);
        CHECK(r.p_value == 1.0);
        CHECK(r.total_variation == 0.0);
    }
    SUBCASE("power against the comb") {
        const auto k = shape_distribution(Generator::kingman, 4, 100000, 5);
        const auto c = shape_distribution(Generator::comb, 4, 100000, 6);
        CHECK(equivalence_test(k, c).p_value < 1e-6);
    }
    SUBCASE("white noise is Kingman at five leaves") {
        const auto k = shape_distribution(Generator::kingman, 5, 100000, 7);
        const auto w = shape_distribution(Generator::whitenoise, 5, 100000, 8);
        const auto r = equivalence_test(k, w);
        CHECK(r.p_value > 0.01);
        CHECK(r.dof == static_cast<int>(r.pooled_cells) - 1);
    }
    SUBCASE("pooling of rare cells") {
        ShapeHistogram a{10, 0, {}}, b{10, 0, {}};
        a.counts = {{"x", 500}, {"y", 490}, {"r1", 1}, {"r2", 2}, {"r3", 3}};
        b.counts = {{"x", 480}, {"y", 510}, {"r1", 2}, {"r2", 1}, {"r3", 4}};
        a.total = b.total = 996;
        b.total = 997;
        const auto r = equivalence_test(a, b);
        CHECK(r.pooled_cells == 3);
        CHECK(r.dof == 2);
    }
    SUBCASE("errors") {
        const auto h4 = shape_distribution(Generator::kingman, 4, 100, 1);
        const auto h5 = shape_distribution(Generator::kingman, 5, 100, 1);
        CHECK_THROWS_AS(equivalence_test(h4, h5), DomainError);
        ShapeHistogram empty{4, 0, {}};
        CHECK_THROWS_AS(equivalence_test(h4, empty), TestUndefinedError);
        CHECK_THROWS_AS(shape_distribution(Generator::kingman, 13, 10, 1), DomainError);
    }
}

TEST_CASE("pooled Tokunaga indices") {
    SUBCASE("combs") {
        for (const std::int64_t n : {3, 4, 10, 57}) {
            const auto t = pooled_tokunaga({comb_tree(n)}, 1);
            REQUIRE(!t.mean.empty());
            CHECK(t.mean[0] == static_cast<double>(n - 2));
            CHECK(t.unweighted_mean[0] == static_cast<double>(n - 2));
        }
    }
    SUBCASE("weighting by branches") {
        // k = 1 pairs: comb (1,2): 2 side branches on 1 branch; the second tree
        // (1,2): 1 on 2 and (2,3): 0 on 1.
        const auto a = comb_tree(4);
        const auto b = treecore::parse_tree("((L,L),((L,L),L))");
        const auto t = pooled_tokunaga({a, b}, 1);
        CHECK(t.mean[0] == doctest::Approx(3.0 / 4.0));
        CHECK(t.unweighted_mean[0] == doctest::Approx((2.0 + 0.5 + 0.0) / 3.0));
        CHECK(t.samples[0] == 3);
    }
    SUBCASE("simulated trees are reproducible") {
        const auto a = empirical_tokunaga(Generator::whitenoise, 2000, 10, 4, 2, 1);
        const auto b = empirical_tokunaga(Generator::whitenoise, 2000, 10, 4, 2, 2);
        REQUIRE(a.mean.size() == b.mean.size());
        for (std::size_t k = 0; k < a.mean.size(); ++k) {
            CHECK((a.mean[k] == b.mean[k] || (std::isnan(a.mean[k]) && std::isnan(b.mean[k]))));
        }
        CHECK(a.mean[0] > 0.5);
        CHECK(a.mean[0] < 1.2);
    }
    CHECK_THROWS_AS(empirical_tokunaga(Generator::kingman, 100, 5, 1, 0), DomainError);
}

TEST_CASE("hydrodynamic distances") {
    SUBCASE("closed-form tail") {
        // int_K^inf (2/(t+2))^2 / 2 dt
        for (const double k : {0.0, 1.0, 10.0, 100.0}) CHECK(closed_form_tail(k) == doctest::Approx(2.0 / (k + 2.0)));
        CHECK(eta_closed_form(0.0) == 1.0);
    }
    SUBCASE("large N is closer") {
        const auto ode = hortonode::solve_g_system(6, 1e3);
        const auto small = hydrodynamic_check(64, 20, 3, ode, 10.0, 3);
        const auto large = hydrodynamic_check(4096, 20, 3, ode, 10.0, 3);
        CHECK(large.mean_l2_total < small.mean_l2_total);
        CHECK(large.mean_l2_order.size() == 3);
        CHECK_THROWS_AS(hydrodynamic_check(64, 2, 3, ode, 10.0, 6), DomainError);
    }
    SUBCASE("single step function") {
        // One merge of two particles at time s: eta = 1 on [0, s), 1/2 after.
        const auto tr = coalescent::simulate_kingman(2, 5);
        const double s = tr.events[0].time;
        const auto steps = coalescent::order_count_trajectories(tr);
        const double horizon = s + 3.0;
        // Closed-form antiderivative of (c - 2/(t+2))^2.
        const auto piece = [](double c, double a, double b) {
            const auto F = [c](double t) { return c * c * t - 4.0 * c * std::log(t + 2.0) - 4.0 / (t + 2.0); };
            return F(b) - F(a);
        };
        const double expected = std::sqrt(piece(1.0, 0.0, s) + piece(0.5, s, horizon));
        CHECK(l2_to_closed_form(steps, horizon) == doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("stats exports") {
    const auto s = branch_statistics(Generator::kingman, 64, 5, 1);
    std::ostringstream out;
    write_branch_csv(out, s);
    CHECK(out.str().rfind("k,mean,cv\n", 0) == 0);
    out.str("");
    write_histogram_csv(out, shape_distribution(Generator::kingman, 4, 10, 1));
    CHECK(out.str().rfind("shape,count\n", 0) == 0);
    out.str("");
    write_tokunaga_csv(out, pooled_tokunaga({comb_tree(5)}, 1));
    CHECK(out.str() == "k,T_k\n1,3\n");
    const auto h = shape_distribution(Generator::kingman, 5, 100, 1);
    const auto j = to_json(equivalence_test(h, h));
    CHECK(j.contains("statistic"));
    CHECK(j.contains("dof"));
    CHECK(j.contains("p_value"));
}
