#include "coaltree/stats/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/special_functions/gamma.hpp>

#include "coaltree/errors.hpp"
#include "coaltree/stats/replicates.hpp"
#include "coaltree/treecore/horton.hpp"

namespace coaltree::stats {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Mean and sample standard deviation (n-1) of a column.
std::pair<double, double> mean_sd(const std::vector<double>& v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    const double sd = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
    return {mean, sd};
}

// Per-tree sums for one k: side branches, branches of the larger order,
// individual tau values.
struct TauSums {
    double side = 0.0;
    double branches = 0.0;
    double tau_sum = 0.0;
    std::size_t pairs = 0;
};

std::vector<TauSums> tree_tau(const treecore::RootedTree& tree, int min_i) {
    const auto analysis = treecore::assign_horton_strahler(tree);
    const auto counts = treecore::tokunaga_counts(tree, analysis);
    const int omega = analysis.tree_order;
    std::vector<TauSums> by_k(static_cast<std::size_t>(std::max(omega - 1, 0)));
    for (int i = min_i; i < omega; ++i) {
        for (int j = i + 1; j <= omega; ++j) {
            if (analysis.branches(j) == 0) continue;
            auto& s = by_k[static_cast<std::size_t>(j - i - 1)];
            s.side += static_cast<double>(counts.count(i, j));
            s.branches += static_cast<double>(analysis.branches(j));
            s.tau_sum += counts.tau(i, j);
            ++s.pairs;
        }
    }
    return by_k;
}

EmpiricalTokunaga summarize_tau(const std::vector<std::vector<TauSums>>& trees) {
    std::size_t orders = 0;
    for (const auto& t : trees) orders = std::max(orders, t.size());
    EmpiricalTokunaga out;
    for (std::size_t k = 0; k < orders; ++k) {
        double side = 0.0, branches = 0.0, tau = 0.0;
        std::size_t pairs = 0, contributing = 0;
        for (const auto& t : trees) {
            if (k >= t.size() || t[k].pairs == 0) continue;
            side += t[k].side;
            branches += t[k].branches;
            tau += t[k].tau_sum;
            pairs += t[k].pairs;
            ++contributing;
        }
        if (pairs == 0) {
            out.mean.push_back(kNaN);
            out.se.push_back(kNaN);
            out.unweighted_mean.push_back(kNaN);
            out.samples.push_back(0);
            continue;
        }
        const double ratio = side / branches;
        double ss = 0.0;
        for (const auto& t : trees) {
            if (k >= t.size() || t[k].pairs == 0) continue;
            const double r = t[k].side - ratio * t[k].branches;
            ss += r * r;
        }
        const double m = static_cast<double>(contributing);
        const double mean_branches = branches / m;
        out.mean.push_back(ratio);
        out.se.push_back(contributing > 1 ? std::sqrt(ss / (m * (m - 1.0))) / mean_branches : kNaN);
        out.unweighted_mean.push_back(tau / static_cast<double>(pairs));
        out.samples.push_back(pairs);
    }
    return out;
}

}  // namespace

BranchStats branch_statistics(Generator g, std::int64_t n, std::size_t reps, std::uint64_t base_seed,
                              unsigned threads) {
    if (n < 2) throw DomainError("branch statistics need N >= 2");
    if (reps < 2) throw DomainError("branch statistics need at least 2 replicates");
    const auto counts = run_replicates<std::vector<std::int64_t>>(reps, base_seed, threads, [&](std::size_t, Rng& rng) {
        return treecore::assign_horton_strahler(generate_tree(g, n, rng)).branch_counts;
    });
    std::size_t orders = 0;
    for (const auto& c : counts) orders = std::max(orders, c.size());

    BranchStats out;
    out.leaves = n;
    out.replicates = reps;
    std::vector<double> ratio(reps), count(reps);
    for (std::size_t k = 0; k < orders; ++k) {
        for (std::size_t r = 0; r < reps; ++r) {
            const double nk = k < counts[r].size() ? static_cast<double>(counts[r][k]) : 0.0;
            count[r] = nk;
            ratio[r] = nk / static_cast<double>(counts[r][0]);
        }
        const auto [mr, sr] = mean_sd(ratio);
        const auto [mc, sc] = mean_sd(count);
        out.mean_ratio.push_back(mr);
        out.se_ratio.push_back(sr / std::sqrt(static_cast<double>(reps)));
        out.mean_count.push_back(mc);
        out.cv.push_back(mc > 0.0 ? sc / mc : kNaN);
    }
    return out;
}

double ShapeHistogram::frequency(const treecore::CanonicalShape& shape) const {
    if (total == 0) return 0.0;
    const auto it = counts.find(shape);
    return it == counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(total);
}

ShapeHistogram shape_distribution(Generator g, std::int64_t n, std::size_t reps, std::uint64_t base_seed,
                                  unsigned threads) {
    if (n < 1 || n > kMaxHistogramLeaves) {
        throw DomainError("shape histograms are limited to 1 <= N <= " + std::to_string(kMaxHistogramLeaves));
    }
    if (reps < 1) throw DomainError("shape histogram needs at least one replicate");
    const auto shapes = run_replicates<treecore::CanonicalShape>(
        reps, base_seed, threads, [&](std::size_t, Rng& rng) { return treecore::canonical_shape(generate_tree(g, n, rng)); });
    ShapeHistogram out;
    out.leaves = n;
    out.total = reps;
    for (const auto& s : shapes) ++out.counts[s];
    return out;
}

EquivalenceResult equivalence_test(const ShapeHistogram& a, const ShapeHistogram& b) {
    if (a.leaves != b.leaves) throw DomainError("histograms are over different leaf counts");
    if (a.total == 0 || b.total == 0) throw TestUndefinedError("empty histogram");

    struct Cell {
        double a = 0.0, b = 0.0;
    };
    std::vector<Cell> cells;
    {
        std::map<treecore::CanonicalShape, Cell> joined;
        for (const auto& [s, c] : a.counts) joined[s].a = static_cast<double>(c);
        for (const auto& [s, c] : b.counts) joined[s].b = static_cast<double>(c);
        for (const auto& [s, c] : joined) cells.push_back(c);
    }
    const double na = static_cast<double>(a.total), nb = static_cast<double>(b.total), n = na + nb;

    EquivalenceResult out;
    for (const auto& c : cells) out.total_variation += 0.5 * std::abs(c.a / na - c.b / nb);

    // Rarest first; stable so ties keep the (deterministic) shape order.
    std::stable_sort(cells.begin(), cells.end(), [](const Cell& x, const Cell& y) { return x.a + x.b < y.a + y.b; });
    auto min_expected = [&](const Cell& c) { return (c.a + c.b) * std::min(na, nb) / n; };
    std::vector<Cell> pooled;
    Cell pool;
    bool open = false;
    for (const auto& c : cells) {
        pool.a += c.a;
        pool.b += c.b;
        open = true;
        if (min_expected(pool) >= 5.0) {
            pooled.push_back(pool);
            pool = Cell{};
            open = false;
        }
    }
    if (open) {
        if (pooled.empty()) {
            pooled.push_back(pool);
        } else {
            pooled.back().a += pool.a;
            pooled.back().b += pool.b;
        }
    }
    if (pooled.size() < 2) throw TestUndefinedError("fewer than two cells left after pooling");

    for (const auto& c : pooled) {
        const double total = c.a + c.b;
        const double ea = total * na / n, eb = total * nb / n;
        out.chi_square += (c.a - ea) * (c.a - ea) / ea + (c.b - eb) * (c.b - eb) / eb;
    }
    out.pooled_cells = pooled.size();
    out.dof = static_cast<int>(pooled.size()) - 1;
    out.p_value = boost::math::gamma_q(0.5 * out.dof, 0.5 * out.chi_square);
    return out;
}

EmpiricalTokunaga empirical_tokunaga(Generator g, std::int64_t n, std::size_t reps, std::uint64_t base_seed, int min_i,
                                     unsigned threads) {
    if (n < 2) throw DomainError("empirical Tokunaga indices need N >= 2");
    if (reps < 1) throw DomainError("empirical Tokunaga indices need at least one replicate");
    if (min_i < 1) throw DomainError("min_i must be at least 1");
    const auto per_tree = run_replicates<std::vector<TauSums>>(
        reps, base_seed, threads, [&](std::size_t, Rng& rng) { return tree_tau(generate_tree(g, n, rng), min_i); });
    EmpiricalTokunaga out = summarize_tau(per_tree);
    out.leaves = n;
    out.replicates = reps;
    out.min_i = min_i;
    return out;
}

EmpiricalTokunaga pooled_tokunaga(const std::vector<treecore::RootedTree>& trees, int min_i) {
    if (min_i < 1) throw DomainError("min_i must be at least 1");
    std::vector<std::vector<TauSums>> per_tree;
    for (const auto& t : trees) per_tree.push_back(tree_tau(t, min_i));
    EmpiricalTokunaga out = summarize_tau(per_tree);
    out.leaves = trees.empty() ? 0 : trees.front().leaf_count();
    out.replicates = trees.size();
    out.min_i = min_i;
    return out;
}

}  // namespace coaltree::stats
