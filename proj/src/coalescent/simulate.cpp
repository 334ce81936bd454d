#include "coaltree/coalescent/simulate.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <utility>

#include "coaltree/errors.hpp"

namespace coaltree::coalescent {

namespace {

int merged_order(int a, int b) noexcept { return a == b ? a + 1 : std::max(a, b); }

// Shared bookkeeping for both simulators: the live clusters, their masses
// and orders, and the tree under construction.
class MergeRecorder {
public:
    explicit MergeRecorder(std::int64_t n) : n_(n) {
        const auto size = static_cast<std::size_t>(n);
        active_.reserve(size);
        mass_.reserve(2 * size);
        order_.reserve(2 * size);
        events_.reserve(size > 0 ? size - 1 : 0);
        for (std::int64_t i = 0; i < n; ++i) {
            active_.push_back(builder_.add_leaf(0.0));
            mass_.push_back(1);
            order_.push_back(1);
        }
    }

    std::size_t active_count() const noexcept { return active_.size(); }
    VertexId active(std::size_t slot) const { return active_[slot]; }
    std::int64_t mass_of_slot(std::size_t slot) const { return mass_[active_[slot]]; }

    // Merges the clusters in slots a != b at time t; the merged cluster takes
    // slot min(a, b) and the last slot fills the hole at max(a, b).
    void merge(std::size_t a, std::size_t b, double t) {
        if (a > b) std::swap(a, b);
        const VertexId va = active_[a];
        const VertexId vb = active_[b];
        const VertexId merged = builder_.add_internal(va, vb, t);
        mass_.push_back(mass_[va] + mass_[vb]);
        order_.push_back(merged_order(order_[va], order_[vb]));
        events_.push_back(MergeEvent{t, va, vb, merged, mass_[va], mass_[vb], order_[va], order_[vb]});
        active_[a] = merged;
        active_[b] = active_.back();
        active_.pop_back();
    }

    CoalescentTrajectory finish() && {
        return CoalescentTrajectory{n_, std::move(events_), std::move(builder_).build()};
    }

private:
    std::int64_t n_;
    treecore::TreeBuilder builder_;
    std::vector<VertexId> active_;
    std::vector<std::int64_t> mass_;
    std::vector<int> order_;
    std::vector<MergeEvent> events_;
};

void require_positive(std::int64_t n) {
    if (n < 1) throw DomainError("coalescent needs at least one particle");
}

}  // namespace

CoalescentTrajectory simulate_kingman(std::int64_t n, Rng& rng) {
    require_positive(n);
    MergeRecorder recorder(n);
    const double per_pair_rate = 1.0 / static_cast<double>(n);
    double t = 0.0;
    while (recorder.active_count() > 1) {
        const auto m = static_cast<std::uint64_t>(recorder.active_count());
        const double pairs = 0.5 * static_cast<double>(m) * static_cast<double>(m - 1);
        t += rng.exponential(pairs * per_pair_rate);
        const std::uint64_t a = rng.uniform_index(m);
        std::uint64_t b = rng.uniform_index(m - 1);
        if (b >= a) ++b;
        recorder.merge(static_cast<std::size_t>(a), static_cast<std::size_t>(b), t);
    }
    return std::move(recorder).finish();
}

CoalescentTrajectory simulate_kingman(std::int64_t n, std::uint64_t seed) {
    Rng rng(seed);
    return simulate_kingman(n, rng);
}

CoalescentTrajectory simulate_general(std::int64_t n, const Kernel& base_kernel, Rng& rng, GeneralOptions options) {
    require_positive(n);
    if (base_kernel.max_mass() < n) {
        throw DomainError("kernel is defined only up to mass " + std::to_string(base_kernel.max_mass()) +
                          ", simulation needs " + std::to_string(n));
    }
    const Kernel kernel = options.scale_by_n ? base_kernel.scaled(1.0 / static_cast<double>(n)) : base_kernel;

    MergeRecorder recorder(n);
    // row[s] = sum over other clusters c of K(mass_s, mass_c).
    std::vector<double> row;
    auto rebuild_rows = [&] {
        const std::size_t m = recorder.active_count();
        row.assign(m, 0.0);
        for (std::size_t s = 0; s < m; ++s) {
            for (std::size_t c = s + 1; c < m; ++c) {
                const double k = kernel(recorder.mass_of_slot(s), recorder.mass_of_slot(c));
                row[s] += k;
                row[c] += k;
            }
        }
    };
    rebuild_rows();

    double t = 0.0;
    std::size_t since_rebuild = 0;
    while (recorder.active_count() > 1) {
        const std::size_t m = recorder.active_count();
        double row_sum = 0.0;
        for (double r : row) row_sum += r;
        t += rng.exponential(0.5 * row_sum);

        // Slot a with probability row[a] / row_sum, then b != a with
        // probability K(a, b) / row[a]: pair {a, b} gets K(a, b) / total.
        double target = rng.uniform01() * row_sum;
        std::size_t a = 0;
        for (; a + 1 < m; ++a) {
            if (target < row[a]) break;
            target -= row[a];
        }
        const std::int64_t ma = recorder.mass_of_slot(a);
        target = rng.uniform01() * row[a];
        std::size_t b = m;
        std::size_t last_other = m;
        for (std::size_t c = 0; c < m; ++c) {
            if (c == a) continue;
            last_other = c;
            const double k = kernel(ma, recorder.mass_of_slot(c));
            if (target < k) {
                b = c;
                break;
            }
            target -= k;
        }
        if (b == m) b = last_other;  // rounding at the end of the scan

        const std::int64_t mb = recorder.mass_of_slot(b);
        const std::size_t lo = std::min(a, b);
        const std::size_t hi = std::max(a, b);
        recorder.merge(a, b, t);

        // Mirror the slot moves of merge(): hi receives the old last slot.
        if (++since_rebuild >= 64) {
            rebuild_rows();
            since_rebuild = 0;
            continue;
        }
        row[hi] = row[m - 1];
        row.pop_back();
        const std::int64_t merged_mass = ma + mb;
        double merged_row = 0.0;
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c == lo) continue;
            const std::int64_t mc = recorder.mass_of_slot(c);
            const double k_new = kernel(mc, merged_mass);
            row[c] += k_new - kernel(mc, ma) - kernel(mc, mb);
            merged_row += k_new;
        }
        if (lo < row.size()) row[lo] = merged_row;
    }
    return std::move(recorder).finish();
}

CoalescentTrajectory simulate_general(std::int64_t n, const Kernel& kernel, std::uint64_t seed,
                                      GeneralOptions options) {
    Rng rng(seed);
    return simulate_general(n, kernel, rng, options);
}

treecore::RootedTree simulate_uniform_fragmentation(std::int64_t n, Rng& rng) {
    require_positive(n);
    treecore::TreeBuilder builder;
    std::vector<std::pair<VertexId, std::int64_t>> pending{{builder.add_vertex(), n}};
    while (!pending.empty()) {
        auto [v, mass] = pending.back();
        pending.pop_back();
        if (mass == 1) continue;
        const auto left_mass = static_cast<std::int64_t>(rng.uniform_index(static_cast<std::uint64_t>(mass - 1))) + 1;
        const VertexId left = builder.add_vertex();
        const VertexId right = builder.add_vertex();
        builder.set_children(v, {left, right});
        pending.emplace_back(right, mass - left_mass);
        pending.emplace_back(left, left_mass);
    }
    return std::move(builder).build();
}

treecore::RootedTree simulate_uniform_fragmentation(std::int64_t n, std::uint64_t seed) {
    Rng rng(seed);
    return simulate_uniform_fragmentation(n, rng);
}

OrderCountSteps::OrderCountSteps(std::int64_t n, std::vector<double> times, int max_order,
                                 std::vector<std::int64_t> counts)
    : n_(n), times_(std::move(times)), max_order_(max_order), counts_(std::move(counts)) {}

std::int64_t OrderCountSteps::count(std::size_t step, int j) const {
    if (j < 1 || j > max_order_) return 0;
    return counts_.at(step * static_cast<std::size_t>(max_order_) + static_cast<std::size_t>(j - 1));
}

double OrderCountSteps::eta(std::size_t step, int j) const {
    return static_cast<double>(count(step, j)) / static_cast<double>(n_);
}

double OrderCountSteps::eta_total(std::size_t step) const {
    return static_cast<double>(n_ - static_cast<std::int64_t>(step)) / static_cast<double>(n_);
}

std::size_t OrderCountSteps::step_at(double t) const {
    const auto it = std::upper_bound(times_.begin(), times_.end(), t);
    return it == times_.begin() ? 0 : static_cast<std::size_t>(it - times_.begin()) - 1;
}

OrderCountSteps order_count_trajectories(const CoalescentTrajectory& trajectory) {
    int max_order = 1;
    for (const auto& e : trajectory.events) max_order = std::max(max_order, merged_order(e.order_a, e.order_b));
    const auto width = static_cast<std::size_t>(max_order);

    std::vector<double> times;
    times.reserve(trajectory.events.size() + 1);
    times.push_back(0.0);
    std::vector<std::int64_t> current(width, 0);
    current[0] = trajectory.n;
    std::vector<std::int64_t> counts(current);
    counts.reserve(width * (trajectory.events.size() + 1));
    for (const auto& e : trajectory.events) {
        if (e.order_a == e.order_b) {
            current[static_cast<std::size_t>(e.order_a - 1)] -= 2;
            current[static_cast<std::size_t>(e.order_a)] += 1;
        } else {
            current[static_cast<std::size_t>(std::min(e.order_a, e.order_b) - 1)] -= 1;
        }
        times.push_back(e.time);
        counts.insert(counts.end(), current.begin(), current.end());
    }
    return OrderCountSteps(trajectory.n, std::move(times), max_order, std::move(counts));
}

void write_trajectory_csv(std::ostream& out, const CoalescentTrajectory& trajectory) {
    out << "event_index,time,mass_a,mass_b,order_a,order_b\n";
    char buffer[64];
    for (std::size_t i = 0; i < trajectory.events.size(); ++i) {
        const auto& e = trajectory.events[i];
        std::snprintf(buffer, sizeof buffer, "%.17g", e.time);
        out << i << ',' << buffer << ',' << e.mass_a << ',' << e.mass_b << ',' << e.order_a << ',' << e.order_b
            << '\n';
    }
}

}  // namespace coaltree::coalescent
