#include "coaltree/levelset/series.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>
#include <unordered_set>

#include "coaltree/errors.hpp"

namespace coaltree::levelset {

using treecore::kNoVertex;
using treecore::VertexId;

Extrema local_extrema(std::span<const double> s) {
    if (s.empty()) throw DomainError("series is empty");
    Extrema out;
    const std::size_t n = s.size();
    if (n == 1) {
        out.maxima.push_back({0, s[0]});
        return out;
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (s[i] == s[i + 1]) {
            throw DegenerateInputError("plateau at positions " + std::to_string(i) + "-" + std::to_string(i + 1));
        }
    }
    if (s[0] > s[1]) out.maxima.push_back({0, s[0]});
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (s[i] > s[i - 1] && s[i] > s[i + 1]) out.maxima.push_back({i, s[i]});
        if (s[i] < s[i - 1] && s[i] < s[i + 1]) out.minima.push_back({i, s[i]});
    }
    if (s[n - 1] > s[n - 2]) out.maxima.push_back({n - 1, s[n - 1]});
    return out;
}

treecore::RootedTree level_set_tree(std::span<const double> series) {
    const Extrema ex = local_extrema(series);
    const std::size_t k = ex.minima.size();
    // Without plateaus, maxima and internal minima alternate: M m M ... m M.
    if (ex.maxima.size() != k + 1) throw DegenerateInputError("local maxima and minima do not alternate");
    {
        std::vector<double> values;
        values.reserve(k);
        for (const auto& m : ex.minima) values.push_back(m.value);
        std::sort(values.begin(), values.end());
        if (std::adjacent_find(values.begin(), values.end()) != values.end()) {
            throw DegenerateInputError("tied internal minima");
        }
    }

    treecore::TreeBuilder builder;
    if (k == 0) {
        builder.add_leaf(ex.maxima[0].value);
        return std::move(builder).build();
    }

    // Min-rooted Cartesian tree over the minima; the gaps are the maxima.
    std::vector<VertexId> node(k);
    std::vector<VertexId> left(k, kNoVertex);
    std::vector<VertexId> right(k, kNoVertex);
    for (std::size_t i = 0; i < k; ++i) node[i] = builder.add_vertex(ex.minima[i].value);
    std::vector<std::size_t> stack;
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t last_popped = k;
        while (!stack.empty() && ex.minima[stack.back()].value > ex.minima[i].value) {
            last_popped = stack.back();
            stack.pop_back();
        }
        if (last_popped != k) left[i] = static_cast<VertexId>(last_popped);
        if (!stack.empty()) right[stack.back()] = static_cast<VertexId>(i);
        stack.push_back(i);
    }
    for (std::size_t i = 0; i < k; ++i) {
        const VertexId l = left[i] != kNoVertex ? node[left[i]] : builder.add_leaf(ex.maxima[i].value);
        const VertexId r = right[i] != kNoVertex ? node[right[i]] : builder.add_leaf(ex.maxima[i + 1].value);
        builder.set_children(node[i], {l, r});
    }
    return std::move(builder).build();
}

Series extend_white_noise(std::span<const double> w) {
    if (w.empty()) throw DomainError("extended white noise needs at least one value (N >= 2)");
    {
        std::vector<double> sorted(w.begin(), w.end());
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw DegenerateInputError("white noise values must be pairwise distinct");
        }
    }
    const std::size_t m = w.size();  // N - 1
    // 1-based W(k), k = 1..N-1.
    auto W = [&](std::size_t k) { return w[k - 1]; };
    Series out(2 * m + 1);
    for (std::size_t i = 1; i <= 2 * m + 1; ++i) {
        if (i % 2 == 0) {
            out[i - 1] = W(i / 2);
        } else {
            const std::size_t lo = std::max<std::size_t>(1, (i - 1) / 2);
            const std::size_t hi = std::min<std::size_t>(m, (i + 1) / 2);
            out[i - 1] = std::max(W(lo), W(hi)) + 1.0;
        }
    }
    return out;
}

Series sample_white_noise(std::size_t n, NoiseDistribution distribution, Rng& rng) {
    Series out(n);
    for (double& x : out) {
        switch (distribution) {
            case NoiseDistribution::uniform01:
                x = rng.uniform_open();
                break;
            case NoiseDistribution::gaussian:
                x = rng.standard_normal();
                break;
            case NoiseDistribution::exponential:
                x = rng.exponential(1.0);
                break;
        }
    }
    return out;
}

Series sample_white_noise(std::size_t n, NoiseDistribution distribution, std::uint64_t seed) {
    Rng rng(seed);
    return sample_white_noise(n, distribution, rng);
}

namespace {

double interpolate(std::span<const double> s, double t) {
    const auto i = static_cast<std::size_t>(std::floor(t));
    if (i + 1 >= s.size()) return s.back();
    const double frac = t - static_cast<double>(i);
    return s[i] + frac * (s[i + 1] - s[i]);
}

}  // namespace

double path_pseudo_metric(std::span<const double> s, double a, double b) {
    if (s.empty()) throw DomainError("series is empty");
    const double end = static_cast<double>(s.size() - 1);
    if (!(a >= 0.0 && a <= end && b >= 0.0 && b <= end)) {
        throw DomainError("pseudo-metric arguments must lie in [0, " + std::to_string(end) + "]");
    }
    const double lo = std::min(a, b);
    const double hi = std::max(a, b);
    const double xa = interpolate(s, a);
    const double xb = interpolate(s, b);
    double low = std::min(xa, xb);
    // A linear function attains its minimum at a breakpoint or an end.
    for (auto k = static_cast<std::size_t>(std::ceil(lo)); static_cast<double>(k) <= hi && k < s.size(); ++k) {
        low = std::min(low, s[k]);
    }
    return (xa - low) + (xb - low);
}

Series read_series(std::istream& in) {
    Series out;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto last = line.find_last_not_of(" \t\r");
        double value = 0.0;
        const char* begin = line.data() + first;
        const char* stop = line.data() + last + 1;
        auto [ptr, ec] = std::from_chars(begin, stop, value);
        if (ec != std::errc() || ptr != stop) throw ParseError("expected one decimal value per line", line_number);
        out.push_back(value);
    }
    return out;
}

void write_extrema_csv(std::ostream& out, const Extrema& extrema) {
    // Merge by position so the table reads left to right.
    struct Row {
        std::size_t position;
        double value;
        const char* kind;
    };
    std::vector<Row> rows;
    for (const auto& m : extrema.maxima) rows.push_back({m.position, m.value, "max"});
    for (const auto& m : extrema.minima) rows.push_back({m.position, m.value, "min"});
    std::sort(rows.begin(), rows.end(), [](const Row& x, const Row& y) { return x.position < y.position; });
    out << "position,value,kind\n";
    char buffer[64];
    for (const auto& r : rows) {
        std::snprintf(buffer, sizeof buffer, "%.17g", r.value);
        out << r.position << ',' << buffer << ',' << r.kind << '\n';
    }
}

}  // namespace coaltree::levelset
