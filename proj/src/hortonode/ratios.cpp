#include "coaltree/hortonode/ratios.hpp"

#include <cmath>
#include <limits>

#include "coaltree/errors.hpp"

namespace coaltree::hortonode {

double HortonRatios::at(int k) const {
    if (k < 1 || k > size()) throw DomainError("Horton ratio index out of range: " + std::to_string(k));
    return values[static_cast<std::size_t>(k - 1)];
}

double HortonRatios::ratio(int k) const {
    if (k < 1 || k >= size()) throw DomainError("Horton exponent index out of range: " + std::to_string(k));
    return at(k) / at(k + 1);
}

HortonRatios horton_ratios(const HSolution& sol) {
    HortonRatios out;
    const int K = sol.max_order();
    out.values.push_back(1.0);
    for (int k = 2; k <= K; ++k) {
        const auto q = sol.integrate([k](double x, std::span<const double> h) {
            const double d = 1.0 - h[static_cast<std::size_t>(k - 1)] * (1.0 - x);
            return d * d;
        });
        out.values.push_back(q.value);
        out.tail_bound = std::max(out.tail_bound, q.tail_bound);
    }
    return out;
}

double TokunagaMatrix::at(int i, int j) const {
    if (i < 1 || j <= i || j > max_order) {
        throw DomainError("Tokunaga index (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
    }
    return values[static_cast<std::size_t>((i - 1) * max_order + (j - 1))];
}

TokunagaMatrix tokunaga_matrix(const HSolution& sol, int max_order, TreeView view) {
    const int shift = view == TreeView::pruned ? 1 : 0;
    if (max_order < 2) throw DomainError("Tokunaga matrix needs max order >= 2");
    if (max_order + shift > sol.max_order()) {
        throw DomainError("Tokunaga order " + std::to_string(max_order) + " needs h up to order " +
                          std::to_string(max_order + shift) + ", solved to " + std::to_string(sol.max_order()));
    }
    const HortonRatios horton = horton_ratios(sol);
    TokunagaMatrix out;
    out.max_order = max_order;
    out.view = view;
    out.values.assign(static_cast<std::size_t>(max_order * max_order), std::numeric_limits<double>::quiet_NaN());
    for (int i = 1; i < max_order; ++i) {
        for (int j = i + 1; j <= max_order; ++j) {
            const auto a = static_cast<std::size_t>(i + shift);
            const auto b = static_cast<std::size_t>(j + shift);
            const auto q = sol.integrate([a, b](double x, std::span<const double> h) {
                const double w = 1.0 - x;
                return 2.0 * (h[a] - h[a - 1]) * (h[b] - h[b - 1]) * w * w;
            }, 2.0);
            const double denominator = horton.at(j + shift);
            out.values[static_cast<std::size_t>((i - 1) * max_order + (j - 1))] = q.value / denominator;
            out.tail_bound = std::max(out.tail_bound, q.tail_bound / denominator);
        }
    }
    return out;
}

double GammaSequence::at(int k) const {
    if (k < 1 || k > static_cast<int>(values.size())) throw DomainError("gamma index out of range");
    return values[static_cast<std::size_t>(k - 1)];
}

GammaSequence gamma_sequence(const HSolution& sol) {
    GammaSequence out;
    const std::size_t last = sol.grid().size() - 1;
    for (int k = 1; k < sol.max_order(); ++k) {
        out.values.push_back(sol.at_one(k) / sol.at_one(k + 1));
        out.values_at_cutoff.push_back(sol.at(k, last) / sol.at(k + 1, last));
    }
    auto monotone = [&out](const std::vector<double>& v, const char* where) {
        for (std::size_t k = 1; k < v.size(); ++k) {
            if (v[k] < v[k - 1]) {
                out.warnings.push_back("gamma_" + std::to_string(k + 1) + " < gamma_" + std::to_string(k) + where);
            }
        }
    };
    monotone(out.values, "");
    monotone(out.values_at_cutoff, " at x = 1 - eps");
    out.r_via_gamma = 1.0 / out.values.back();
    return out;
}

REstimate estimate_R(std::span<const double> v) {
    const std::size_t K = v.size();
    if (K < 4) throw DomainError("R estimate needs at least 4 Horton values");
    for (double x : v) {
        if (!(x > 0.0)) throw DomainError("Horton values must be positive");
    }
    REstimate out;
    out.r_ratio = v[K - 2] / v[K - 1];
    auto log_root = [&](std::size_t k) { return -std::log(v[k - 1]) / static_cast<double>(k); };
    out.r_root_raw = std::exp(log_root(K));
    // Least squares of log r_k against 1/k over k = K-2..K.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k = K - 2; k <= K; ++k) {
        const double u = 1.0 / static_cast<double>(k);
        const double y = log_root(k);
        sx += u;
        sy += y;
        sxx += u * u;
        sxy += u * y;
    }
    const double slope = (3 * sxy - sx * sy) / (3 * sxx - sx * sx);
    out.r_root = std::exp((sy - slope * sx) / 3);
    out.difference = std::abs(out.r_root - out.r_ratio);
    return out;
}

}  // namespace coaltree::hortonode
