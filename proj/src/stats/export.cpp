#include "coaltree/stats/export.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace coaltree::stats {

namespace {

std::string fmt(double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.17g", v);
    return buffer;
}

nlohmann::json number(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

}  // namespace

void write_branch_csv(std::ostream& out, const BranchStats& stats) {
    out << "k,mean,cv\n";
    for (int k = 1; k <= stats.max_order(); ++k) {
        const auto i = static_cast<std::size_t>(k - 1);
        out << k << ',' << fmt(stats.mean_ratio[i]) << ',' << fmt(stats.cv[i]) << '\n';
    }
}

void write_histogram_csv(std::ostream& out, const ShapeHistogram& histogram) {
    out << "shape,count\n";
    for (const auto& [shape, count] : histogram.counts) out << shape << ',' << count << '\n';
}

void write_tokunaga_csv(std::ostream& out, const EmpiricalTokunaga& tokunaga) {
    out << "k,T_k\n";
    for (std::size_t k = 0; k < tokunaga.mean.size(); ++k) out << k + 1 << ',' << fmt(tokunaga.mean[k]) << '\n';
}

nlohmann::json to_json(const BranchStats& stats) {
    nlohmann::json rows = nlohmann::json::array();
    for (int k = 1; k <= stats.max_order(); ++k) {
        const auto i = static_cast<std::size_t>(k - 1);
        rows.push_back({{"k", k},
                        {"mean_ratio", stats.mean_ratio[i]},
                        {"se_ratio", stats.se_ratio[i]},
                        {"mean_count", stats.mean_count[i]},
                        {"cv", number(stats.cv[i])}});
    }
    return {{"leaves", stats.leaves}, {"replicates", stats.replicates}, {"orders", rows}};
}

nlohmann::json to_json(const ShapeHistogram& histogram) {
    nlohmann::json counts = nlohmann::json::object();
    for (const auto& [shape, count] : histogram.counts) counts[shape] = count;
    return {{"leaves", histogram.leaves}, {"total", histogram.total}, {"counts", counts}};
}

nlohmann::json to_json(const EquivalenceResult& result) {
    return {{"statistic", result.chi_square},
            {"dof", result.dof},
            {"p_value", result.p_value},
            {"total_variation", result.total_variation},
            {"pooled_cells", result.pooled_cells}};
}

nlohmann::json to_json(const EmpiricalTokunaga& tokunaga) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t k = 0; k < tokunaga.mean.size(); ++k) {
        rows.push_back({{"k", k + 1},
                        {"T_k", number(tokunaga.mean[k])},
                        {"se", number(tokunaga.se[k])},
                        {"unweighted_mean", number(tokunaga.unweighted_mean[k])},
                        {"samples", tokunaga.samples[k]}});
    }
    return {{"leaves", tokunaga.leaves}, {"replicates", tokunaga.replicates}, {"min_i", tokunaga.min_i}, {"rows", rows}};
}

nlohmann::json to_json(const HydroReport& report) {
    return {{"leaves", report.leaves},
            {"replicates", report.replicates},
            {"horizon", report.horizon},
            {"mean_l2_total", report.mean_l2_total},
            {"se_l2_total", report.se_l2_total},
            {"mean_l2_order", report.mean_l2_order}};
}

}  // namespace coaltree::stats
