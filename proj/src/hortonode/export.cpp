#include "coaltree/hortonode/export.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace coaltree::hortonode {

namespace {

void put(std::ostream& out, double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.17g", v);
    out << buffer;
}

// NaN is not representable in JSON.
nlohmann::json number(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

}  // namespace

void write_h_csv(std::ostream& out, const HSolution& sol) {
    out << 'x';
    for (int k = 1; k <= sol.max_order(); ++k) out << ",h_" << k;
    out << '\n';
    const auto grid = sol.grid();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        put(out, grid[i]);
        for (int k = 1; k <= sol.max_order(); ++k) {
            out << ',';
            put(out, sol.at(k, i));
        }
        out << '\n';
    }
}

void write_eta_csv(std::ostream& out, const GSolution& g, std::size_t points) {
    out << 't';
    for (int j = 1; j < g.max_order(); ++j) out << ",eta_" << j;
    out << '\n';
    for (std::size_t i = 0; i < points; ++i) {
        const double t = points == 1 ? 0.0 : g.t_max() * static_cast<double>(i) / static_cast<double>(points - 1);
        put(out, t);
        for (int j = 1; j < g.max_order(); ++j) {
            out << ',';
            put(out, g.eta(j, t));
        }
        out << '\n';
    }
}

nlohmann::json to_json(const HortonRatios& ratios) {
    nlohmann::json rows = nlohmann::json::array();
    for (int k = 1; k <= ratios.size(); ++k) {
        nlohmann::json row{{"k", k}, {"N_k", ratios.at(k)}};
        row["n_k"] = k < ratios.size() ? number(ratios.ratio(k)) : nlohmann::json(nullptr);
        rows.push_back(row);
    }
    return {{"rows", rows}, {"tail_error_bound", ratios.tail_bound}};
}

nlohmann::json to_json(const GammaSequence& gamma) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t k = 0; k < gamma.values.size(); ++k) {
        rows.push_back({{"k", k + 1}, {"gamma_k", gamma.values[k]}, {"gamma_k_at_cutoff", gamma.values_at_cutoff[k]}});
    }
    return {{"rows", rows}, {"R_via_gamma", gamma.r_via_gamma}, {"warnings", gamma.warnings}};
}

nlohmann::json to_json(const REstimate& r) {
    return {{"R_ratio", r.r_ratio}, {"R_root", r.r_root}, {"R_root_raw", r.r_root_raw}, {"difference", r.difference}};
}

nlohmann::json to_json(const TokunagaMatrix& t) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 1; i < t.max_order; ++i) {
        for (int j = i + 1; j <= t.max_order; ++j) rows.push_back({{"i", i}, {"j", j}, {"T_ij", number(t.at(i, j))}});
    }
    return {{"view", t.view == TreeView::pruned ? "pruned" : "coalescent"},
            {"max_order", t.max_order},
            {"entries", rows},
            {"tail_error_bound", t.tail_bound}};
}

nlohmann::json to_json(const InvariantReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& c : report.checks) {
        rows.push_back({{"name", c.name},
                        {"passed", c.passed},
                        {"worst", number(c.worst)},
                        {"tolerance", number(c.tolerance)},
                        {"detail", c.detail}});
    }
    return {{"all_passed", report.all_passed()}, {"checks", rows}};
}

nlohmann::json horton_summary(const HSolution& sol) {
    const HortonRatios ratios = horton_ratios(sol);
    nlohmann::json out;
    const auto& c = sol.config();
    out["config"] = {{"max_order", c.max_order},   {"epsilon", c.epsilon},       {"tolerance", c.tolerance},
                     {"min_step", c.min_step},     {"refinement", c.refinement}, {"max_step", c.max_step},
                     {"integrator_order", kIntegratorOrder}};
    out["grid_points"] = sol.grid().size();
    out["horton"] = to_json(ratios);
    out["gamma"] = to_json(gamma_sequence(sol));
    if (ratios.size() >= 4) out["R"] = to_json(estimate_R(ratios.values));
    return out;
}

nlohmann::json general_summary(const GeneralSolution& sol, std::size_t points) {
    const auto& c = sol.config();
    nlohmann::json samples = nlohmann::json::array();
    for (std::size_t i = 0; i < points; ++i) {
        const double t = points == 1 ? 0.0 : c.t_max * static_cast<double>(i) / static_cast<double>(points - 1);
        nlohmann::json orders = nlohmann::json::array();
        for (int j = 1; j <= c.max_order + 1; ++j) orders.push_back(sol.order_total(j, t));
        samples.push_back({{"t", t}, {"order_totals", orders}, {"lost_mass", sol.lost_mass(t)}});
    }
    nlohmann::json horton = nlohmann::json::array();
    for (int j = 1; j <= c.max_order + 1; ++j) horton.push_back({{"j", j}, {"N_j", sol.horton_estimate(j)}});
    return {{"config",
             {{"max_order", c.max_order},
              {"max_mass", c.max_mass},
              {"t_max", c.t_max},
              {"tolerance", c.tolerance},
              {"lost_mass_warning", c.lost_mass_warning}}},
            {"samples", samples},
            {"horton_estimates", horton},
            {"lost_mass_final", sol.lost_mass(c.t_max)},
            {"warnings", sol.warnings()}};
}

}  // namespace coaltree::hortonode
