#pragma once

#include <iosfwd>

#include "coaltree/hortonode/g_system.hpp"
#include "coaltree/hortonode/general.hpp"
#include "coaltree/hortonode/h_system.hpp"
#include "coaltree/hortonode/invariants.hpp"
#include "coaltree/hortonode/ratios.hpp"
#include "json.hpp"

namespace coaltree::hortonode {

// Columns x,h_1,..,h_K on the solver grid.
void write_h_csv(std::ostream& out, const HSolution& sol);

// Columns t,eta_1,..,eta_{K-1} (order-only system) at `points` uniform times.
void write_eta_csv(std::ostream& out, const GSolution& g, std::size_t points);

nlohmann::json to_json(const HortonRatios& ratios);
nlohmann::json to_json(const GammaSequence& gamma);
nlohmann::json to_json(const REstimate& r);
nlohmann::json to_json(const TokunagaMatrix& t);
nlohmann::json to_json(const InvariantReport& report);

// N_k, n_k, gamma_k, R estimates and tail bounds of one solve.
nlohmann::json horton_summary(const HSolution& sol);

// Order totals and lost mass at `points` uniform times, N_j estimates, warnings.
nlohmann::json general_summary(const GeneralSolution& sol, std::size_t points);

}  // namespace coaltree::hortonode
