#pragma once

#include <iosfwd>

#include "coaltree/stats/harness.hpp"
#include "coaltree/stats/hydro.hpp"
#include "json.hpp"

namespace coaltree::stats {

// Columns k,mean,cv (mean of N_k/N_1, coefficient of variation of N_k).
void write_branch_csv(std::ostream& out, const BranchStats& stats);
// Columns shape,count.
void write_histogram_csv(std::ostream& out, const ShapeHistogram& histogram);
// Columns k,T_k.
void write_tokunaga_csv(std::ostream& out, const EmpiricalTokunaga& tokunaga);

nlohmann::json to_json(const BranchStats& stats);
nlohmann::json to_json(const ShapeHistogram& histogram);
nlohmann::json to_json(const EquivalenceResult& result);
nlohmann::json to_json(const EmpiricalTokunaga& tokunaga);
nlohmann::json to_json(const HydroReport& report);

}  // namespace coaltree::stats
