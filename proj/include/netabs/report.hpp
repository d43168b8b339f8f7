#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "netabs/abstraction.hpp"
#include "netabs/error_bounds.hpp"

namespace netabs {

// Report tree for an abstraction run: sizes, densities, certificate,
// seed/retries, per-measure loss table, total weights, and (for a finitely
// certified pair) the H2 error block.  Matches
// schemas/abstraction_report.schema.json.
nlohmann::json abstraction_report(const WeightedGraph& g,
                                  const AbstractionResult& res,
                                  const std::vector<MeasureDescriptor>& catalog,
                                  bool with_h2_error = true);

nlohmann::json h2_error_json(const H2ErrorReport& rep);

// Report text ready to write: dump_json of abstraction_report.
std::string abstraction_report_text(const WeightedGraph& g,
                                    const AbstractionResult& res,
                                    const std::vector<MeasureDescriptor>& catalog,
                                    bool with_h2_error = true);

}  // namespace netabs
