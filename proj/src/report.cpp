#include "netabs/report.hpp"

#include "netabs/json_io.hpp"

namespace netabs {

nlohmann::json h2_error_json(const H2ErrorReport& rep) {
  nlohmann::json h;
  h["exact"] = rep.exact;
  h["trace_bound"] = rep.trace_bound;
  h["relative_bound"] = rep.relative_bound;
  h["relative_bound_absolute"] = rep.relative_bound_absolute;
  h["output_bound"] = rep.output_bound;
  h["epsilon_used"] = rep.epsilon_used;
  h["h2_original"] = rep.h2_original;
  h["relative_error"] = rep.relative_error;
  return h;
}

nlohmann::json abstraction_report(const WeightedGraph& g,
                                  const AbstractionResult& res,
                                  const std::vector<MeasureDescriptor>& catalog,
                                  bool with_h2_error) {
  nlohmann::json rep;
  rep["n"] = g.n();
  rep["m_original"] = g.m();
  rep["m_abstract"] = res.distinct_links;
  rep["m_samples"] = res.m_samples;
  rep["d_requested"] = res.d_requested;
  rep["d_effective"] = res.d_effective;
  rep["epsilon_requested"] =
      res.epsilon_requested ? nlohmann::json(*res.epsilon_requested)
                            : nlohmann::json(nullptr);
  rep["epsilon_certified"] = res.epsilon_certified;
  rep["certified"] = res.certified;
  rep["seed"] = res.seed;
  rep["retries"] = res.retries;
  rep["weight_total_original"] = g.total_weight();
  rep["weight_total_abstract"] = res.graph_s.total_weight();

  AbstractionResult tmp = res;
  if (tmp.loss_table.empty() && !catalog.empty())
    fill_loss_table(tmp, g, catalog);
  nlohmann::json measures = nlohmann::json::array();
  for (const MeasureLoss& row : tmp.loss_table) {
    nlohmann::json entry;
    entry["name"] = row.name;
    entry["order_alpha"] = row.order_alpha;
    entry["value_original"] = row.value_original;
    entry["value_abstract"] = row.value_abstract;
    entry["relative_loss"] = row.relative_loss;
    measures.push_back(std::move(entry));
  }
  rep["measures"] = std::move(measures);

  if (with_h2_error)
    rep["h2_error"] =
        h2_error_json(h2_error_report(g, res.graph_s, res.epsilon_certified));
  return rep;
}

std::string abstraction_report_text(const WeightedGraph& g,
                                    const AbstractionResult& res,
                                    const std::vector<MeasureDescriptor>& catalog,
                                    bool with_h2_error) {
  return dump_json(abstraction_report(g, res, catalog, with_h2_error));
}

}  // namespace netabs
