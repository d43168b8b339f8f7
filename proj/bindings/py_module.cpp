// Python bindings for the consensus-network abstraction library.  The
// module mirrors the CLI's capabilities: graph construction and IO,
// spectral quantities, the measure catalog, certified sparse abstraction,
// H2 error bounds, stochastic simulation, and the l1-vs-l0 design demo.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "netabs/abstraction.hpp"
#include "netabs/error_bounds.hpp"
#include "netabs/errors.hpp"
#include "netabs/graph.hpp"
#include "netabs/json_io.hpp"
#include "netabs/measures.hpp"
#include "netabs/report.hpp"
#include "netabs/rng.hpp"
#include "netabs/simulate.hpp"
#include "netabs/sparsity_demo.hpp"
#include "netabs/spectral.hpp"

namespace py = pybind11;
using namespace netabs;

namespace {

WeightedGraph graph_from_tuples(
    int n, const std::vector<std::tuple<int, int, double>>& edges) {
  std::vector<Edge> es;
  es.reserve(edges.size());
  for (const auto& [i, j, w] : edges) es.push_back(Edge{i, j, w});
  return WeightedGraph(n, std::move(es));
}

std::vector<std::tuple<int, int, double>> graph_edges(const WeightedGraph& g) {
  std::vector<std::tuple<int, int, double>> out;
  out.reserve(g.edges().size());
  for (const auto& e : g.edges()) out.emplace_back(e.i, e.j, e.w);
  return out;
}

std::vector<MeasureDescriptor> measures_from_names(
    const std::optional<std::vector<std::string>>& names, int n_nodes) {
  if (!names) return default_catalog(n_nodes);
  std::vector<MeasureDescriptor> out;
  for (const auto& name : *names) out.push_back(parse_measure(name, n_nodes));
  return out;
}

py::dict loss_row_dict(const MeasureLoss& row) {
  py::dict d;
  d["name"] = row.name;
  d["order_alpha"] = row.order_alpha;
  d["value_original"] = row.value_original;
  d["value_abstract"] = row.value_abstract;
  d["relative_loss"] = row.relative_loss;
  return d;
}

py::dict stat_dict(const StatSeries& s) {
  py::dict d;
  d["mean"] = s.mean;
  d["std_error"] = s.std_error;
  d["per_trial"] = s.per_trial;
  return d;
}

py::dict stats_dict(const SimulationStats& st, bool with_pair_error) {
  py::dict d;
  d["h2_sq"] = stat_dict(st.h2_sq);
  d["local_dev"] = stat_dict(st.local_dev);
  if (with_pair_error) d["output_error"] = stat_dict(st.output_error);
  d["dt"] = st.dt;
  d["t_burn"] = st.t_burn;
  d["t_total"] = st.t_total;
  d["trials"] = st.trials;
  d["seed"] = st.seed;
  return d;
}

SimOptions make_options(double dt, double t_burn, double t_total, int trials,
                        std::uint64_t seed, int threads, double noise) {
  SimOptions opt;
  opt.dt = dt;
  opt.t_burn = t_burn;
  opt.t_total = t_total;
  opt.trials = trials;
  opt.seed = seed;
  opt.threads = threads;
  opt.noise_intensity = noise;
  return opt;
}

UntilOptions make_until(double oversampling_c, int max_retries, int threads) {
  UntilOptions opt;
  opt.oversampling_c = oversampling_c;
  opt.max_retries = max_retries;
  opt.threads = threads;
  return opt;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Systemic performance measures and certified sparse abstractions of "
      "linear consensus networks";

  py::register_exception<invalid_input>(m, "InvalidInput",
                                        PyExc_ValueError);
  py::register_exception<numeric_error>(m, "NumericError",
                                        PyExc_ArithmeticError);

  // ---- graph -------------------------------------------------------------
  py::class_<WeightedGraph>(m, "Graph")
      .def(py::init(&graph_from_tuples), py::arg("n"), py::arg("edges"),
           "Weighted simple graph on nodes 0..n-1 from (i, j, w) tuples")
      .def_property_readonly("n", &WeightedGraph::n)
      .def_property_readonly("m", &WeightedGraph::m)
      .def("edges", &graph_edges, "Canonical (i, j, w) list, sorted by (i, j)")
      .def("laplacian", &WeightedGraph::laplacian)
      .def("adjacency", &WeightedGraph::adjacency)
      .def("degrees", &WeightedGraph::degrees)
      .def("is_connected", &WeightedGraph::is_connected)
      .def("total_weight", &WeightedGraph::total_weight)
      .def("sparsity_l0", &WeightedGraph::sparsity_l0)
      .def("sparsity_s01", &WeightedGraph::sparsity_s01)
      .def("scaled", &WeightedGraph::scaled, py::arg("kappa"))
      .def("__repr__", [](const WeightedGraph& g) {
        return "Graph(n=" + std::to_string(g.n()) +
               ", m=" + std::to_string(g.m()) + ")";
      });

  m.def("from_gain_matrix", &from_gain_matrix, py::arg("K"));
  m.def("gain_matrix", &gain_matrix, py::arg("g"));

  m.def("complete_graph", &complete_graph, py::arg("n"), py::arg("w") = 1.0);
  m.def("path_graph", &path_graph, py::arg("n"), py::arg("w") = 1.0);
  m.def("cycle_graph", &cycle_graph, py::arg("n"), py::arg("w") = 1.0);
  m.def("star_graph", &star_graph, py::arg("n"), py::arg("w") = 1.0);
  m.def("gnm_random", &gnm_random, py::arg("n"), py::arg("m"), py::arg("seed"));
  m.def("two_component_cut", &two_component_cut, py::arg("half"),
        py::arg("links"), py::arg("seed"));
  m.def("exp_decay", &exp_decay, py::arg("n"), py::arg("c"), py::arg("gamma"));
  m.def("proximity", &proximity, py::arg("n"), py::arg("side"),
        py::arg("radius"), py::arg("seed"));

  m.def("parse_edge_list", &parse_edge_list, py::arg("text"));
  m.def("read_edge_list", &read_edge_list, py::arg("path"));
  m.def("format_edge_list", &format_edge_list, py::arg("g"));
  m.def("write_edge_list", &write_edge_list, py::arg("g"), py::arg("path"));

  // ---- spectral ----------------------------------------------------------
  m.def(
      "eigenvalues",
      [](const WeightedGraph& g) { return decompose(g).lambdas; },
      py::arg("g"), "Ascending Laplacian eigenvalues (first is 0)");
  m.def(
      "lambda2", [](const WeightedGraph& g) { return decompose(g).lambda2(); },
      py::arg("g"), "Algebraic connectivity");
  m.def(
      "laplacian_pinv",
      [](const WeightedGraph& g) { return pseudoinverse(decompose(g)); },
      py::arg("g"));
  m.def(
      "effective_resistances",
      [](const WeightedGraph& g) { return effective_resistances(g); },
      py::arg("g"), "Matrix of pairwise effective resistances");
  m.def(
      "loewner_epsilon",
      [](const WeightedGraph& g, const WeightedGraph& g_s) {
        return loewner_epsilon(g, g_s);
      },
      py::arg("g"), py::arg("g_s"),
      "Tightest eps with (1-eps) L <= L_s <= (1+eps) L");

  // ---- measures ----------------------------------------------------------
  m.def(
      "default_measure_names",
      [](int n_nodes) {
        std::vector<std::string> names;
        for (const auto& d : default_catalog(n_nodes)) names.push_back(d.name);
        return names;
      },
      py::arg("n_nodes"));
  m.def(
      "measure_value",
      [](const std::string& name, const WeightedGraph& g,
         const std::optional<WeightedGraph>& pinned_to) {
        MeasureDescriptor d = parse_measure(name, g.n());
        if (pinned_to)
          d = pin_parameters(d, *pinned_to, decompose(*pinned_to));
        return evaluate(d, g, decompose(g));
      },
      py::arg("name"), py::arg("g"), py::kw_only(),
      py::arg("pinned_to") = std::nullopt,
      "Catalog measure value; pinned_to freezes graph-dependent parameters "
      "(the entropy bound) against a reference graph before evaluating.");
  m.def(
      "measure_order",
      [](const std::string& name, int n_nodes) {
        return parse_measure(name, n_nodes).order_alpha;
      },
      py::arg("name"), py::arg("n_nodes"));
  m.def(
      "normalized_index",
      [](const std::string& name, const WeightedGraph& g) {
        const auto d = parse_measure(name, g.n());
        return normalized_index(d, g, decompose(g));
      },
      py::arg("name"), py::arg("g"),
      "Scale-linear index value^(1/alpha)");
  m.def(
      "relative_loss",
      [](const std::string& name, const WeightedGraph& g,
         const WeightedGraph& g_s) {
        const auto d = parse_measure(name, g.n());
        return relative_loss(d, g, g_s);
      },
      py::arg("name"), py::arg("g"), py::arg("g_s"));
  m.def(
      "measure_table",
      [](const WeightedGraph& g,
         const std::optional<std::vector<std::string>>& names) {
        const auto catalog = measures_from_names(names, g.n());
        const auto spec = decompose(g);
        py::list rows;
        for (const auto& d : catalog) {
          py::dict row;
          row["name"] = d.name;
          row["order"] = d.order_alpha;
          row["value"] = evaluate(d, g, spec);
          row["normalized"] = normalized_index(d, g, spec);
          rows.append(row);
        }
        return rows;
      },
      py::arg("g"), py::arg("names") = std::nullopt);
  m.def(
      "tradeoff_check",
      [](const std::string& name, const WeightedGraph& g) {
        const auto d = parse_measure(name, g.n());
        const auto rep = tradeoff_check(d, g);
        py::dict out;
        out["lhs_l0"] = rep.lhs_l0;
        out["rhs_l0"] = rep.rhs_l0;
        out["lhs_s01"] = rep.lhs_s01;
        out["rhs_s01"] = rep.rhs_s01;
        out["holds"] = rep.holds;
        return out;
      },
      py::arg("name"), py::arg("g"));

  // ---- abstraction -------------------------------------------------------
  py::class_<AbstractionResult>(m, "AbstractionResult")
      .def_readonly("graph_s", &AbstractionResult::graph_s)
      .def_readonly("m_samples", &AbstractionResult::m_samples)
      .def_readonly("distinct_links", &AbstractionResult::distinct_links)
      .def_readonly("d_requested", &AbstractionResult::d_requested)
      .def_readonly("d_effective", &AbstractionResult::d_effective)
      .def_readonly("epsilon_certified", &AbstractionResult::epsilon_certified)
      .def_property_readonly(
          "epsilon_requested",
          [](const AbstractionResult& r) -> py::object {
            if (r.epsilon_requested) return py::float_(*r.epsilon_requested);
            return py::none();
          })
      .def_readonly("certified", &AbstractionResult::certified)
      .def_readonly("seed", &AbstractionResult::seed)
      .def_readonly("retries", &AbstractionResult::retries)
      .def(
          "loss_table",
          [](const AbstractionResult& r) {
            py::list rows;
            for (const auto& row : r.loss_table)
              rows.append(loss_row_dict(row));
            return rows;
          },
          "Per-measure losses (fill with fill_loss_table first)")
      .def("__repr__", [](const AbstractionResult& r) {
        return "AbstractionResult(links=" + std::to_string(r.distinct_links) +
               ", epsilon_certified=" + format_double(r.epsilon_certified) +
               ", certified=" + (r.certified ? std::string("True") : "False") +
               ")";
      });

  m.def(
      "sampling_distribution",
      [](const WeightedGraph& g) { return sampling_distribution(g); },
      py::arg("g"),
      "Per-link sampling probabilities in canonical edge order");
  m.def("abstract", &abstract, py::arg("g"), py::arg("d"), py::arg("seed"),
        "One sampling pass with M = ceil(d n / 2) draws");
  m.def(
      "abstract_until",
      [](const WeightedGraph& g, double epsilon, std::uint64_t seed,
         double oversampling_c, int max_retries, int threads) {
        return abstract_until(g, epsilon, seed,
                              make_until(oversampling_c, max_retries, threads));
      },
      py::arg("g"), py::arg("epsilon"), py::arg("seed"),
      py::arg("oversampling_c") = 18.0, py::arg("max_retries") = 32,
      py::arg("threads") = 1,
      "Retry sampling until the certificate meets epsilon");
  m.def("superiorize", &superiorize, py::arg("result"), py::arg("original"),
        "Rescale a certified abstraction to dominate the original");
  m.def(
      "fill_loss_table",
      [](AbstractionResult& res, const WeightedGraph& g,
         const std::optional<std::vector<std::string>>& names) {
        fill_loss_table(res, g, measures_from_names(names, g.n()));
      },
      py::arg("result"), py::arg("g"), py::arg("names") = std::nullopt);
  m.def(
      "abstract_localized",
      [](const WeightedGraph& g0, const WeightedGraph& g1, double epsilon,
         std::uint64_t seed, double oversampling_c, int max_retries,
         int threads) {
        const auto res = abstract_localized(
            g0, g1, epsilon, seed,
            make_until(oversampling_c, max_retries, threads));
        py::dict out;
        out["part"] = py::cast(res.part);
        out["epsilon_closed_loop"] = res.epsilon_closed_loop;
        out["weight_total_part_original"] = res.weight_total_part_original;
        out["weight_total_part_abstract"] = res.weight_total_part_abstract;
        return out;
      },
      py::arg("g0"), py::arg("g1"), py::arg("epsilon"), py::arg("seed"),
      py::arg("oversampling_c") = 18.0, py::arg("max_retries") = 32,
      py::arg("threads") = 1,
      "Sparsify g1 while keeping g0; reports the closed-loop certificate");
  m.def(
      "abstract_parallel",
      [](const WeightedGraph& base,
         const std::vector<WeightedGraph>& parts, double epsilon,
         std::uint64_t seed, double oversampling_c, int max_retries,
         int threads) {
        PartitionedNetwork net(base, parts);
        const auto res = abstract_parallel(
            net, epsilon, seed,
            make_until(oversampling_c, max_retries, threads));
        py::dict out;
        py::list part_list;
        for (const auto& p : res.parts) part_list.append(py::cast(p));
        out["parts"] = part_list;
        out["epsilon_global"] = res.epsilon_global;
        out["epsilon_parts_max"] = res.epsilon_parts_max;
        out["certified"] = res.certified;
        return out;
      },
      py::arg("base"), py::arg("parts"), py::arg("epsilon"), py::arg("seed"),
      py::arg("oversampling_c") = 18.0, py::arg("max_retries") = 32,
      py::arg("threads") = 1,
      "Sparsify link-disjoint parts independently over a kept base");

  // ---- error bounds ------------------------------------------------------
  m.def(
      "h2_error_exact",
      [](const WeightedGraph& g, const WeightedGraph& g_s) {
        return h2_error_exact(g, g_s);
      },
      py::arg("g"), py::arg("g_s"));
  m.def(
      "h2_error_bound",
      [](const WeightedGraph& g, const WeightedGraph& g_s) {
        return h2_error_bound(g, g_s);
      },
      py::arg("g"), py::arg("g_s"));
  m.def("relative_error_bound", &relative_error_bound, py::arg("eps"));
  m.def(
      "output_error_bound",
      [](const WeightedGraph& g, double eps) {
        return output_error_bound(g, eps);
      },
      py::arg("g"), py::arg("eps"));
  m.def(
      "h2_error_report",
      [](const WeightedGraph& g, const WeightedGraph& g_s, double eps) {
        const auto rep = h2_error_report(g, g_s, eps);
        py::dict out;
        out["exact"] = rep.exact;
        out["trace_bound"] = rep.trace_bound;
        out["relative_bound"] = rep.relative_bound;
        out["relative_bound_absolute"] = rep.relative_bound_absolute;
        out["output_bound"] = rep.output_bound;
        out["epsilon_used"] = rep.epsilon_used;
        out["h2_original"] = rep.h2_original;
        out["relative_error"] = rep.relative_error;
        return out;
      },
      py::arg("g"), py::arg("g_s"), py::arg("eps"));

  // ---- simulation ----------------------------------------------------------
  m.def(
      "simulate_first_order",
      [](const WeightedGraph& g, double dt, double t_burn, double t_total,
         int trials, std::uint64_t seed, int threads, double noise) {
        return stats_dict(
            simulate_first_order(
                g, make_options(dt, t_burn, t_total, trials, seed, threads,
                                noise)),
            false);
      },
      py::arg("g"), py::arg("dt") = 0.0, py::arg("t_burn") = 0.0,
      py::arg("t_total") = 0.0, py::arg("trials") = 8, py::arg("seed") = 0,
      py::arg("threads") = 1, py::arg("noise") = 1.0);
  m.def(
      "simulate_second_order",
      [](const WeightedGraph& g, double beta, double dt, double t_burn,
         double t_total, int trials, std::uint64_t seed, int threads,
         double noise) {
        return stats_dict(
            simulate_second_order(
                g, beta,
                make_options(dt, t_burn, t_total, trials, seed, threads,
                             noise)),
            false);
      },
      py::arg("g"), py::arg("beta") = 1.0, py::arg("dt") = 0.0,
      py::arg("t_burn") = 0.0, py::arg("t_total") = 0.0, py::arg("trials") = 8,
      py::arg("seed") = 0, py::arg("threads") = 1, py::arg("noise") = 1.0);
  m.def(
      "simulate_pair_error",
      [](const WeightedGraph& g, const WeightedGraph& g_s, double dt,
         double t_burn, double t_total, int trials, std::uint64_t seed,
         int threads, double noise) {
        return stats_dict(
            simulate_pair_error(
                g, g_s,
                make_options(dt, t_burn, t_total, trials, seed, threads,
                             noise)),
            true);
      },
      py::arg("g"), py::arg("g_s"), py::arg("dt") = 0.0,
      py::arg("t_burn") = 0.0, py::arg("t_total") = 0.0, py::arg("trials") = 8,
      py::arg("seed") = 0, py::arg("threads") = 1, py::arg("noise") = 1.0);

  // ---- design demo ---------------------------------------------------------
  m.def(
      "l1_optimum",
      [](int n, double w0, double gamma) {
        const auto sol = l1_optimum(RegularizationInstance{n, w0, gamma});
        py::dict out;
        out["w_remaining"] = sol.w_remaining;
        out["cost"] = sol.cost;
        out["sparsity_l0"] = sol.sparsity_l0;
        return out;
      },
      py::arg("n"), py::arg("w0"), py::arg("gamma"));
  m.def(
      "l0_tree_cost",
      [](int n, double w0, double gamma, double scale) {
        return l0_tree_cost(RegularizationInstance{n, w0, gamma}, scale);
      },
      py::arg("n"), py::arg("w0"), py::arg("gamma"), py::arg("scale"));
  m.def(
      "l0_lower_bound",
      [](int n, double w0, double gamma) {
        return l0_lower_bound(RegularizationInstance{n, w0, gamma});
      },
      py::arg("n"), py::arg("w0"), py::arg("gamma"));

  // ---- reports / misc ------------------------------------------------------
  m.def(
      "report_json",
      [](const WeightedGraph& g, const AbstractionResult& res,
         const std::optional<std::vector<std::string>>& names,
         bool with_h2_error) {
        return abstraction_report_text(
            g, res, measures_from_names(names, g.n()), with_h2_error);
      },
      py::arg("g"), py::arg("result"), py::arg("names") = std::nullopt,
      py::arg("with_h2_error") = true,
      "Canonical JSON report text for an abstraction run");
  m.def("child_seed", &child_seed, py::arg("master"), py::arg("index"),
        "Deterministic per-trial seed derived from a master seed");
}
