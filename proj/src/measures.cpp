#include "netabs/measures.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace netabs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Positive eigenvalues of a connected Laplacian are the n-1 largest; the
// lone (numerically near-zero) kernel eigenvalue sits at index 0.
void require_connected(const LaplacianSpectrum& spec) {
  if (spec.n() < 2 || !spec.connected())
    throw numeric_error("measure undefined: graph is not connected");
}

std::string param_str(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

}  // namespace

double zeta(double q, const LaplacianSpectrum& spec) {
  if (!(q >= 1.0) || !std::isfinite(q))
    throw invalid_input("zeta exponent must satisfy q >= 1");
  require_connected(spec);
  double s = 0.0;
  for (int k = 1; k < spec.n(); ++k) s += std::pow(spec.lambdas[k], -q);
  return std::pow(s, 1.0 / q);
}

double h2_norm(const LaplacianSpectrum& spec) {
  require_connected(spec);
  double s = 0.0;
  for (int k = 1; k < spec.n(); ++k) s += 1.0 / spec.lambdas[k];
  return std::sqrt(0.5 * s);
}

double hinf_norm(const LaplacianSpectrum& spec) {
  require_connected(spec);
  return 1.0 / spec.lambda2();
}

double hankel_norm(const LaplacianSpectrum& spec) {
  require_connected(spec);
  return 0.5 / spec.lambda2();
}

double gamma_entropy(double gamma, const LaplacianSpectrum& spec) {
  if (!(gamma > 0.0)) throw invalid_input("entropy bound must be positive");
  require_connected(spec);
  // Below 1/lambda_2 the bound is not achievable: the entropy diverges.
  if (gamma * spec.lambda2() < 1.0 - 1e-12) return kInf;
  const double c = 1.0 / (gamma * gamma);
  double s = 0.0;
  for (int k = 1; k < spec.n(); ++k) {
    const double lam = spec.lambdas[k];
    // gamma^2 (lam - sqrt(lam^2 - c)) rewritten to avoid cancellation.
    s += 1.0 / (lam + std::sqrt(std::max(0.0, lam * lam - c)));
  }
  return s;
}

double hp_alpha0(double p) {
  if (!(p >= 2.0) || !std::isfinite(p))
    throw invalid_input("spectral-moment order must satisfy p >= 2");
  constexpr double pi = 3.14159265358979323846264338327950288;
  return std::exp(-(std::log(2.0 * std::sqrt(pi)) + std::lgamma(p / 2.0) -
                    std::lgamma((p - 1.0) / 2.0)) /
                  p);
}

double hp_norm(double p, const LaplacianSpectrum& spec) {
  const double a0 = hp_alpha0(p);
  require_connected(spec);
  double s = 0.0;
  for (int k = 1; k < spec.n(); ++k)
    s += std::pow(spec.lambdas[k], -(p - 1.0));
  return a0 * std::pow(s, 1.0 / p);
}

double second_order_h2(double beta, const LaplacianSpectrum& spec) {
  if (!(beta > 0.0)) throw invalid_input("velocity gain must be positive");
  require_connected(spec);
  double s = 0.0;
  for (int k = 1; k < spec.n(); ++k)
    s += 1.0 / (spec.lambdas[k] * spec.lambdas[k]);
  return std::sqrt(s / (2.0 * beta));
}

double local_deviation_1(const WeightedGraph& g) {
  const Eigen::VectorXd d = g.degrees();
  double s = 0.0;
  for (int i = 0; i < g.n(); ++i) {
    if (d[i] <= 0.0)
      throw numeric_error("local deviation undefined: node " +
                          std::to_string(i) + " has no links");
    s += 1.0 / d[i];
  }
  return 0.5 * s;
}

double local_deviation_2(const WeightedGraph& g, double beta) {
  if (!(beta > 0.0)) throw invalid_input("velocity gain must be positive");
  const Eigen::VectorXd d = g.degrees();
  double s = 0.0;
  for (int i = 0; i < g.n(); ++i) {
    if (d[i] <= 0.0)
      throw numeric_error("local deviation undefined: node " +
                          std::to_string(i) + " has no links");
    s += 1.0 / (d[i] * d[i]);
  }
  return s / (2.0 * beta);
}

double total_weight_inverse(const WeightedGraph& g) {
  const double w = g.total_weight();
  if (w <= 0.0) throw numeric_error("graph has no links");
  return 1.0 / w;
}

double log_uncertainty_volume(const LaplacianSpectrum& spec) {
  require_connected(spec);
  double s = 0.0;
  for (int k = 1; k < spec.n(); ++k) s += std::log(2.0 * spec.lambdas[k]);
  return -s;
}

double uncertainty_volume(const LaplacianSpectrum& spec) {
  return std::exp(log_uncertainty_volume(spec));
}

double partial_zeta(int k, const LaplacianSpectrum& spec) {
  require_connected(spec);
  if (k < 1 || k > spec.n() - 1)
    throw invalid_input("partial sum size must be in [1, n-1]");
  double s = 0.0;
  // The k largest inverse eigenvalues come from the k smallest positive.
  for (int i = 1; i <= k; ++i) s += 1.0 / spec.lambdas[i];
  return s;
}

namespace {

MeasureDescriptor make_zeta(double q) {
  return {"zeta:" + param_str(q), 1.0,
          [q](const WeightedGraph&, const LaplacianSpectrum& s) {
            return zeta(q, s);
          },
          nullptr};
}

MeasureDescriptor make_h2() {
  return {"h2", 0.5,
          [](const WeightedGraph&, const LaplacianSpectrum& s) {
            return h2_norm(s);
          },
          nullptr};
}

MeasureDescriptor make_hinf() {
  return {"hinf", 1.0,
          [](const WeightedGraph&, const LaplacianSpectrum& s) {
            return hinf_norm(s);
          },
          nullptr};
}

MeasureDescriptor make_hankel() {
  return {"hankel", 1.0,
          [](const WeightedGraph&, const LaplacianSpectrum& s) {
            return hankel_norm(s);
          },
          nullptr};
}

// Spectrum-relative entropy: parameter c is the dimensionless margin
// gamma * lambda_2, so the measure scales exactly with order 1.
MeasureDescriptor make_gamma(double c) {
  MeasureDescriptor m;
  m.name = "gamma:" + param_str(c);
  m.order_alpha = 1.0;
  m.eval = [c](const WeightedGraph&, const LaplacianSpectrum& s) {
    if (s.n() < 2 || !s.connected())
      throw numeric_error("measure undefined: graph is not connected");
    return gamma_entropy(c / s.lambda2(), s);
  };
  // Pinning freezes gamma against a reference spectrum, producing the
  // fixed-gamma evaluator (exactly monotone and convex in the Laplacian
  // order, no longer exactly homogeneous).
  m.pin = [c](const WeightedGraph&, const LaplacianSpectrum& ref) {
    if (ref.n() < 2 || !ref.connected())
      throw numeric_error("cannot pin entropy bound: reference graph is "
                          "not connected");
    const double gam = c / ref.lambda2();
    MeasureDescriptor f;
    f.name = "gamma:" + param_str(c);
    f.order_alpha = 1.0;
    f.eval = [gam](const WeightedGraph&, const LaplacianSpectrum& s) {
      return gamma_entropy(gam, s);
    };
    return f;
  };
  return m;
}

MeasureDescriptor make_hp(double p) {
  return {"hp:" + param_str(p), (p - 1.0) / p,
          [p](const WeightedGraph&, const LaplacianSpectrum& s) {
            return hp_norm(p, s);
          },
          nullptr};
}

MeasureDescriptor make_locdev1() {
  return {"locdev1", 1.0,
          [](const WeightedGraph& g, const LaplacianSpectrum&) {
            return local_deviation_1(g);
          },
          nullptr};
}

MeasureDescriptor make_locdev2(double beta) {
  return {"locdev2:" + param_str(beta), 2.0,
          [beta](const WeightedGraph& g, const LaplacianSpectrum&) {
            return local_deviation_2(g, beta);
          },
          nullptr};
}

MeasureDescriptor make_theta2(double beta) {
  // Catalog value is the squared second-order norm (order 2).
  return {"theta2:" + param_str(beta), 2.0,
          [beta](const WeightedGraph&, const LaplacianSpectrum& s) {
            const double t = second_order_h2(beta, s);
            return t * t;
          },
          nullptr};
}

MeasureDescriptor make_uvol(int n_nodes) {
  return {"uvol", static_cast<double>(std::max(1, n_nodes - 1)),
          [](const WeightedGraph&, const LaplacianSpectrum& s) {
            return uncertainty_volume(s);
          },
          [](const WeightedGraph&, const LaplacianSpectrum& s) {
            return log_uncertainty_volume(s);
          }};
}

MeasureDescriptor make_xi() {
  return {"xi", 1.0,
          [](const WeightedGraph& g, const LaplacianSpectrum&) {
            return total_weight_inverse(g);
          },
          nullptr};
}

MeasureDescriptor make_partial_zeta(int k) {
  return {"partialzeta:" + std::to_string(k), 1.0,
          [k](const WeightedGraph&, const LaplacianSpectrum& s) {
            return partial_zeta(k, s);
          },
          nullptr};
}

}  // namespace

MeasureDescriptor parse_measure(const std::string& name, int n_nodes) {
  if (n_nodes < 2) throw invalid_input("measures need n >= 2");
  std::string kind = name;
  std::string param;
  const size_t colon = name.find(':');
  if (colon != std::string::npos) {
    kind = name.substr(0, colon);
    param = name.substr(colon + 1);
  }
  auto num = [&](double dflt) {
    if (param.empty()) return dflt;
    try {
      size_t used = 0;
      const double v = std::stod(param, &used);
      if (used != param.size() || !std::isfinite(v))
        throw invalid_input("");
      return v;
    } catch (const std::exception&) {
      throw invalid_input("bad parameter '" + param + "' in measure '" +
                          name + "'");
    }
  };
  if (kind == "zeta") {
    const double q = num(1.0);
    if (!(q >= 1.0)) throw invalid_input("zeta exponent must satisfy q >= 1");
    return make_zeta(q);
  }
  if (kind == "h2") return make_h2();
  if (kind == "hinf") return make_hinf();
  if (kind == "hankel") return make_hankel();
  if (kind == "gamma") {
    const double c = num(2.0);
    if (!(c > 0.0)) throw invalid_input("entropy margin must be positive");
    return make_gamma(c);
  }
  if (kind == "hp") {
    const double p = num(2.0);
    if (!(p >= 2.0))
      throw invalid_input("spectral-moment order must satisfy p >= 2");
    return make_hp(p);
  }
  if (kind == "locdev1") return make_locdev1();
  if (kind == "locdev2") {
    const double beta = num(1.0);
    if (!(beta > 0.0)) throw invalid_input("velocity gain must be positive");
    return make_locdev2(beta);
  }
  if (kind == "theta2") {
    const double beta = num(1.0);
    if (!(beta > 0.0)) throw invalid_input("velocity gain must be positive");
    return make_theta2(beta);
  }
  if (kind == "uvol") return make_uvol(n_nodes);
  if (kind == "xi") return make_xi();
  if (kind == "partialzeta") {
    const int dflt = std::max(1, (n_nodes + 9) / 10);
    const double kv = num(static_cast<double>(dflt));
    const int k = static_cast<int>(kv);
    if (kv != k || k < 1 || k > n_nodes - 1)
      throw invalid_input("partial sum size must be an integer in [1, n-1]");
    return make_partial_zeta(k);
  }
  throw invalid_input("unknown measure '" + name + "'");
}

std::vector<MeasureDescriptor> default_catalog(int n_nodes) {
  if (n_nodes < 2) throw invalid_input("measures need n >= 2");
  std::vector<MeasureDescriptor> cat;
  cat.push_back(make_zeta(1.0));
  cat.push_back(make_zeta(2.0));
  cat.push_back(make_h2());
  cat.push_back(make_hinf());
  cat.push_back(make_hankel());
  cat.push_back(make_gamma(2.0));
  cat.push_back(make_hp(2.0));
  cat.push_back(make_hp(4.0));
  cat.push_back(make_locdev1());
  cat.push_back(make_locdev2(1.0));
  cat.push_back(make_theta2(1.0));
  cat.push_back(make_uvol(n_nodes));
  cat.push_back(make_xi());
  cat.push_back(make_partial_zeta(std::max(1, (n_nodes + 9) / 10)));
  return cat;
}

MeasureDescriptor pin_parameters(const MeasureDescriptor& m,
                                 const WeightedGraph& ref,
                                 const LaplacianSpectrum& ref_spec) {
  return m.pin ? m.pin(ref, ref_spec) : m;
}

double evaluate(const MeasureDescriptor& m, const WeightedGraph& g,
                const LaplacianSpectrum& spec) {
  try {
    return m.eval(g, spec);
  } catch (const numeric_error&) {
    return kInf;  // degenerate input (e.g. disconnected): measure diverges
  }
}

double normalized_index(const MeasureDescriptor& m, const WeightedGraph& g,
                        const LaplacianSpectrum& spec) {
  if (m.log_eval) {
    try {
      return std::exp(m.log_eval(g, spec) / m.order_alpha);
    } catch (const numeric_error&) {
      return kInf;
    }
  }
  const double v = evaluate(m, g, spec);
  if (!std::isfinite(v)) return v;
  return std::pow(v, 1.0 / m.order_alpha);
}

// Loss is defined on the normalized (order -1) indices, which is what the
// sandwich certificate bounds uniformly across measures of any order.
double relative_loss(const MeasureDescriptor& m, const WeightedGraph& g,
                     const LaplacianSpectrum& sg, const WeightedGraph& g_s,
                     const LaplacianSpectrum& sgs) {
  const double v = normalized_index(m, g, sg);
  const double vs = normalized_index(m, g_s, sgs);
  if (!std::isfinite(v) || !std::isfinite(vs) || vs <= 0.0) return kInf;
  return std::abs(v - vs) / vs;
}

double relative_loss(const MeasureDescriptor& m, const WeightedGraph& g,
                     const WeightedGraph& g_s) {
  return relative_loss(m, g, decompose(g), g_s, decompose(g_s));
}

}  // namespace netabs
