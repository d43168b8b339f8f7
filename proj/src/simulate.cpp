#include "netabs/simulate.hpp"

#include <algorithm>
#include <cmath>

#include "netabs/rng.hpp"
#include "netabs/spectral.hpp"
#include "parallel.hpp"

namespace netabs {

namespace {

struct ResolvedTimes {
  double dt = 0.0;
  double t_burn = 0.0;
  double t_total = 0.0;
  long long burn_steps = 0;
  long long total_steps = 0;
};

// Defaults scale with the spectrum: step from the fastest mode, window from
// the slowest.  lambda_max enters the stability check dt * lambda_max < 1.9
// (the explicit scheme's variance diverges at 2).
ResolvedTimes resolve_times(const SimOptions& opt, double lambda2,
                            double lambda_max) {
  ResolvedTimes t;
  t.dt = opt.dt > 0.0 ? opt.dt : 0.1 / lambda_max;
  if (!(t.dt > 0.0) || !std::isfinite(t.dt))
    throw invalid_input("time step must be positive");
  if (t.dt * lambda_max >= 1.9)
    throw invalid_input("time step too large: dt * lambda_max must be < 1.9");
  t.t_burn = opt.t_burn > 0.0 ? opt.t_burn : 10.0 / lambda2;
  t.t_total = opt.t_total > 0.0 ? opt.t_total : t.t_burn + 200.0 / lambda2;
  if (t.t_total <= t.t_burn)
    throw invalid_input("total time must exceed the burn-in time");
  t.burn_steps = std::llround(t.t_burn / t.dt);
  t.total_steps = std::llround(t.t_total / t.dt);
  if (t.total_steps <= t.burn_steps)
    throw invalid_input("averaging window is empty at this dt");
  if (t.total_steps > 500'000'000)
    throw invalid_input("too many steps; increase dt or shrink the window");
  return t;
}

StatSeries summarize(std::vector<double> per_trial) {
  StatSeries s;
  s.per_trial = std::move(per_trial);
  const int k = static_cast<int>(s.per_trial.size());
  if (k == 0) return s;
  double sum = 0.0;
  for (double v : s.per_trial) sum += v;
  s.mean = sum / k;
  if (k > 1) {
    double ss = 0.0;
    for (double v : s.per_trial) ss += (v - s.mean) * (v - s.mean);
    s.std_error = std::sqrt(ss / (k - 1)) / std::sqrt(static_cast<double>(k));
  }
  return s;
}

Eigen::VectorXd centered(const Eigen::VectorXd& x) {
  return x.array() - x.mean();
}

// Centered standard normal vector: the solver integrates the disagreement
// process, so the injected noise is projected off the average mode.
Eigen::VectorXd centered_noise(Rng& rng, int n) {
  Eigen::VectorXd xi(n);
  for (int i = 0; i < n; ++i) xi[i] = rng.normal();
  return centered(xi);
}

struct SpectrumInfo {
  double lambda2 = 0.0;
  double lambda_max = 0.0;
  Eigen::VectorXd inv_deg;
};

SpectrumInfo analyze(const WeightedGraph& g) {
  LaplacianSpectrum spec = decompose(g);
  if (!spec.connected())
    throw numeric_error("simulation needs a connected graph");
  SpectrumInfo info;
  info.lambda2 = spec.lambda2();
  info.lambda_max = spec.lambda_max();
  const Eigen::VectorXd d = g.degrees();
  info.inv_deg = d.cwiseInverse();
  return info;
}

Eigen::VectorXd initial_state(const SimOptions& opt, int n) {
  if (!opt.x0) return Eigen::VectorXd::Zero(n);
  if (opt.x0->size() != n)
    throw invalid_input("initial state size mismatch");
  return centered(*opt.x0);
}

int resolved_trials(const SimOptions& opt) {
  if (opt.trials < 1) throw invalid_input("need at least one trial");
  return opt.trials;
}

}  // namespace

SimulationStats simulate_first_order(const WeightedGraph& g,
                                     const SimOptions& opt) {
  const SpectrumInfo info = analyze(g);
  const ResolvedTimes tm = resolve_times(opt, info.lambda2, info.lambda_max);
  const int n = g.n();
  const int trials = resolved_trials(opt);
  const Eigen::MatrixXd L = g.laplacian();
  const Eigen::VectorXd y0 = initial_state(opt, n);
  const double s_noise = opt.noise_intensity * std::sqrt(tm.dt);

  std::vector<double> h2(trials), dev(trials);
  detail::parallel_for_indexed(trials, opt.threads, [&](int t) {
    Rng rng(child_seed(opt.seed, t));
    Eigen::VectorXd y = y0;
    Eigen::VectorXd Ly(n);
    double acc_h2 = 0.0, acc_dev = 0.0;
    for (long long k = 0; k < tm.total_steps; ++k) {
      Ly.noalias() = L * y;
      if (k >= tm.burn_steps) {
        acc_h2 += y.squaredNorm();
        acc_dev += (info.inv_deg.array() * Ly.array()).matrix().squaredNorm();
      }
      y -= tm.dt * Ly;
      if (opt.noise_intensity != 0.0) y += s_noise * centered_noise(rng, n);
    }
    const double rec = static_cast<double>(tm.total_steps - tm.burn_steps);
    h2[t] = acc_h2 / rec;
    dev[t] = acc_dev / rec;
  });

  SimulationStats out;
  out.h2_sq = summarize(std::move(h2));
  out.local_dev = summarize(std::move(dev));
  out.dt = tm.dt;
  out.t_burn = tm.t_burn;
  out.t_total = tm.t_total;
  out.trials = trials;
  out.seed = opt.seed;
  return out;
}

SimulationStats simulate_second_order(const WeightedGraph& g, double beta,
                                      const SimOptions& opt) {
  if (!(beta > 0.0)) throw invalid_input("velocity gain must be positive");
  const SpectrumInfo info = analyze(g);
  // Damping acts through beta * L; slowest decay ~ beta * lambda2 / 2 for
  // small beta, so stretch the default windows accordingly.
  const double rate2 = std::min(info.lambda2, beta * info.lambda2 * 0.5);
  const double fast = std::max(info.lambda_max, beta * info.lambda_max);
  ResolvedTimes tm;
  {
    SimOptions probe = opt;
    if (probe.dt <= 0.0) probe.dt = 0.1 / fast;
    tm = resolve_times(probe, rate2, fast);
  }
  const int n = g.n();
  const int trials = resolved_trials(opt);
  const Eigen::MatrixXd L = g.laplacian();
  const Eigen::VectorXd y0 = initial_state(opt, n);
  const double s_noise = opt.noise_intensity * std::sqrt(tm.dt);

  std::vector<double> h2(trials), dev(trials);
  detail::parallel_for_indexed(trials, opt.threads, [&](int t) {
    Rng rng(child_seed(opt.seed, t));
    Eigen::VectorXd x = y0;
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd Lx(n), Lv(n);
    double acc_h2 = 0.0, acc_dev = 0.0;
    for (long long k = 0; k < tm.total_steps; ++k) {
      Lx.noalias() = L * x;
      Lv.noalias() = L * v;
      if (k >= tm.burn_steps) {
        acc_h2 += x.squaredNorm();
        acc_dev += (info.inv_deg.array() * Lv.array()).matrix().squaredNorm();
      }
      x += tm.dt * v;
      v -= tm.dt * (Lx + beta * Lv);
      if (opt.noise_intensity != 0.0) v += s_noise * centered_noise(rng, n);
    }
    const double rec = static_cast<double>(tm.total_steps - tm.burn_steps);
    h2[t] = acc_h2 / rec;
    dev[t] = acc_dev / rec;
  });

  SimulationStats out;
  out.h2_sq = summarize(std::move(h2));
  out.local_dev = summarize(std::move(dev));
  out.dt = tm.dt;
  out.t_burn = tm.t_burn;
  out.t_total = tm.t_total;
  out.trials = trials;
  out.seed = opt.seed;
  return out;
}

SimulationStats simulate_pair_error(const WeightedGraph& g,
                                    const WeightedGraph& g_s,
                                    const SimOptions& opt) {
  if (g.n() != g_s.n()) throw invalid_input("node sets must match");
  const SpectrumInfo a = analyze(g);
  const SpectrumInfo b = analyze(g_s);
  SimOptions probe = opt;
  if (probe.dt <= 0.0)
    probe.dt = 0.1 / std::max(a.lambda_max, b.lambda_max);
  const ResolvedTimes tm = resolve_times(
      probe, std::min(a.lambda2, b.lambda2),
      std::max(a.lambda_max, b.lambda_max));
  const int n = g.n();
  const int trials = resolved_trials(opt);
  const Eigen::MatrixXd L = g.laplacian();
  const Eigen::MatrixXd Ls = g_s.laplacian();
  const Eigen::VectorXd y0 = initial_state(opt, n);
  const double s_noise = opt.noise_intensity * std::sqrt(tm.dt);

  std::vector<double> h2(trials), dev(trials), err(trials);
  detail::parallel_for_indexed(trials, opt.threads, [&](int t) {
    Rng rng(child_seed(opt.seed, t));
    Eigen::VectorXd y = y0, ys = y0;
    Eigen::VectorXd Ly(n), Lys(n);
    double acc_h2 = 0.0, acc_dev = 0.0, acc_err = 0.0;
    for (long long k = 0; k < tm.total_steps; ++k) {
      Ly.noalias() = L * y;
      Lys.noalias() = Ls * ys;
      if (k >= tm.burn_steps) {
        acc_h2 += y.squaredNorm();
        acc_dev += (a.inv_deg.array() * Ly.array()).matrix().squaredNorm();
        acc_err += (y - ys).squaredNorm();
      }
      const Eigen::VectorXd xi = opt.noise_intensity != 0.0
                                     ? (s_noise * centered_noise(rng, n)).eval()
                                     : Eigen::VectorXd::Zero(n).eval();
      y += -tm.dt * Ly + xi;   // identical noise path drives both systems
      ys += -tm.dt * Lys + xi;
    }
    const double rec = static_cast<double>(tm.total_steps - tm.burn_steps);
    h2[t] = acc_h2 / rec;
    dev[t] = acc_dev / rec;
    err[t] = acc_err / rec;
  });

  SimulationStats out;
  out.h2_sq = summarize(std::move(h2));
  out.local_dev = summarize(std::move(dev));
  out.output_error = summarize(std::move(err));
  out.dt = tm.dt;
  out.t_burn = tm.t_burn;
  out.t_total = tm.t_total;
  out.trials = trials;
  out.seed = opt.seed;
  return out;
}

Eigen::MatrixXd simulate_first_order_path(const WeightedGraph& g,
                                          const Eigen::VectorXd& x0,
                                          double dt, int steps, double sigma,
                                          std::uint64_t seed) {
  if (x0.size() != g.n()) throw invalid_input("initial state size mismatch");
  if (!(dt > 0.0) || steps < 0) throw invalid_input("bad path parameters");
  const Eigen::MatrixXd L = g.laplacian();
  Eigen::MatrixXd out(steps + 1, g.n());
  Eigen::VectorXd y = centered(x0);
  out.row(0) = y.transpose();
  Rng rng(seed);
  const double s_noise = sigma * std::sqrt(dt);
  for (int k = 1; k <= steps; ++k) {
    y -= dt * (L * y);
    if (sigma != 0.0) y += s_noise * centered_noise(rng, g.n());
    out.row(k) = y.transpose();
  }
  return out;
}

}  // namespace netabs
