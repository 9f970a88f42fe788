#include "cqed/protocol.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

namespace cqed {

namespace {

// Runs body(i) for i in [0, n). Results must be written to per-index slots,
// so the outcome does not depend on the schedule.
template <class Body>
void parallel_for(std::size_t n, unsigned threads, Body&& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            body(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

SweepRow sweep_row(const ProtocolConfig& config, const RunResult& run, double eps1, double eps2,
                   double baseline_loss) {
  const auto& b = run.diagnostics.branches;
  SweepRow row;
  row.eta = config.eta;
  row.p1 = config.p1;
  row.p2 = config.p2;
  row.theta = config.theta;
  row.m = config.m;
  row.g = config.g;
  row.gT1 = config.g * run.diagnostics.time1;
  row.gT2 = config.g * run.diagnostics.time2;
  row.eps1 = eps1;
  row.eps2 = eps2;
  row.success_prob_sim = run.condition.success_prob;
  row.success_prob_analytic = run.entanglement.p_succ_analytic;
  row.fidelity = run.condition.fidelity;
  row.g_e = run.entanglement.g_e;
  row.leakage = run.diagnostics.leakage;
  row.p_up_up = b.up_up;
  row.p_up_down = b.up_down;
  row.p_down_up = b.down_up;
  row.p_down_down = b.down_down;
  row.fidelity_loss = 1.0 - run.condition.fidelity;
  row.baseline_fidelity_loss = baseline_loss < 0.0 ? row.fidelity_loss : baseline_loss;
  return row;
}

void ProtocolConfig::validate() const {
  if (!(p1 > 0.0 && p1 < 1.0) || !(p2 > 0.0 && p2 < 1.0)) {
    throw Error("p1 and p2 must lie strictly inside (0, 1)");
  }
  if (!std::isfinite(theta)) throw Error("theta must be finite");
  if (!std::isfinite(eta)) throw Error("eta must be finite");
  if (m < 0 || m > kMaxExperimentalM) throw Error("m must lie in [0, 16]");
  if (!(g > 0.0) || !std::isfinite(g)) throw Error("g must be positive");
  if (cutoff < 3) throw Error("cutoff must be at least 3 (two photons plus a leakage level)");
}

double ProtocolConfig::interaction_angle() const {
  constexpr double pi = std::numbers::pi;
  return pi / 4.0 + 2.0 * pi * static_cast<double>(m);
}

double ProtocolConfig::interaction_time() const { return interaction_angle() / g; }

EntangledInitSpec ProtocolConfig::init_spec() const { return {p1, p2, theta, theta, eta}; }

StateVector prepared_state(const ProtocolConfig& config) {
  config.validate();
  auto state = full_initial_state(config.init_spec(), config.cutoff);
  state = apply_on_factors(state, {kAtom1}, ramsey_unitary(RamseyParams::for_binomial(config.p1, config.theta)));
  state = apply_on_factors(state, {kAtom2}, ramsey_unitary(RamseyParams::for_binomial(config.p2, config.theta)));
  return state;
}

RunResult run_protocol(const ProtocolConfig& config) {
  const double t = config.interaction_time();
  return run_protocol(config, t, t);
}

RunResult run_protocol(const ProtocolConfig& config, double time1, double time2) {
  auto state = prepared_state(config);
  state = evolve_protocol_step(state, config.g, time1, 1);
  state = evolve_protocol_step(state, config.g, time2, 2);

  const auto spec = config.init_spec();
  RunResult result{condition_on_ground_ground(state, spec, config.cutoff), entanglement_report(config.eta),
                   Diagnostics{leakage(state), residual_branch_check(state, spec, config.cutoff), time1, time2}};
  if (result.diagnostics.leakage > kLeakageTolerance) {
    throw Error("population leaked above two photons");
  }
  return result;
}

SweepResult sweep_eta(const ProtocolConfig& config, std::span<const double> eta_grid, unsigned threads) {
  if (eta_grid.empty()) throw Error("eta grid is empty");
  for (double eta : eta_grid) {
    if (!(eta >= 0.0) || !std::isfinite(eta)) throw Error("eta grid values must be finite and >= 0");
  }
  config.validate();
  SweepResult result;
  result.rows.resize(eta_grid.size());
  parallel_for(eta_grid.size(), threads, [&](std::size_t i) {
    ProtocolConfig point = config;
    point.eta = eta_grid[i];
    const auto run = run_protocol(point);
    result.rows[i] = sweep_row(point, run);
  });
  return result;
}

SweepResult sweep_timing_jitter(const ProtocolConfig& config, const JitterOptions& options, unsigned threads) {
  if (!(options.rel_sigma >= 0.0) || !std::isfinite(options.rel_sigma)) {
    throw Error("rel_sigma must be finite and >= 0");
  }
  if (options.n_samples < 1) throw Error("jitter sweep needs at least one sample");
  const double baseline_loss = 1.0 - run_protocol(config).condition.fidelity;
  const double t = config.interaction_time();

  SweepResult result;
  result.rows.resize(options.n_samples);
  parallel_for(options.n_samples, threads, [&](std::size_t i) {
    std::mt19937_64 rng(config.seed + i);
    const auto draw = [&]() -> double {
      if (options.rel_sigma == 0.0) return 0.0;
      if (options.distribution == JitterDistribution::gaussian) {
        return std::normal_distribution<double>(0.0, options.rel_sigma)(rng);
      }
      return std::uniform_real_distribution<double>(-options.rel_sigma, options.rel_sigma)(rng);
    };
    const double eps1 = draw();
    const double eps2 = options.mode == JitterMode::shared ? eps1 : draw();
    const auto run = run_protocol(config, t * (1.0 + eps1), t * (1.0 + eps2));
    result.rows[i] = sweep_row(config, run, eps1, eps2, baseline_loss);
  });
  return result;
}

SweepSummary summarize(const SweepResult& result) {
  SweepSummary s;
  s.rows = result.rows.size();
  if (result.rows.empty()) return s;
  s.min_fidelity = result.rows.front().fidelity;
  s.min_success = result.rows.front().success_prob_sim;
  for (const auto& r : result.rows) {
    s.mean_fidelity += r.fidelity;
    s.mean_success += r.success_prob_sim;
    s.mean_fidelity_loss += r.fidelity_loss;
    s.min_fidelity = std::min(s.min_fidelity, r.fidelity);
    s.min_success = std::min(s.min_success, r.success_prob_sim);
  }
  const auto n = static_cast<double>(result.rows.size());
  s.mean_fidelity /= n;
  s.mean_success /= n;
  s.mean_fidelity_loss /= n;
  s.baseline_fidelity_loss = result.rows.front().baseline_fidelity_loss;
  return s;
}

std::vector<TimingSolution> find_timing(int m_min, int m_max, bool allow_wide) {
  return solve_timing(m_min, m_max, allow_wide);
}

std::string format_timing_table(std::span<const TimingSolution> solutions) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof line, "%4s  %22s  %22s  %22s\n", "m", "gT", "delta", "sin+cos-sqrt2");
  out << line;
  for (const auto& s : solutions) {
    const double residual = std::sin(s.gT) + std::cos(s.gT) - std::numbers::sqrt2;
    std::snprintf(line, sizeof line, "%4d  %22.15g  %22.15g  %22.3e\n", s.m, s.gT, s.delta, residual);
    out << line;
  }
  return out.str();
}

}  // namespace cqed
