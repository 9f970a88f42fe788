// Command-line front end: run, sweep-eta, sweep-jitter, find-timing.

#include <cstdio>
#include <exception>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "cqed/io.hpp"
#include "cqed/protocol.hpp"

namespace {

using Overrides = std::map<std::string, std::string>;

struct Common {
  std::string config;
  std::string out;
  Overrides overrides;
};

void add_override(CLI::App* sub, Overrides& overrides, const std::string& flag, const std::string& key,
                  const std::string& help) {
  sub->add_option_function<std::string>(
      flag, [&overrides, key](const std::string& v) { overrides[key] = v; }, help);
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config, "Flat key = value settings file; flags override it");
  sub->add_option("--out", c.out, "CSV output path");
  add_override(sub, c.overrides, "--seed", "seed", "Base RNG seed (default 0)");
}

void add_protocol_flags(CLI::App* sub, Common& c) {
  add_override(sub, c.overrides, "--p1", "p1", "Single-photon probability, cavity 1 (default 0.3)");
  add_override(sub, c.overrides, "--p2", "p2", "Single-photon probability, cavity 2 (default 0.7)");
  add_override(sub, c.overrides, "--theta", "theta", "Shared mean phase in radians (default 0.4)");
  add_override(sub, c.overrides, "--eta", "eta", "Entanglement parameter (default 1)");
  add_override(sub, c.overrides, "--m", "m", "Timing index, gT = pi/4 + 2 m pi, 0..16 (default 5)");
  add_override(sub, c.overrides, "--g", "g", "Coupling constant in rad/s (default 1)");
  add_override(sub, c.overrides, "--cutoff", "cutoff", "Fock cutoff per cavity, >= 3 (default 3)");
}

cqed::RunSettings resolve(const Common& c) {
  cqed::RunSettings settings;
  if (!c.config.empty()) cqed::load_settings(c.config, settings);
  for (const auto& [key, value] : c.overrides) cqed::apply_setting(settings, key, value);
  return settings;
}

void print_row(const cqed::SweepRow& r) {
  std::printf("%10.6g %14.10f %14.10f %14.10f %12.6g %10.3g\n", r.eta, r.success_prob_sim,
              r.success_prob_analytic, r.fidelity, r.g_e, r.leakage);
}

void print_header() {
  std::printf("%10s %14s %14s %14s %12s %10s\n", "eta", "P_sim", "P_analytic", "fidelity", "G_E",
              "leakage");
}

int cmd_run(const Common& c) {
  const auto settings = resolve(c);
  const auto& cfg = settings.protocol;
  const auto run = cqed::run_protocol(cfg);
  const auto& b = run.diagnostics.branches;
  std::printf("gT                     %.15g\n", cfg.interaction_angle());
  std::printf("success_prob_sim       %.12f\n", run.condition.success_prob);
  std::printf("success_prob_analytic  %.12f\n", run.entanglement.p_succ_analytic);
  std::printf("fidelity               %.12f\n", run.condition.fidelity);
  std::printf("g_e                    %.12f\n", run.entanglement.g_e);
  std::printf("leakage                %.3e\n", run.diagnostics.leakage);
  std::printf("branches uu/ud/du/dd   %.6e %.6e %.6e %.6e\n", b.up_up, b.up_down, b.down_up, b.down_down);
  std::printf("branch check           %s\n", b.passed ? "ok" : "FAILED");
  if (!c.out.empty()) {
    cqed::emit_csv(cqed::SweepResult{{cqed::sweep_row(cfg, run)}}, c.out);
  }
  return 0;
}

int cmd_sweep_eta(const Common& c) {
  const auto settings = resolve(c);
  const auto result = cqed::sweep_eta(settings.protocol, settings.eta_grid);
  print_header();
  for (const auto& r : result.rows) print_row(r);
  if (!c.out.empty()) cqed::emit_csv(result, c.out);
  return 0;
}

int cmd_sweep_jitter(const Common& c) {
  const auto settings = resolve(c);
  const auto result = cqed::sweep_timing_jitter(settings.protocol, settings.jitter);
  const auto s = cqed::summarize(result);
  std::printf("samples                 %zu\n", s.rows);
  std::printf("rel_sigma               %.3g\n", settings.jitter.rel_sigma);
  std::printf("mean fidelity           %.12f\n", s.mean_fidelity);
  std::printf("min fidelity            %.12f\n", s.min_fidelity);
  std::printf("mean success prob       %.12f\n", s.mean_success);
  std::printf("min success prob        %.12f\n", s.min_success);
  std::printf("mean fidelity loss      %.6e\n", s.mean_fidelity_loss);
  std::printf("zero-jitter loss        %.6e\n", s.baseline_fidelity_loss);
  if (!c.out.empty()) cqed::emit_csv(result, c.out);
  return 0;
}

int cmd_find_timing(const Common& c) {
  const auto settings = resolve(c);
  const auto table = cqed::find_timing(settings.m_min, settings.m_max, settings.allow_wide);
  std::cout << cqed::format_timing_table(table);
  if (!c.out.empty()) cqed::emit_timing_csv(table, c.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conditional generation of entangled two-photon binomial states in two cavities"};
  app.require_subcommand(1);

  Common run_opts, eta_opts, jitter_opts, timing_opts;

  auto* run = app.add_subcommand("run", "Run the protocol once and report diagnostics");
  add_common(run, run_opts);
  add_protocol_flags(run, run_opts);

  auto* sweep_eta = app.add_subcommand("sweep-eta", "Success probability and fidelity over an eta grid");
  add_common(sweep_eta, eta_opts);
  add_protocol_flags(sweep_eta, eta_opts);
  add_override(sweep_eta, eta_opts.overrides, "--eta-grid", "eta_grid",
               "Comma-separated eta values (default 0,0.25,0.5,1,2,4,10)");

  auto* sweep_jitter = app.add_subcommand("sweep-jitter", "Interaction-time jitter sensitivity");
  add_common(sweep_jitter, jitter_opts);
  add_protocol_flags(sweep_jitter, jitter_opts);
  add_override(sweep_jitter, jitter_opts.overrides, "--rel-sigma", "rel_sigma",
               "Relative timing error dT/T (default 0.01)");
  add_override(sweep_jitter, jitter_opts.overrides, "--samples", "samples", "Number of samples (default 100)");
  add_override(sweep_jitter, jitter_opts.overrides, "--dist", "jitter_dist",
               "uniform (eps in [-s, s]) or gaussian (sd s) (default uniform)");
  add_override(sweep_jitter, jitter_opts.overrides, "--mode", "jitter_mode",
               "shared (one eps for both cavities) or independent (default shared)");

  auto* find_timing = app.add_subcommand("find-timing", "Tabulate gT = pi/4 + 2 m pi and its residual delta");
  add_common(find_timing, timing_opts);
  add_override(find_timing, timing_opts.overrides, "--m-min", "m_min", "First m (default 0)");
  add_override(find_timing, timing_opts.overrides, "--m-max", "m_max", "Last m (default 16)");
  add_override(find_timing, timing_opts.overrides, "--allow-wide", "allow_wide",
               "Permit m above 16: true|false (default false)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(run_opts);
    if (*sweep_eta) return cmd_sweep_eta(eta_opts);
    if (*sweep_jitter) return cmd_sweep_jitter(jitter_opts);
    if (*find_timing) return cmd_find_timing(timing_opts);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 1;
}
