// Command-line front end: figure sweeps, single-realization OPA, hardware design, self-checks.
#include "relaysec/hw_design.hpp"
#include "relaysec/opa.hpp"
#include "relaysec/secrecy_metrics.hpp"
#include "relaysec/specfun.hpp"
#include "relaysec/sweep.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace relaysec;

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
  std::string mode;
  std::optional<double> evm;
  std::string iv;
  double k_s_t = 0.1;
  std::string out;
  std::optional<unsigned> threads;
};

std::array<double, 4> parse_iv(const std::string& text) {
  std::array<double, 4> v{};
  std::stringstream ss(text);
  std::string item;
  std::size_t i = 0;
  while (std::getline(ss, item, ',')) {
    if (i >= 4) throw UsageError("--iv takes exactly four comma-separated values");
    try {
      v[i++] = std::stod(item);
    } catch (const std::exception&) {
      throw UsageError("--iv value '" + item + "' is not a number");
    }
  }
  if (i != 4) throw UsageError("--iv takes exactly four comma-separated values");
  return v;
}

std::optional<EvmProfile> profile_override(const Common& o) {
  if (o.evm && !o.iv.empty()) throw UsageError("--evm and --iv are mutually exclusive");
  if (o.evm) return EvmProfile::uniform(*o.evm);
  if (!o.iv.empty()) return EvmProfile::from_iv(o.k_s_t, parse_iv(o.iv));
  return std::nullopt;
}

void add_common(CLI::App* cmd, Common& o, bool with_config) {
  if (with_config) cmd->add_option("--config", o.config, "JSON sweep spec")->required();
  cmd->add_option("--seed", o.seed, "RNG seed");
  cmd->add_option("--trials", o.trials, "Monte-Carlo trials per point");
  cmd->add_option("--mode", o.mode, "dl or ul")->check(CLI::IsMember({"dl", "ul", "DL", "UL"}));
  cmd->add_option("--evm", o.evm, "uniform EVM for every chain");
  cmd->add_option("--iv", o.iv, "k_R_t,k_R_r,k_D_t,k_D_r");
  cmd->add_option("--k-st", o.k_s_t, "source transmit EVM used with --iv");
  cmd->add_option("--out", o.out, "output path (default stdout or the config's output)");
  cmd->add_option("--threads", o.threads, "Monte-Carlo worker threads");
}

int cmd_sweep(const Common& o, SweepMetric metric) {
  SweepSpec spec = load_sweep_spec(o.config);
  spec.metric = metric;
  if (o.seed) spec.seed = *o.seed;
  if (o.trials) spec.n_trials = *o.trials;
  if (o.threads) spec.threads = *o.threads;
  if (!o.mode.empty()) spec.modes = {parse_mode(o.mode)};
  if (auto p = profile_override(o)) spec.profiles = {{"override", *p}};
  if (!o.out.empty()) spec.output_path = o.out;
  spec.validate();
  for (const auto& np : spec.profiles)
    for (const auto& w : np.profile.warnings()) std::cerr << "warning: " << np.name << ": " << w << '\n';

  if (spec.output_path.empty() || spec.output_path == "-") {
    run_sweep(spec, std::cout);
    return 0;
  }
  const auto parent = std::filesystem::path(spec.output_path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream file(spec.output_path);
  if (!file) throw std::runtime_error("cannot open output " + spec.output_path);
  const auto rows = run_sweep(spec, file);
  std::cerr << "wrote " << rows << " rows to " << spec.output_path << '\n';
  return 0;
}

struct OpaArgs {
  bool high_snr = false;
  double nu = 100.0;
  double gamma_rd = 1e4;
  int n_antennas = 16;
  std::optional<double> snr_db;
};

void print_opa(const char* label, const OpaResult& r) {
  std::printf("%-9s lambda*=%.10g phi=%.10g%s%s", label, r.lambda_star, r.objective_phi, r.clamped ? " clamped" : "",
              r.refined ? " refined" : "");
  if (r.closed_form) std::printf(" closed_form=%.10g", *r.closed_form);
  if (!r.warning.empty()) std::printf(" (%s)", r.warning.c_str());
  std::printf("\n");
}

int cmd_opa(const Common& o, const OpaArgs& a) {
  const LinkMode mode = o.mode.empty() ? LinkMode::downlink : parse_mode(o.mode);
  const EvmProfile profile = profile_override(o).value_or(EvmProfile::uniform(0.1));
  const auto c = derive_constants(profile);
  for (const auto& w : profile.warnings()) std::cerr << "warning: " << w << '\n';

  if (a.snr_db) {
    const ScenarioConfig cfg{mode, a.n_antennas, std::pow(10.0, *a.snr_db / 10.0), 10.0, 10.0};
    const McOptions mc{o.trials.value_or(10000), o.seed.value_or(1), o.threads.value_or(1)};
    std::printf("mode=%s snr_db=%g n_antennas=%d trials=%llu\n", std::string(to_string(mode)).c_str(), *a.snr_db,
                a.n_antennas, static_cast<unsigned long long>(mc.n_trials));
    for (auto m : {AllocationMethod::numeric, AllocationMethod::exact, AllocationMethod::high_snr}) {
      if (a.high_snr && m != AllocationMethod::high_snr) continue;
      const auto r = esr_monte_carlo(cfg, profile, m, mc);
      std::printf("%-9s lambda*_mean=%.6g esr=%.6f\n", std::string(to_string(m)).c_str(), r.lambda_mean, r.esr);
    }
    return 0;
  }

  if (!(a.nu > 0.0) || !(a.gamma_rd > 0.0)) throw UsageError("--nu and --gamma-rd must be positive");
  const double g_sr = a.nu * a.gamma_rd;
  const double shrink = 2.0 / (a.n_antennas + 1.0);
  const auto r = mode == LinkMode::downlink ? make_realization(g_sr, a.gamma_rd, g_sr * shrink, a.gamma_rd)
                                            : make_realization(g_sr, a.gamma_rd, g_sr, a.gamma_rd * shrink);
  std::printf("mode=%s nu=%g gamma_sr=%g gamma_rd=%g gamma_u=%g gamma_v=%g\n", std::string(to_string(mode)).c_str(),
              r.nu, r.gamma_sr, r.gamma_rd, r.gamma_u, r.gamma_v);
  const auto k = link_coefficients(r, c, mode);
  print_opa("high_snr", opa_high_snr(k, r));
  if (a.high_snr) return 0;
  print_opa("exact", opa_exact(k));
  // golden search on the coefficient form, then on the full SNDR expressions
  print_opa("rational", opa_numeric(k.relay(), k.destination()));
  print_opa("numeric", opa_numeric(r, c));
  return 0;
}

struct DesignArgs {
  double kr_tot = 0.2;
  double kd_tot = 0.2;
  std::vector<double> snr_db{10.0, 40.0};
  int n_antennas = 16;
};

int cmd_design(const Common& o, const DesignArgs& a) {
  const LinkMode mode = o.mode.empty() ? LinkMode::downlink : parse_mode(o.mode);
  const DesignBudget budget{a.kr_tot, a.kd_tot, mode};
  const auto opt = optimal_design(budget);
  std::printf("mode=%s k_R_tot=%g k_D_tot=%g k_S_t=%g\n", std::string(to_string(mode)).c_str(), a.kr_tot, a.kd_tot,
              o.k_s_t);
  std::printf("optimal IV = [%.4f, %.4f, %.4f, %.4f]\n", opt.k_R_t, opt.k_R_r, opt.k_D_t, opt.k_D_r);
  const auto designs = reference_designs(budget);
  for (std::size_t i = 0; i < designs.size(); ++i) {
    const auto c = derive_constants(EvmProfile::from_iv(o.k_s_t, designs[i].iv()));
    const auto& d = designs[i];
    std::printf("design %zu IV=[%.4f, %.4f, %.4f, %.4f] phi_inf=%.6f ceiling=%.6f bits/s/Hz\n", i + 1, d.k_R_t,
                d.k_R_r, d.k_D_t, d.k_D_r, ceiling_phi(c, mode), ceiling_esr(c, mode));
  }
  const McOptions mc{o.trials.value_or(20000), o.seed.value_or(1), o.threads.value_or(1)};
  ScenarioConfig cfg{mode, a.n_antennas, 1.0, 10.0, 10.0};
  const std::vector<DesignVector> list(designs.begin(), designs.end());
  std::printf("snr_db,design,method,esr,ci_halfwidth\n");
  for (const auto method : {AllocationMethod::numeric, AllocationMethod::epa}) {
    const auto rows = design_compare(budget, cfg, method == AllocationMethod::numeric ? list
                                                                                     : std::vector{list.back()},
                                     a.snr_db, mc, o.k_s_t, method);
    for (const auto& row : rows)
      std::printf("%g,%zu,%s,%.6f,%.6f\n", row.snr_db,
                  method == AllocationMethod::numeric ? row.design + 1 : std::size_t{4},
                  std::string(to_string(row.method)).c_str(), row.esr.esr, row.esr.ci_halfwidth);
  }
  return 0;
}

struct Checker {
  int failures = 0;
  void operator()(bool ok, const std::string& name, double measured, double bound) {
    std::printf("[%s] %s: %.3g (bound %.3g)\n", ok ? " ok " : "FAIL", name.c_str(), measured, bound);
    if (!ok) ++failures;
  }
};

int cmd_validate(const Common& o, bool quick) {
  Checker check;
  const auto c = derive_constants(EvmProfile::uniform(0.1));
  const auto zero = derive_constants(EvmProfile{});
  const std::uint64_t seed = o.seed.value_or(1);

  double worst = 0.0;
  for (std::uint64_t t = 0; t < 200; ++t) {
    const auto r = sample_channel({LinkMode::downlink, 4, 100.0, 10.0, 10.0}, seed, t);
    for (double lam : {0.01, 0.3, 0.9}) {
      const auto a = sndr_pair(r, zero, lam);
      const auto b = sndr_perfect(r, lam);
      worst = std::max({worst, std::abs(a.gamma_R / b.gamma_R - 1.0), std::abs(a.gamma_D / b.gamma_D - 1.0)});
    }
  }
  check(worst < 1e-12, "zero-EVM SNDR equals perfect-hardware SNDR", worst, 1e-12);

  worst = 0.0;
  for (double t = 1e-6; t <= 1e3; t *= 3.7) {
    const auto q = integrate([t](double s) { return std::exp(-t * std::exp(s)); }, 0.0,
                             std::log1p(60.0 / t) + 1.0, {1e-15, 1e-13, 4000});
    worst = std::max(worst, std::abs(expint_ei(-t) + q.value));
  }
  check(worst < 1e-10, "Ei against quadrature", worst, 1e-10);

  for (auto mode : {LinkMode::downlink, LinkMode::uplink}) {
    const std::string m(to_string(mode));
    double e = 0.0, s = 0.0;
    for (double db = 0.0; db <= 50.0; db += 5.0) {
      const double g = 10.0 * std::pow(10.0, db / 10.0);
      e = std::max(e, std::abs(esr_closed(c, mode, g).esr - esr_general(c, mode, FadingCdf::exponential(g)).esr));
      for (double rt : {0.25, 1.0})
        s = std::max(s, std::abs(sop_rayleigh(c, mode, g, rt).probability -
                                 sop(c, mode, FadingCdf::exponential(g), rt).probability));
    }
    check(e < 1e-8, m + " ESR closed vs integral", e, 1e-8);
    check(s < 1e-12, m + " SOP closed vs general cdf", s, 1e-12);
    const double d = std::abs(rate_threshold(c, mode) - ceiling_esr(c, mode));
    check(d < 1e-9, m + " rate threshold equals ceiling", d, 1e-9);
  }

  {
    const ScenarioConfig cfg{LinkMode::downlink, 16, 100.0, 10.0, 10.0};
    const auto draw = draw_channel(cfg, seed, 3);
    const auto r = realization_from(cfg, draw);
    const auto emp = empirical_sndr(cfg, EvmProfile::uniform(0.1), draw, 0.3, quick ? 200000 : 1000000, seed);
    const auto ana = sndr_pair(r, c, 0.3);
    check(std::abs(emp.gamma_R / ana.gamma_R - 1.0) < 0.02, "empirical relay SNDR (DL, N=16)",
          std::abs(emp.gamma_R / ana.gamma_R - 1.0), 0.02);
    check(std::abs(emp.gamma_D / ana.gamma_D - 1.0) < 0.02, "empirical destination SNDR (DL, N=16)",
          std::abs(emp.gamma_D / ana.gamma_D - 1.0), 0.02);
  }

  {
    const auto r = make_realization(100.0 * 500.0, 500.0, 100.0 * 500.0 * 2.0 / 17.0, 500.0);
    const auto k = link_coefficients(r, c, LinkMode::downlink);
    const double d = std::abs(opa_exact(k).lambda_star - opa_numeric(k.relay(), k.destination()).lambda_star);
    check(d < 1e-6, "DL exact OPA vs golden section", d, 1e-6);
  }

  {
    const ScenarioConfig cfg{LinkMode::downlink, 16, std::pow(10.0, 4.5), 10.0, 10.0};
    const McOptions mc{quick ? 20000u : 100000u, seed, o.threads.value_or(1)};
    const auto mcr = esr_monte_carlo(cfg, EvmProfile::uniform(0.1), AllocationMethod::numeric, mc);
    const double d = std::abs(mcr.esr - esr_closed(c, LinkMode::downlink, cfg.rho * cfg.mu_rd).esr);
    check(d < 0.05, "DL Monte-Carlo ESR vs closed form at 45 dB", d, 0.05);
  }

  std::printf("%d failure(s)\n", check.failures);
  return check.failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Secrecy analysis of untrusted AF relaying with hardware impairments"};
  app.require_subcommand(1);

  Common sweep_esr_opts, sweep_sop_opts, opa_opts, design_opts, validate_opts;
  auto* sweep_esr = app.add_subcommand("sweep-esr", "ergodic secrecy rate sweep from a JSON spec");
  add_common(sweep_esr, sweep_esr_opts, true);
  auto* sweep_sop = app.add_subcommand("sweep-sop", "secrecy outage sweep from a JSON spec");
  add_common(sweep_sop, sweep_sop_opts, true);

  OpaArgs opa_args;
  auto* opa = app.add_subcommand("opa", "optimal power allocation for one realization");
  add_common(opa, opa_opts, false);
  opa->add_flag("--high-snr", opa_args.high_snr, "only the high-SNR closed form");
  opa->add_option("--nu", opa_args.nu, "gamma_sr / gamma_rd");
  opa->add_option("--gamma-rd", opa_args.gamma_rd, "relay-destination SNR (linear)");
  opa->add_option("--n-antennas", opa_args.n_antennas, "antennas at the multi-antenna node");
  opa->add_option("--snr-db", opa_args.snr_db, "average over sampled realizations at this SNR instead");

  DesignArgs design_args;
  auto* design = app.add_subcommand("design", "optimal EVM splits, ceilings and the Designs 1-4 table");
  add_common(design, design_opts, false);
  design->add_option("--kr-tot", design_args.kr_tot, "relay EVM budget");
  design->add_option("--kd-tot", design_args.kd_tot, "destination EVM budget");
  design->add_option("--snr-db", design_args.snr_db, "SNR points for the table");
  design->add_option("--n-antennas", design_args.n_antennas, "antennas at the multi-antenna node");

  bool quick = false;
  auto* validate = app.add_subcommand("validate", "cross-path identity checks");
  add_common(validate, validate_opts, false);
  validate->add_flag("--quick", quick, "smaller sample sizes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*sweep_esr) return cmd_sweep(sweep_esr_opts, SweepMetric::esr);
    if (*sweep_sop) return cmd_sweep(sweep_sop_opts, SweepMetric::sop);
    if (*opa) return cmd_opa(opa_opts, opa_args);
    if (*design) return cmd_design(design_opts, design_args);
    if (*validate) return cmd_validate(validate_opts, quick);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
