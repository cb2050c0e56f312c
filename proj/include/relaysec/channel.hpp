#pragma once

#include "relaysec/common.hpp"
#include "relaysec/hw_profile.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace relaysec {

struct ScenarioConfig {
  LinkMode mode = LinkMode::downlink;
  int n_antennas = 1;  // N_s in DL, N_d in UL
  double rho = 1.0;    // linear transmit SNR P/N0
  double mu_sr = 1.0;
  double mu_rd = 1.0;

  void validate() const;
};

// Per-frame SNR statistics. gamma_u and gamma_v are rho * sum|h|^4 / ||h||^2 of the
// S-R and R-D hops respectively.
struct ChannelRealization {
  double gamma_sr = 0.0;
  double gamma_rd = 0.0;
  double gamma_u = 0.0;
  double gamma_v = 0.0;
  double nu = 0.0;
};

ChannelRealization make_realization(double gamma_sr, double gamma_rd, double gamma_u, double gamma_v);

struct ChannelDraw {
  std::vector<std::complex<double>> h_sr;
  std::vector<std::complex<double>> h_rd;
};

ChannelDraw draw_channel(const ScenarioConfig& config, std::uint64_t seed, std::uint64_t trial_index);
ChannelRealization realization_from(const ScenarioConfig& config, const ChannelDraw& draw);
ChannelRealization sample_channel(const ScenarioConfig& config, std::uint64_t seed, std::uint64_t trial_index);

// A channel vector pair reproducing the realization's statistics exactly (the SNDRs depend
// on the vectors only through ||h||^2 and sum|h|^4).
ChannelDraw equivalent_channel(const ScenarioConfig& config, const ChannelRealization& realization);

struct EmpiricalSndr {
  double gamma_R = 0.0;
  double gamma_D = 0.0;
};

// Waveform-level estimate: block fading, per-symbol Gaussian data, jamming, distortion and noise.
EmpiricalSndr empirical_sndr(const ScenarioConfig& config, const EvmProfile& profile, const ChannelDraw& draw,
                             double lambda, std::uint64_t n_symbols, std::uint64_t seed);
EmpiricalSndr empirical_sndr(const ScenarioConfig& config, const EvmProfile& profile,
                             const ChannelRealization& realization, double lambda, std::uint64_t n_symbols,
                             std::uint64_t seed);

}  // namespace relaysec
