#pragma once

#include "relaysec/channel.hpp"
#include "relaysec/common.hpp"
#include "relaysec/hw_profile.hpp"
#include "relaysec/link_math.hpp"
#include "relaysec/specfun.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace relaysec {

struct FadingCdf {
  std::function<double(double)> cdf;
  double mean_snr = 0.0;

  static FadingCdf exponential(double mean_snr);
  // Gamma-distributed SNR with integer shape m (Nakagami-m amplitude).
  static FadingCdf nakagami(int m, double mean_snr);
  static FadingCdf point_mass(double snr);
};

// gamma_D at high SNR as alpha1 G / (alpha2 G + alpha3), G the surviving hop SNR.
struct RatioAlphas {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double alpha3 = 0.0;

  double x_max() const { return alpha1 / alpha2; }
};

RatioAlphas ratio_alphas(const DerivedConstants& c, LinkMode mode);

double ratio_cdf(const FadingCdf& base, double alpha1, double alpha2, double alpha3, double x);

// gamma_first_hop is gamma_rd in DL and gamma_sr in UL.
SndrPair asymptotic_sndr(const DerivedConstants& c, LinkMode mode, double gamma_first_hop);

enum class AllocationMethod { numeric, exact, high_snr, epa };

std::string_view to_string(AllocationMethod method);
AllocationMethod parse_allocation(std::string_view text);

struct EsrResult {
  double esr = 0.0;          // unclamped where the path allows a negative value
  double esr_clamped = 0.0;  // max(esr, 0)
  std::string method;
  double ci_halfwidth = 0.0;
  double raw_mean = 0.0;     // Monte-Carlo mean of the unclamped rate
  double lambda_mean = 0.0;
  bool converged = true;
};

EsrResult esr_closed(const DerivedConstants& c, LinkMode mode, double mean_snr);
EsrResult esr_general(const DerivedConstants& c, LinkMode mode, const FadingCdf& fading,
                      const QuadratureSpec& spec = {});

struct McOptions {
  std::uint64_t n_trials = 100000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

EsrResult esr_monte_carlo(const ScenarioConfig& config, const EvmProfile& profile, AllocationMethod method,
                          const McOptions& options);

double rate_threshold(const DerivedConstants& c, LinkMode mode);

struct SopResult {
  double probability = 0.0;
  std::string method;
  double rate_threshold = 0.0;
  double ci_halfwidth = 0.0;
  double lambda_mean = 0.0;
};

SopResult sop(const DerivedConstants& c, LinkMode mode, const FadingCdf& fading, double target_rate);
SopResult sop_rayleigh(const DerivedConstants& c, LinkMode mode, double mean_snr, double target_rate);

SopResult sop_monte_carlo(const ScenarioConfig& config, const EvmProfile& profile, AllocationMethod method,
                          double target_rate, const McOptions& options);
// One pass over the trials, one result per target rate.
std::vector<SopResult> sop_monte_carlo(const ScenarioConfig& config, const EvmProfile& profile,
                                       AllocationMethod method, const std::vector<double>& target_rates,
                                       const McOptions& options);

// Power fraction used for one realization under the given allocation rule.
double allocate(const ChannelRealization& r, const DerivedConstants& c, LinkMode mode, AllocationMethod method);

}  // namespace relaysec
