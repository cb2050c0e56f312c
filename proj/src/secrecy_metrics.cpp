#include "relaysec/secrecy_metrics.hpp"

#include "relaysec/opa.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace relaysec {

namespace {

constexpr double two_ln2 = 2.0 * std::numbers::ln2;
constexpr double z95 = 1.959963984540054;

}  // namespace

FadingCdf FadingCdf::exponential(double mean_snr) {
  if (!(mean_snr > 0.0)) throw std::invalid_argument("mean SNR must be positive");
  return {[mean_snr](double x) { return x <= 0.0 ? 0.0 : -std::expm1(-x / mean_snr); }, mean_snr};
}

FadingCdf FadingCdf::nakagami(int m, double mean_snr) {
  if (m < 1) throw std::invalid_argument("Nakagami shape must be >= 1");
  if (!(mean_snr > 0.0)) throw std::invalid_argument("mean SNR must be positive");
  return {[m, mean_snr](double x) {
            if (x <= 0.0) return 0.0;
            const double y = m * x / mean_snr;
            double term = 1.0, sum = 1.0;
            for (int k = 1; k < m; ++k) {
              term *= y / k;
              sum += term;
            }
            return std::clamp(1.0 - std::exp(-y) * sum, 0.0, 1.0);
          },
          mean_snr};
}

FadingCdf FadingCdf::point_mass(double snr) {
  return {[snr](double x) { return x >= snr ? 1.0 : 0.0; }, snr};
}

RatioAlphas ratio_alphas(const DerivedConstants& c, LinkMode mode) {
  const double th = theta(c, mode);
  if (mode == LinkMode::downlink) return {th, c.tau2 * th + c.tau3, c.xi1 * th + c.tau4};
  return {1.0, c.tau2 * (1.0 + th), c.xi2 - c.xi1};
}

double ratio_cdf(const FadingCdf& base, double alpha1, double alpha2, double alpha3, double x) {
  if (x >= alpha1 / alpha2) return 1.0;
  if (x <= 0.0) return base.cdf(0.0);
  return base.cdf(alpha3 * x / (alpha1 - alpha2 * x));
}

SndrPair asymptotic_sndr(const DerivedConstants& c, LinkMode mode, double gamma_first_hop) {
  const double th = theta(c, mode);
  const auto al = ratio_alphas(c, mode);
  SndrPair out;
  out.gamma_R = mode == LinkMode::downlink ? th / (th * (c.xi1 - 1.0) + c.tau1)
                                           : 1.0 / std::sqrt(c.xi1 * (1.0 + c.tau2));
  out.gamma_D = al.alpha1 * gamma_first_hop / (al.alpha2 * gamma_first_hop + al.alpha3);
  return out;
}

std::string_view to_string(AllocationMethod method) {
  switch (method) {
    case AllocationMethod::numeric: return "numeric";
    case AllocationMethod::exact: return "exact";
    case AllocationMethod::high_snr: return "high_snr";
    case AllocationMethod::epa: return "epa";
  }
  return "unknown";
}

AllocationMethod parse_allocation(std::string_view text) {
  if (text == "numeric" || text == "opa") return AllocationMethod::numeric;
  if (text == "exact") return AllocationMethod::exact;
  if (text == "high_snr") return AllocationMethod::high_snr;
  if (text == "epa") return AllocationMethod::epa;
  throw std::invalid_argument("unknown allocation method '" + std::string(text) + "'");
}

namespace {

EsrResult finish_esr(double t1, double t2, std::string method) {
  EsrResult out;
  out.esr = (t1 - t2) / two_ln2;
  out.esr_clamped = std::max(out.esr, 0.0);
  out.raw_mean = out.esr;
  out.method = std::move(method);
  return out;
}

}  // namespace

EsrResult esr_closed(const DerivedConstants& c, LinkMode mode, double mean_snr) {
  if (!(mean_snr > 0.0)) throw std::invalid_argument("mean SNR must be positive");
  const auto al = ratio_alphas(c, mode);
  const double t_outer = al.alpha3 / (al.alpha2 * mean_snr);
  const double t_inner = al.alpha3 / ((al.alpha1 + al.alpha2) * mean_snr);
  const double t1 = exp_scaled_ei(t_outer) - exp_scaled_ei(t_inner);
  const double t2 = std::log1p(asymptotic_sndr(c, mode, mean_snr).gamma_R);
  return finish_esr(t1, t2, "closed");
}

EsrResult esr_general(const DerivedConstants& c, LinkMode mode, const FadingCdf& fading, const QuadratureSpec& spec) {
  const auto al = ratio_alphas(c, mode);
  const double upper = al.x_max() * (1.0 - 1e-12);
  const auto q = integrate(
      [&](double x) { return (1.0 - ratio_cdf(fading, al.alpha1, al.alpha2, al.alpha3, x)) / (1.0 + x); }, 0.0,
      upper, spec);
  const double t2 = std::log1p(asymptotic_sndr(c, mode, fading.mean_snr).gamma_R);
  auto out = finish_esr(q.value, t2, "integral");
  out.converged = q.converged;
  return out;
}

double rate_threshold(const DerivedConstants& c, LinkMode mode) {
  const auto al = ratio_alphas(c, mode);
  const double g_r = asymptotic_sndr(c, mode, 1.0).gamma_R;
  return 0.5 * std::log2((1.0 + al.x_max()) / (1.0 + g_r));
}

namespace {

// argument of the hop cdf at which the secrecy rate equals target_rate; infinite beyond the threshold
double outage_argument(const DerivedConstants& c, LinkMode mode, double target_rate, double& threshold) {
  threshold = rate_threshold(c, mode);
  if (target_rate >= threshold) return INFINITY;
  const auto al = ratio_alphas(c, mode);
  const double g_r = asymptotic_sndr(c, mode, 1.0).gamma_R;
  const double r_tilde = std::exp2(2.0 * target_rate) * (1.0 + g_r) - 1.0;
  return al.alpha3 * r_tilde / (al.alpha1 - al.alpha2 * r_tilde);
}

}  // namespace

SopResult sop(const DerivedConstants& c, LinkMode mode, const FadingCdf& fading, double target_rate) {
  SopResult out;
  out.method = "integral";
  const double arg = outage_argument(c, mode, target_rate, out.rate_threshold);
  out.probability = std::isinf(arg) ? 1.0 : fading.cdf(arg);
  return out;
}

SopResult sop_rayleigh(const DerivedConstants& c, LinkMode mode, double mean_snr, double target_rate) {
  SopResult out;
  out.method = "closed";
  const double arg = outage_argument(c, mode, target_rate, out.rate_threshold);
  out.probability = std::isinf(arg) ? 1.0 : -std::expm1(-arg / mean_snr);
  return out;
}

double allocate(const ChannelRealization& r, const DerivedConstants& c, LinkMode mode, AllocationMethod method) {
  switch (method) {
    case AllocationMethod::numeric: return opa_numeric(r, c).lambda_star;
    case AllocationMethod::exact:
      try {
        return opa_exact(link_coefficients(r, c, mode)).lambda_star;
      } catch (const DlCoefficientsUndefined&) {
        return opa_numeric(r, c).lambda_star;
      }
    case AllocationMethod::high_snr: {
      const double th = theta(c, mode);
      const double raw = mode == LinkMode::downlink ? th / r.nu : 1.0 - th * r.nu;
      return std::clamp(raw, lambda_floor, 1.0);
    }
    case AllocationMethod::epa: return epa().lambda_star;
  }
  return 0.5;
}

namespace {

// Neumaier compensated sum.
struct Compensated {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      carry += (sum - t) + x;
    else
      carry += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + carry; }
};

constexpr std::uint64_t block_size = 2048;

// Runs per-trial work in fixed blocks; block partial sums are reduced in block order so the
// result does not depend on the number of threads.
template <class Trial>
std::vector<double> run_trials(std::uint64_t n_trials, unsigned threads, std::size_t width, Trial&& trial) {
  const std::uint64_t n_blocks = (n_trials + block_size - 1) / block_size;
  std::vector<std::vector<double>> partial(n_blocks, std::vector<double>(width, 0.0));
  std::atomic<std::uint64_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto worker = [&] {
    std::vector<double> row(width);
    try {
      for (std::uint64_t b = next++; b < n_blocks; b = next++) {
        std::vector<Compensated> acc(width);
        const std::uint64_t end = std::min(n_trials, (b + 1) * block_size);
        for (std::uint64_t t = b * block_size; t < end; ++t) {
          trial(t, row);
          for (std::size_t k = 0; k < width; ++k) acc[k].add(row[k]);
        }
        for (std::size_t k = 0; k < width; ++k) partial[b][k] = acc[k].value();
      }
    } catch (...) {
      const std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      next = n_blocks;
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(n_blocks, 1)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
  std::vector<Compensated> total(width);
  for (const auto& p : partial)
    for (std::size_t k = 0; k < width; ++k) total[k].add(p[k]);
  std::vector<double> out(width);
  for (std::size_t k = 0; k < width; ++k) out[k] = total[k].value();
  return out;
}

double wilson_halfwidth(double p, double n) {
  const double z2 = z95 * z95;
  return z95 / (1.0 + z2 / n) * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
}

}  // namespace

EsrResult esr_monte_carlo(const ScenarioConfig& config, const EvmProfile& profile, AllocationMethod method,
                          const McOptions& options) {
  if (options.n_trials == 0) throw std::invalid_argument("n_trials must be >= 1");
  config.validate();
  const auto c = derive_constants(profile);
  const auto sums = run_trials(options.n_trials, options.threads, 4, [&](std::uint64_t t, std::vector<double>& row) {
    const auto r = sample_channel(config, options.seed, t);
    const double lam = allocate(r, c, config.mode, method);
    const auto o = secrecy_outcome(r, c, lam);
    row[0] = o.rate;
    row[1] = o.rate * o.rate;
    row[2] = o.rate_raw;
    row[3] = lam;
  });
  const double n = static_cast<double>(options.n_trials);
  EsrResult out;
  out.method = "monte_carlo";
  out.esr = sums[0] / n;
  out.esr_clamped = out.esr;
  out.raw_mean = sums[2] / n;
  out.lambda_mean = sums[3] / n;
  const double var = n > 1 ? std::max(0.0, (sums[1] - n * out.esr * out.esr) / (n - 1.0)) : 0.0;
  out.ci_halfwidth = z95 * std::sqrt(var / n);
  return out;
}

std::vector<SopResult> sop_monte_carlo(const ScenarioConfig& config, const EvmProfile& profile,
                                       AllocationMethod method, const std::vector<double>& target_rates,
                                       const McOptions& options) {
  if (options.n_trials == 0) throw std::invalid_argument("n_trials must be >= 1");
  config.validate();
  const auto c = derive_constants(profile);
  const std::size_t m = target_rates.size();
  const auto sums =
      run_trials(options.n_trials, options.threads, m + 1, [&](std::uint64_t t, std::vector<double>& row) {
        const auto r = sample_channel(config, options.seed, t);
        const double lam = allocate(r, c, config.mode, method);
        const double rate = secrecy_outcome(r, c, lam).rate;
        for (std::size_t k = 0; k < m; ++k) row[k] = rate < target_rates[k] ? 1.0 : 0.0;
        row[m] = lam;
      });
  const double n = static_cast<double>(options.n_trials);
  double threshold = NAN;
  try {
    threshold = rate_threshold(c, config.mode);
  } catch (const AsymptoticUndefined&) {
    threshold = INFINITY;
  }
  std::vector<SopResult> out(m);
  for (std::size_t k = 0; k < m; ++k) {
    out[k].probability = sums[k] / n;
    out[k].method = "monte_carlo";
    out[k].rate_threshold = threshold;
    out[k].ci_halfwidth = wilson_halfwidth(out[k].probability, n);
    out[k].lambda_mean = sums[m] / n;
  }
  return out;
}

SopResult sop_monte_carlo(const ScenarioConfig& config, const EvmProfile& profile, AllocationMethod method,
                          double target_rate, const McOptions& options) {
  return sop_monte_carlo(config, profile, method, std::vector<double>{target_rate}, options).front();
}

}  // namespace relaysec
