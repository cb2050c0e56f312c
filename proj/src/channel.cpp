#include "relaysec/channel.hpp"

#include "relaysec/link_math.hpp"
#include "relaysec/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace relaysec {

void ScenarioConfig::validate() const {
  if (n_antennas < 1) throw std::invalid_argument("n_antennas must be >= 1");
  if (!(rho > 0.0)) throw std::invalid_argument("rho must be positive");
  if (!(mu_sr > 0.0) || !(mu_rd > 0.0)) throw std::invalid_argument("average channel gains must be positive");
}

ChannelRealization make_realization(double gamma_sr, double gamma_rd, double gamma_u, double gamma_v) {
  return {gamma_sr, gamma_rd, gamma_u, gamma_v, gamma_sr / gamma_rd};
}

ChannelDraw draw_channel(const ScenarioConfig& config, std::uint64_t seed, std::uint64_t trial_index) {
  const bool dl = config.mode == LinkMode::downlink;
  const auto n_sr = static_cast<std::size_t>(dl ? config.n_antennas : 1);
  const auto n_rd = static_cast<std::size_t>(dl ? 1 : config.n_antennas);
  GaussianStream g(seed, trial_index);
  ChannelDraw d;
  d.h_sr.reserve(n_sr);
  d.h_rd.reserve(n_rd);
  for (std::size_t i = 0; i < n_sr; ++i) d.h_sr.push_back(g.complex_normal(config.mu_sr));
  for (std::size_t i = 0; i < n_rd; ++i) d.h_rd.push_back(g.complex_normal(config.mu_rd));
  return d;
}

namespace {

struct Moments {
  double m2 = 0.0;
  double m4 = 0.0;
};

Moments moments(const std::vector<std::complex<double>>& h) {
  Moments m;
  for (const auto& x : h) {
    const double p = std::norm(x);
    m.m2 += p;
    m.m4 += p * p;
  }
  return m;
}

double norm_of(const std::vector<std::complex<double>>& h) { return std::sqrt(moments(h).m2); }

}  // namespace

ChannelRealization realization_from(const ScenarioConfig& config, const ChannelDraw& draw) {
  const auto sr = moments(draw.h_sr);
  const auto rd = moments(draw.h_rd);
  const double rho = config.rho;
  const double g_sr = rho * sr.m2;
  const double g_rd = rho * rd.m2;
  // single-antenna hops give exactly gamma_u = gamma_sr, gamma_v = gamma_rd
  const double g_u = draw.h_sr.size() == 1 ? g_sr : (sr.m2 > 0.0 ? rho * sr.m4 / sr.m2 : 0.0);
  const double g_v = draw.h_rd.size() == 1 ? g_rd : (rd.m2 > 0.0 ? rho * rd.m4 / rd.m2 : 0.0);
  return make_realization(g_sr, g_rd, g_u, g_v);
}

ChannelRealization sample_channel(const ScenarioConfig& config, std::uint64_t seed, std::uint64_t trial_index) {
  return realization_from(config, draw_channel(config, seed, trial_index));
}

namespace {

// One antenna at power a, the remaining n-1 sharing total - a equally; a is chosen so that
// sum|h|^4 matches.
std::vector<std::complex<double>> synthesize(int n, double total, double fourth) {
  if (n == 1) return {std::complex<double>(std::sqrt(total), 0.0)};
  const double disc = std::max(0.0, (n - 1) * (n * fourth - total * total));
  const double a = (total + std::sqrt(disc)) / n;
  const double rest = std::max(0.0, (total - a) / (n - 1));
  std::vector<std::complex<double>> h(static_cast<std::size_t>(n), std::complex<double>(std::sqrt(rest), 0.0));
  h[0] = std::sqrt(a);
  return h;
}

}  // namespace

ChannelDraw equivalent_channel(const ScenarioConfig& config, const ChannelRealization& r) {
  const double rho = config.rho;
  const bool dl = config.mode == LinkMode::downlink;
  ChannelDraw d;
  if (dl) {
    const double total = r.gamma_sr / rho;
    d.h_sr = synthesize(config.n_antennas, total, total * r.gamma_u / rho);
    d.h_rd = synthesize(1, r.gamma_rd / rho, 0.0);
  } else {
    const double total = r.gamma_rd / rho;
    d.h_sr = synthesize(1, r.gamma_sr / rho, 0.0);
    d.h_rd = synthesize(config.n_antennas, total, total * r.gamma_v / rho);
  }
  return d;
}

EmpiricalSndr empirical_sndr(const ScenarioConfig& config, const EvmProfile& profile, const ChannelDraw& draw,
                             double lambda, std::uint64_t n_symbols, std::uint64_t seed) {
  if (!(lambda > 0.0 && lambda <= 1.0)) throw std::domain_error("power fraction lambda must lie in (0, 1]");
  if (n_symbols == 0) throw std::invalid_argument("n_symbols must be positive");
  config.validate();
  const auto c = derive_constants(profile);
  const auto r = realization_from(config, draw);
  const double power = config.rho;  // N0 = 1
  const double gain = amplification_gain(r, c, lambda, config.rho);

  const auto& hsr = draw.h_sr;
  const auto& hrd = draw.h_rd;
  const double nsr = norm_of(hsr);
  const double nrd = norm_of(hrd);
  if (!(nsr > 0.0) || !(nrd > 0.0)) throw std::domain_error("empirical_sndr needs nonzero channels");

  const double k2_st = profile.k_S_t * profile.k_S_t;
  const double k2_rt = profile.k_R_t * profile.k_R_t;
  const double k2_rr = profile.k_R_r * profile.k_R_r;
  const double k2_dt = profile.k_D_t * profile.k_D_t;
  const double k2_dr = profile.k_D_r * profile.k_D_r;

  // per-antenna distortion variances; MRT weights put |h_i|^2/||h||^2 of the power on antenna i
  std::vector<double> var_st(hsr.size()), var_dt(hrd.size()), var_dr(hrd.size());
  for (std::size_t i = 0; i < hsr.size(); ++i) var_st[i] = lambda * power * k2_st * std::norm(hsr[i]) / (nsr * nsr);
  for (std::size_t i = 0; i < hrd.size(); ++i) {
    var_dt[i] = (1.0 - lambda) * power * k2_dt * std::norm(hrd[i]) / (nrd * nrd);
    var_dr[i] = power * k2_dr * std::norm(hrd[i]);
  }
  const double var_rr = power * k2_rr * (lambda * nsr * nsr + (1.0 - lambda) * nrd * nrd);
  const double var_rt = power * k2_rt;
  const double amp_s = std::sqrt(lambda * power) * nsr;
  const double amp_j = std::sqrt((1.0 - lambda) * power) * nrd;

  GaussianStream g(seed, 0x5EED5EEDu);
  double sig_r = 0.0, int_r = 0.0, sig_d = 0.0, int_d = 0.0;
  for (std::uint64_t s = 0; s < n_symbols; ++s) {
    const auto xs = g.complex_normal();
    const auto xd = g.complex_normal();
    const std::complex<double> signal = amp_s * xs;
    std::complex<double> interference = amp_j * xd;
    for (std::size_t i = 0; i < hsr.size(); ++i) interference += hsr[i] * g.complex_normal(var_st[i]);
    for (std::size_t i = 0; i < hrd.size(); ++i) interference += hrd[i] * g.complex_normal(var_dt[i]);
    interference += g.complex_normal(var_rr) + g.complex_normal(1.0);
    sig_r += std::norm(signal);
    int_r += std::norm(interference);

    // relay forwards G*y_R plus its transmit distortion; D subtracts its own known jamming
    const std::complex<double> forwarded = gain * (interference - amp_j * xd) + g.complex_normal(var_rt);
    std::complex<double> residual = 0.0;  // MRC output minus the desired term
    for (std::size_t j = 0; j < hrd.size(); ++j) {
      const auto y = hrd[j] * forwarded + g.complex_normal(var_dr[j]) + g.complex_normal(1.0);
      residual += std::conj(hrd[j]) * y;
    }
    residual /= nrd;
    const std::complex<double> signal_d = gain * signal * nrd;
    sig_d += std::norm(signal_d);
    int_d += std::norm(residual);
  }
  return {sig_r / int_r, sig_d / int_d};
}

EmpiricalSndr empirical_sndr(const ScenarioConfig& config, const EvmProfile& profile,
                             const ChannelRealization& realization, double lambda, std::uint64_t n_symbols,
                             std::uint64_t seed) {
  return empirical_sndr(config, profile, equivalent_channel(config, realization), lambda, n_symbols, seed);
}

}  // namespace relaysec
