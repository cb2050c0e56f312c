#pragma once
// Independent reference computations used only by the tests.

#include "relaysec/channel.hpp"
#include "relaysec/hw_profile.hpp"

#include <cmath>
#include <random>

namespace oracle {

inline double sq(double x) { return x * x; }

// SNDRs by direct power accounting of every received component (N0 = 1, powers in units of P/N0).
struct Sndr {
  double relay, destination;
};

inline Sndr power_accounting(const relaysec::ChannelRealization& r, const relaysec::EvmProfile& k, double lam) {
  const double jam = (1.0 - lam) * r.gamma_rd;
  const double leak = sq(k.k_S_t) * lam * r.gamma_u + sq(k.k_D_t) * (1.0 - lam) * r.gamma_v +
                      sq(k.k_R_r) * (lam * r.gamma_sr + (1.0 - lam) * r.gamma_rd) + 1.0;
  const double relay_in = lam * r.gamma_sr + jam + leak;
  const double relay = lam * r.gamma_sr / (jam + leak);
  // D removes the jamming; everything else R received is forwarded with gain^2 = rho / relay_in,
  // plus relay transmit distortion, D receive distortion and noise.
  const double destination =
      lam * r.gamma_sr * r.gamma_rd / (r.gamma_rd * leak + relay_in * ((sq(k.k_R_t) + sq(k.k_D_r)) * r.gamma_rd + 1.0));
  return {relay, destination};
}

// The destination-side lambda coefficient exactly as printed, including the sign of the
// k_Dr^2 k_Dt^2 gamma_v term.
inline double a_d_as_printed(const relaysec::ChannelRealization& r, const relaysec::EvmProfile& k) {
  const double st = sq(k.k_S_t), rt = sq(k.k_R_t), rr = sq(k.k_R_r), dt = sq(k.k_D_t), dr = sq(k.k_D_r);
  const double kr = rt + rr;
  return (r.gamma_sr - r.gamma_rd) * (dr * rr + rr * rt + kr + dr) + r.gamma_u * (dr * st + rt * st + st) +
         r.gamma_v * (dr * dt - rt * dt - dt) + (r.nu - 1.0) * (1.0 + rr) + r.gamma_u / r.gamma_rd * st -
         r.gamma_v / r.gamma_rd * dt;
}

// e^t E1(t) = int_0^inf exp(-t (e^s - 1)) ds, by composite Simpson on a truncated range.
inline double scaled_e1(double t) {
  const double upper = std::log1p(60.0 / t);
  const int n = 200000;
  const double h = upper / n;
  double s = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double x = i * h;
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    s += w * std::exp(-t * std::expm1(x));
  }
  return s * h / 3.0;
}

inline relaysec::EvmProfile random_profile(std::mt19937_64& g, double lo = 0.02, double hi = 0.175) {
  std::uniform_real_distribution<double> u(lo, hi);
  return {u(g), u(g), u(g), u(g), u(g)};
}

inline double log_uniform(std::mt19937_64& g, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(g));
}

}  // namespace oracle
