#include "relaysec/link_math.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace relaysec {

namespace {

double sq(double x) { return x * x; }

void check_lambda(double lambda) {
  if (!(lambda > 0.0 && lambda <= 1.0)) throw std::domain_error("power fraction lambda must lie in (0, 1]");
}

void check_rd(const ChannelRealization& r) {
  if (!(r.gamma_rd > 0.0)) throw std::domain_error("gamma_rd must be positive");
}

}  // namespace

double amplification_gain(const ChannelRealization& r, const DerivedConstants& c, double lambda, double rho) {
  check_lambda(lambda);
  const auto& p = c.profile;
  const double a_g = (r.gamma_sr - r.gamma_rd) * (1.0 + sq(p.k_R_r)) + sq(p.k_S_t) * r.gamma_u -
                     sq(p.k_D_t) * r.gamma_v;
  const double b_g = r.gamma_rd * (1.0 + sq(p.k_R_r)) + sq(p.k_D_t) * r.gamma_v + 1.0;
  const double denom = a_g * lambda + b_g;
  if (!(denom > 0.0)) throw std::domain_error("amplification gain radicand A_G*lambda + B_G is not positive");
  return std::sqrt(rho / denom);
}

RelayTerms relay_terms(const ChannelRealization& r, const DerivedConstants& c) {
  check_rd(r);
  const auto& p = c.profile;
  const double rr = sq(p.k_R_r);
  const double u = r.gamma_u / r.gamma_rd;
  const double v = r.gamma_v / r.gamma_rd;
  RelayTerms t;
  t.a_r = rr * r.nu + sq(p.k_S_t) * u - sq(p.k_D_t) * v - rr - 1.0;
  t.b_r = 1.0 + rr + sq(p.k_D_t) * v + 1.0 / r.gamma_rd;
  return t;
}

DestinationTerms destination_terms(const ChannelRealization& r, const DerivedConstants& c) {
  check_rd(r);
  const auto& p = c.profile;
  const double st = sq(p.k_S_t);
  const double rt = sq(p.k_R_t);
  const double rr = sq(p.k_R_r);
  const double dt = sq(p.k_D_t);
  const double dr = sq(p.k_D_r);
  const double u = r.gamma_u / r.gamma_rd;
  const double v = r.gamma_v / r.gamma_rd;

  DestinationTerms t;
  t.shared = dr * rr + rr * rt + c.k_R_sq + dr;
  t.src_distortion = r.gamma_u * st * (dr + rt + 1.0);
  t.jam_distortion = r.gamma_v * dt * (dr + rt + 1.0);
  t.a_d = (r.gamma_sr - r.gamma_rd) * t.shared + t.src_distortion - t.jam_distortion +
          (r.nu - 1.0) * (1.0 + rr) + u * st - v * dt;
  t.b_d = r.gamma_rd * t.shared + t.jam_distortion + v * dt + 1.0 / r.gamma_rd + c.k_R_sq + dr + 2.0;
  return t;
}

ExactForms exact_forms(const ChannelRealization& r, const DerivedConstants& c) {
  const auto rt = relay_terms(r, c);
  const auto dt = destination_terms(r, c);
  return {{r.nu, rt.a_r, rt.b_r}, {r.gamma_sr, dt.a_d, dt.b_d}};
}

SndrPair sndr_pair(const ChannelRealization& r, const DerivedConstants& c, double lambda) {
  check_lambda(lambda);
  const auto dt = destination_terms(r, c);
  const auto& p = c.profile;
  const double rr = sq(p.k_R_r);
  const double st_u = sq(p.k_S_t) * r.gamma_u / r.gamma_rd;
  const double dt_v = sq(p.k_D_t) * r.gamma_v / r.gamma_rd;
  const double rest = 1.0 - lambda;
  // A*lambda + B regrouped into lambda and (1 - lambda) parts, which avoids cancellation near lambda = 1
  const double den_r = rest * (1.0 + rr) + lambda * (rr * r.nu + st_u) + rest * dt_v + 1.0 / r.gamma_rd;
  if (!(den_r > 0.0)) throw std::domain_error("relay SNDR denominator A_R*lambda + B_R is not positive");
  const double den_d = (lambda * r.gamma_sr + rest * r.gamma_rd) * dt.shared + lambda * dt.src_distortion +
                       rest * dt.jam_distortion + (1.0 + rr) * (lambda * r.nu + rest) + lambda * st_u +
                       rest * dt_v + 1.0 / r.gamma_rd + 1.0 + sq(p.k_R_t) + sq(p.k_D_r);
  if (!(den_d > 0.0)) throw std::domain_error("destination SNDR denominator A_D*lambda + B_D is not positive");
  return {r.nu * lambda / den_r, r.gamma_sr * lambda / den_d};
}

SndrPair sndr_perfect(const ChannelRealization& r, double lambda) {
  const double g_r = lambda * r.gamma_sr / ((1.0 - lambda) * r.gamma_rd + 1.0);
  const double g_d =
      lambda * r.gamma_sr * r.gamma_rd / (lambda * r.gamma_sr + (2.0 - lambda) * r.gamma_rd + 1.0);
  return {g_r, g_d};
}

RationalSndr LinkCoefficients::relay() const {
  if (mode == LinkMode::downlink) return {a, 1.0, b};
  return {a, -1.0, 1.0};
}

RationalSndr LinkCoefficients::destination() const {
  if (mode == LinkMode::downlink) return {c, 1.0, d};
  return {b, 1.0, c};
}

double theta(const DerivedConstants& c, LinkMode mode) {
  if (!(c.tau2 > 0.0)) throw AsymptoticUndefined("high-SNR theta undefined for perfect hardware (tau2 = 0)");
  if (mode == LinkMode::uplink) return std::sqrt((1.0 + c.tau2) / c.xi1);
  const double ratio = c.tau3 / c.tau2;
  const double rad = ratio * (c.tau1 - c.tau3);
  if (rad < 0.0) throw std::domain_error("theta_L is complex (tau1 < tau3)");
  return std::sqrt(rad) + ratio * (c.xi1 - 1.0) - c.tau3;
}

LinkCoefficients link_coefficients(const ChannelRealization& r, const DerivedConstants& c, LinkMode mode) {
  check_rd(r);
  LinkCoefficients k;
  k.mode = mode;
  if (mode == LinkMode::downlink) {
    if (!(c.xi1 > 1.0)) throw DlCoefficientsUndefined("DL coefficients need k_R_r > 0 (xi1 = 1)");
    const double den = c.tau2 * r.gamma_rd + c.xi1;
    k.a = 1.0 / (c.xi1 - 1.0);
    k.b = c.tau1 / ((c.xi1 - 1.0) * r.nu);
    k.c = r.gamma_rd / den;
    k.d = (c.tau3 * r.gamma_rd + c.tau4) / (r.nu * den);
  } else {
    const double den = (r.gamma_sr - r.gamma_rd) * c.tau2 + (r.nu - 1.0) * c.xi1;
    k.a = r.nu / c.xi1;
    k.b = r.gamma_sr / den;
    k.c = (c.tau2 * r.gamma_rd + c.xi2) / den;
    k.d = std::numeric_limits<double>::quiet_NaN();
  }
  if (c.tau2 > 0.0) k.theta = theta(c, mode);
  return k;
}

LinkCoefficients high_snr_coefficients(const DerivedConstants& c, LinkMode mode, double nu) {
  LinkCoefficients k;
  k.mode = mode;
  k.theta = theta(c, mode);
  if (mode == LinkMode::downlink) {
    if (!(c.xi1 > 1.0)) throw DlCoefficientsUndefined("DL coefficients need k_R_r > 0 (xi1 = 1)");
    k.a = 1.0 / (c.xi1 - 1.0);
    k.b = c.tau1 / ((c.xi1 - 1.0) * nu);
    k.c = 1.0 / c.tau2;
    k.d = c.tau3 / (c.tau2 * nu);
  } else {
    k.a = nu / c.xi1;
    k.b = nu / ((nu - 1.0) * c.tau2);
    k.c = 1.0 / (nu - 1.0);
    k.d = std::numeric_limits<double>::quiet_NaN();
  }
  return k;
}

double phi(const RationalSndr& relay, const RationalSndr& destination, double lambda) {
  return (1.0 + destination(lambda)) / (1.0 + relay(lambda));
}

SecrecyOutcome make_outcome(double lambda, const SndrPair& sndr) {
  SecrecyOutcome o;
  o.lambda = lambda;
  o.gamma_R = sndr.gamma_R;
  o.gamma_D = sndr.gamma_D;
  o.phi = (1.0 + sndr.gamma_D) / (1.0 + sndr.gamma_R);
  o.rate_raw = (std::log1p(sndr.gamma_D) - std::log1p(sndr.gamma_R)) / (2.0 * std::numbers::ln2);
  o.rate = o.rate_raw > 0.0 ? o.rate_raw : 0.0;
  return o;
}

SecrecyOutcome secrecy_outcome(const ChannelRealization& r, const DerivedConstants& c, double lambda) {
  return make_outcome(lambda, sndr_pair(r, c, lambda));
}

}  // namespace relaysec
