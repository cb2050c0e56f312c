#include "relaysec/opa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace relaysec {

std::string_view to_string(OpaMethod method) {
  switch (method) {
    case OpaMethod::exact: return "exact";
    case OpaMethod::high_snr: return "high_snr";
    case OpaMethod::numeric: return "numeric";
    case OpaMethod::epa: return "epa";
  }
  return "unknown";
}

double Quadratic::relative_residual(double x) const {
  const double scale = std::abs(A) * x * x + std::abs(B) * std::abs(x) + std::abs(C);
  if (scale == 0.0) return 0.0;
  return std::abs((*this)(x)) / scale;
}

Quadratic derivative_quadratic(const RationalSndr& relay, const RationalSndr& destination) {
  const double gr = relay.gain, sr = relay.slope, orr = relay.offset;
  const double gd = destination.gain, sd = destination.slope, od = destination.offset;
  Quadratic q;
  q.A = gd * gr * od * sr - gd * gr * orr * sd + gd * od * sr * sr - gr * orr * sd * sd;
  q.B = 2.0 * od * orr * (gd * sr - gr * sd);
  q.C = od * orr * (gd * orr - gr * od);
  return q;
}

namespace {

double clamp_lambda(double x) { return std::clamp(x, lambda_floor, 1.0); }

template <class F>
OpaResult golden(F&& f, double tolerance) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lambda_floor, b = 1.0;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tolerance) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  // the search only approaches the ends; compare against them explicitly, preferring smaller lambda on ties
  OpaResult out;
  out.method = OpaMethod::numeric;
  out.lambda_star = lambda_floor;
  out.objective_phi = f(lambda_floor);
  for (double x : {0.5 * (a + b), 1.0}) {
    const double fx = f(x);
    if (fx > out.objective_phi) {
      out.objective_phi = fx;
      out.lambda_star = x;
    }
  }
  return out;
}

}  // namespace

OpaResult opa_numeric(const RationalSndr& relay, const RationalSndr& destination, double tolerance) {
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  return golden([&](double x) { return phi(relay, destination, x); }, tolerance);
}

OpaResult opa_numeric(const ChannelRealization& realization, const DerivedConstants& constants, double tolerance) {
  const auto f = exact_forms(realization, constants);
  return opa_numeric(f.relay, f.destination, tolerance);
}

OpaResult opa_stationary(const RationalSndr& relay, const RationalSndr& destination) {
  const auto q = derivative_quadratic(relay, destination);
  OpaResult out;
  out.method = OpaMethod::exact;
  out.lambda_star = lambda_floor;
  out.objective_phi = phi(relay, destination, lambda_floor);
  auto consider = [&](double x) {
    if (!(x >= lambda_floor && x <= 1.0)) return;
    const double fx = phi(relay, destination, x);
    if (fx > out.objective_phi) {
      out.objective_phi = fx;
      out.lambda_star = x;
    }
  };
  const double scale = std::abs(q.A) + std::abs(q.B) + std::abs(q.C);
  if (std::abs(q.A) <= 1e-14 * scale) {
    if (q.B != 0.0) consider(-q.C / q.B);
  } else {
    const double disc = q.B * q.B - 4.0 * q.A * q.C;
    if (disc >= 0.0) {
      const double s = std::sqrt(disc);
      const double t = -0.5 * (q.B + std::copysign(s, q.B));
      if (t != 0.0) {
        consider(t / q.A);
        consider(q.C / t);
      } else {
        consider(0.0);
      }
    }
  }
  consider(1.0);
  return out;
}

OpaResult opa_exact(const LinkCoefficients& k) {
  const RationalSndr relay = k.relay();
  const RationalSndr dest = k.destination();
  double radicand = 0.0, closed = 0.0;
  bool defined = true;
  if (k.mode == LinkMode::downlink) {
    const double a = k.a, b = k.b, c = k.c, d = k.d;
    radicand = -a * b * c * d * (b - d) * (a * d - b * c - b + d);
    const double den = a * b * (c + 1.0) - c * d * (a + 1.0);
    defined = radicand >= 0.0 && den != 0.0;
    if (defined) closed = (b * d * (c - a) + std::sqrt(radicand)) / den;
  } else {
    const double a = k.a, b = k.b, c = k.c;
    radicand = a * (c + 1.0) * (b + c + 1.0) / (b * c);
    defined = radicand >= 0.0 && std::isfinite(radicand);
    if (defined) closed = 1.0 - std::sqrt(radicand);
  }

  if (!defined || !std::isfinite(closed)) {
    OpaResult out = opa_numeric(relay, dest);
    out.warning = "closed-form OPA radicand is negative; fell back to numeric search";
    return out;
  }

  OpaResult out;
  out.method = OpaMethod::exact;
  out.closed_form = closed;
  if (closed <= 0.0 || closed > 1.0) {
    out.lambda_star = clamp_lambda(closed);
    out.clamped = true;
    out.objective_phi = phi(relay, dest, out.lambda_star);
    out.warning = "closed-form OPA outside (0, 1]; clamped";
    return out;
  }

  const auto q = derivative_quadratic(relay, dest);
  const OpaResult best = opa_stationary(relay, dest);
  const double phi_closed = phi(relay, dest, closed);
  if (q.relative_residual(closed) < root_tolerance && phi_closed >= best.objective_phi * (1.0 - 1e-15)) {
    out.lambda_star = closed;
    out.objective_phi = phi_closed;
    return out;
  }
  out.lambda_star = best.lambda_star;
  out.objective_phi = best.objective_phi;
  out.refined = true;
  return out;
}

OpaResult opa_high_snr(const LinkCoefficients& k, const ChannelRealization& r) {
  if (!k.theta) throw AsymptoticUndefined("high-SNR OPA undefined for perfect hardware (tau2 = 0)");
  const double raw = k.mode == LinkMode::downlink ? *k.theta / r.nu : 1.0 - *k.theta * r.nu;
  OpaResult out;
  out.method = OpaMethod::high_snr;
  out.closed_form = raw;
  out.lambda_star = clamp_lambda(raw);
  out.clamped = out.lambda_star != raw;
  if (out.clamped) out.warning = "high-SNR OPA outside (0, 1]; clamped";
  out.objective_phi = phi(k.relay(), k.destination(), out.lambda_star);
  return out;
}

OpaResult epa() {
  OpaResult out;
  out.lambda_star = 0.5;
  out.method = OpaMethod::epa;
  out.objective_phi = std::numeric_limits<double>::quiet_NaN();
  return out;
}

}  // namespace relaysec
