#pragma once

#include "relaysec/channel.hpp"
#include "relaysec/common.hpp"
#include "relaysec/hw_profile.hpp"
#include "relaysec/link_math.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace relaysec {

enum class OpaMethod { exact, high_snr, numeric, epa };

std::string_view to_string(OpaMethod method);

struct OpaResult {
  double lambda_star = 0.5;
  OpaMethod method = OpaMethod::numeric;
  double objective_phi = 1.0;
  bool clamped = false;
  // the published closed form was not a stationary point and was replaced by the best exact root
  bool refined = false;
  std::optional<double> closed_form;
  std::string warning;
};

// dphi/dlambda = (A l^2 + B l + C) / positive, for phi = (1 + gamma_D)/(1 + gamma_R)
struct Quadratic {
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;

  double operator()(double x) const { return (A * x + B) * x + C; }
  // |q(x)| relative to the magnitude of its terms
  double relative_residual(double x) const;
};

Quadratic derivative_quadratic(const RationalSndr& relay, const RationalSndr& destination);

OpaResult opa_exact(const LinkCoefficients& coeffs);
OpaResult opa_high_snr(const LinkCoefficients& coeffs, const ChannelRealization& realization);
// Golden-section search of phi on the full SNDR expressions.
OpaResult opa_numeric(const ChannelRealization& realization, const DerivedConstants& constants,
                      double tolerance = 1e-10);
OpaResult opa_numeric(const RationalSndr& relay, const RationalSndr& destination, double tolerance = 1e-10);
// Best of the feasible roots of the derivative quadratic and the interval ends.
OpaResult opa_stationary(const RationalSndr& relay, const RationalSndr& destination);
OpaResult epa();

inline constexpr double root_tolerance = 1e-8;

}  // namespace relaysec
