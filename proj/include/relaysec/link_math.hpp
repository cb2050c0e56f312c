#pragma once

#include "relaysec/channel.hpp"
#include "relaysec/common.hpp"
#include "relaysec/hw_profile.hpp"

#include <optional>

namespace relaysec {

// gamma(lambda) = gain * lambda / (slope * lambda + offset)
struct RationalSndr {
  double gain = 0.0;
  double slope = 0.0;
  double offset = 1.0;

  double operator()(double lambda) const { return gain * lambda / (slope * lambda + offset); }
};

struct SndrPair {
  double gamma_R = 0.0;
  double gamma_D = 0.0;
};

double amplification_gain(const ChannelRealization& r, const DerivedConstants& c, double lambda, double rho);

// The two SNDR expressions written as rational functions of lambda, term by term.
struct RelayTerms {
  double a_r = 0.0;  // coefficient of lambda in the denominator
  double b_r = 0.0;  // constant part of the denominator
};

struct DestinationTerms {
  double shared = 0.0;          // k_Dr^2 k_Rr^2 + k_Rr^2 k_Rt^2 + k_R^2 + k_Dr^2
  double src_distortion = 0.0;  // gamma_u k_St^2 (k_Dr^2 + k_Rt^2 + 1)
  double jam_distortion = 0.0;  // gamma_v k_Dt^2 (k_Dr^2 + k_Rt^2 + 1), enters A_D with a minus sign
  double a_d = 0.0;
  double b_d = 0.0;
};

RelayTerms relay_terms(const ChannelRealization& r, const DerivedConstants& c);
DestinationTerms destination_terms(const ChannelRealization& r, const DerivedConstants& c);

struct ExactForms {
  RationalSndr relay;
  RationalSndr destination;
};

ExactForms exact_forms(const ChannelRealization& r, const DerivedConstants& c);

SndrPair sndr_pair(const ChannelRealization& r, const DerivedConstants& c, double lambda);
SndrPair sndr_perfect(const ChannelRealization& r, double lambda);

// DL: gamma_R = a lambda/(lambda + b), gamma_D = c lambda/(lambda + d).
// UL: gamma_R = a lambda/(1 - lambda), gamma_D = b lambda/(lambda + c); d unused.
struct LinkCoefficients {
  LinkMode mode = LinkMode::downlink;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  std::optional<double> theta;

  RationalSndr relay() const;
  RationalSndr destination() const;
};

double theta(const DerivedConstants& c, LinkMode mode);
LinkCoefficients link_coefficients(const ChannelRealization& r, const DerivedConstants& c, LinkMode mode);
// Limits of the coefficients as gamma_rd (DL) or gamma_sr (UL) grow without bound.
LinkCoefficients high_snr_coefficients(const DerivedConstants& c, LinkMode mode, double nu);

double phi(const RationalSndr& relay, const RationalSndr& destination, double lambda);

struct SecrecyOutcome {
  double lambda = 0.0;
  double gamma_R = 0.0;
  double gamma_D = 0.0;
  double phi = 1.0;
  double rate_raw = 0.0;
  double rate = 0.0;
};

SecrecyOutcome make_outcome(double lambda, const SndrPair& sndr);
SecrecyOutcome secrecy_outcome(const ChannelRealization& r, const DerivedConstants& c, double lambda);

}  // namespace relaysec
