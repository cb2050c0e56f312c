#include "relaysec/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <vector>

namespace relaysec {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

// sum_{k>=1} (-1)^{k+1} t^k / (k k!), so that E1(t) = -gamma - ln t + series
double e1_series_tail(double t) {
  double term = 1.0;
  double sum = 0.0;
  for (int k = 1; k < 200; ++k) {
    term *= -t / k;
    const double add = -term / k;
    sum += add;
    if (std::abs(add) < eps * std::abs(sum)) break;
  }
  return sum;
}

// e^t E1(t) by the modified Lentz continued fraction; converges for t > ~0.5.
double scaled_e1_fraction(double t) {
  constexpr double tiny = 1e-300;
  double b = t + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 100000; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    const double del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < eps) break;
  }
  return h;
}

}  // namespace

namespace detail {
double e1_series(double t) { return -std::numbers::egamma - std::log(t) + e1_series_tail(t); }
double scaled_e1_fraction(double t) { return relaysec::scaled_e1_fraction(t); }
}  // namespace detail

double expint_e1(double t) {
  if (!(t > 0.0)) throw std::domain_error("E1 requires t > 0");
  if (t <= 1.0) return -std::numbers::egamma - std::log(t) + e1_series_tail(t);
  return scaled_e1_fraction(t) * std::exp(-t);
}

double expint_ei(double x) {
  if (!(x < 0.0)) throw std::domain_error("Ei is implemented for negative arguments only");
  return -expint_e1(-x);
}

double exp_scaled_ei(double t) {
  if (!(t > 0.0)) throw std::domain_error("exp_scaled_ei requires t > 0");
  if (t <= 1.0) return -std::exp(t) * (-std::numbers::egamma - std::log(t) + e1_series_tail(t));
  return -scaled_e1_fraction(t);
}

namespace {

constexpr std::array<double, 8> xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> wgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> wg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                      0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * wgk[7];
  double gauss = fc * wg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * xgk[static_cast<std::size_t>(j)];
    const double s = f(center - dx) + f(center + dx);
    kronrod += wgk[static_cast<std::size_t>(j)] * s;
    if (j % 2 == 1) gauss += wg[static_cast<std::size_t>(j / 2)] * s;
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureSpec& spec) {
  if (!(spec.abs_tol > 0.0) || !(spec.rel_tol > 0.0)) throw std::invalid_argument("quadrature tolerances must be positive");
  QuadratureResult out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  std::priority_queue<Segment> heap;
  heap.push(gk15(f, a, b));
  out.evaluations = 15;
  double total = heap.top().value;
  double error = heap.top().error;
  int splits = 0;
  while (error > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
    if (splits >= spec.max_subdivisions) break;
    const Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      heap.push(worst);
      break;
    }
    const Segment left = gk15(f, worst.a, mid);
    const Segment right = gk15(f, mid, worst.b);
    out.evaluations += 30;
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++splits;
  }
  // re-sum to drop the drift of the running updates
  double value = 0.0, err = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  out.value = value;
  out.abs_error = err;
  out.converged = err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(value));
  return out;
}

}  // namespace relaysec
