#include "dms/models.hpp"

#include "dms/gamma.hpp"

#include <cmath>
#include <numbers>

namespace dms {

namespace {

using special::log_gamma;
using special::log_rgamma;

constexpr Complex kI{0.0, 1.0};

Complex from_log(Complex log_a) {
  if (std::isinf(log_a.real()) && log_a.real() < 0.0) return {0.0, 0.0};
  return std::exp(log_a);
}

// sqrt(alpha^2 - beta^2) as a complex number (purely imaginary when beta > alpha).
Complex effective_alpha(double alpha, double beta) {
  const double d = alpha * alpha - beta * beta;
  return d >= 0.0 ? Complex(std::sqrt(d), 0.0) : Complex(0.0, std::sqrt(-d));
}

Complex rosen_zener_a(double alpha, double delta) {
  const Complex half(0.5, delta);
  return from_log(2.0 * log_gamma(half) + log_rgamma(half + alpha) + log_rgamma(half - alpha));
}

Complex demkov_kunike_a(double alpha, double beta, double delta) {
  const Complex s = effective_alpha(alpha, beta);
  const Complex half(0.5, delta);
  const Complex num = log_gamma(Complex(0.5, delta + beta)) + log_gamma(Complex(0.5, delta - beta));
  return from_log(num + log_rgamma(half + s) + log_rgamma(half - s));
}

Complex allen_eberly_a(double alpha, double beta) {
  const double pi = std::numbers::pi;
  const double d = alpha * alpha - beta * beta;
  const double c = d >= 0.0 ? std::cos(pi * std::sqrt(d)) : std::cosh(pi * std::sqrt(-d));
  return {c / std::cosh(pi * beta), 0.0};
}

Complex rabi_a(double chi, double half_width, double delta0) {
  const double r = std::hypot(chi, delta0);
  if (r == 0.0) return {1.0, 0.0};
  const double phi = r * half_width;
  const Complex symmetric(std::cos(phi), delta0 / r * std::sin(phi));
  return std::exp(-kI * (delta0 * half_width)) * symmetric;
}

}  // namespace

CayleyKlein cayley_klein(const ModelSpec& model) {
  model.validate();
  CayleyKlein ck;
  switch (model.kind) {
    case ModelKind::Resonance:
      ck.a = std::cos(0.5 * model.area);
      ck.b = -kI * std::sin(0.5 * model.area);
      ck.b_phase_exact = true;
      return ck;
    case ModelKind::Rabi:
      ck.a = rabi_a(model.chi, model.T, model.delta0);
      break;
    case ModelKind::LandauZener:
      ck.a = std::exp(-std::numbers::pi * model.chi * model.chi / (4.0 * model.chirp));
      break;
    case ModelKind::RosenZener:
      ck.a = rosen_zener_a(model.alpha(), model.delta());
      break;
    case ModelKind::AllenEberly:
      ck.a = allen_eberly_a(model.alpha(), model.beta());
      break;
    case ModelKind::DemkovKunike:
      ck.a = demkov_kunike_a(model.alpha(), model.beta(), model.delta());
      break;
  }
  if (!std::isfinite(ck.a.real()) || !std::isfinite(ck.a.imag()))
    throw NumericalError(std::string("non-finite Cayley-Klein parameter for model ") + to_string(model.kind));
  const double b_sq = 1.0 - std::norm(ck.a);
  ck.b = -kI * std::sqrt(std::max(b_sq, 0.0));
  ck.b_phase_exact = false;
  return ck;
}

double rz_abs_a_squared(double alpha, double delta) {
  const double pi = std::numbers::pi;
  const double s = std::sin(pi * alpha);
  const double c = std::cosh(pi * delta);
  return 1.0 - (s * s) / (c * c);
}

Complex rz_integer_alpha_a(int l, double delta0_T) {
  if (l < 1) throw std::invalid_argument("integer alpha must be >= 1");
  Complex a = (l % 2 == 0) ? 1.0 : -1.0;
  for (int k = 0; k < l; ++k) {
    const double odd = 2.0 * k + 1.0;
    a *= Complex(odd, -delta0_T) / Complex(odd, delta0_T);
  }
  return a;
}

}  // namespace dms
