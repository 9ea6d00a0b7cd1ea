#include "dms/gamma.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace dms::special {

namespace {

using cd = std::complex<double>;

constexpr double kLanczosShift = 5.24218750000000000;  // g + 1/2, g = 671/128
constexpr double kLanczosBase = 0.999999999999997092;
constexpr std::array<double, 14> kLanczos = {
    57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
    -0.491913816097620199,   .339946499848118887e-4,  .465236289270485756e-4,
    -.983744753048795646e-4, .158088703224912494e-3,  -.210264441724104883e-3,
    .217439618115212643e-3,  -.164318106536763890e-3, .844182239838527433e-4,
    -.261908384015814087e-4, .368991826595316234e-5};
constexpr double kSqrtTwoPi = 2.5066282746310005;

// Valid for Re z >= 1/2.
cd log_gamma_right(cd z) {
  cd series = kLanczosBase;
  cd y = z;
  for (double c : kLanczos) {
    y += 1.0;
    series += c / y;
  }
  const cd t = z + kLanczosShift;
  return (z + 0.5) * std::log(t) - t + std::log(kSqrtTwoPi * series / z);
}

bool is_pole(cd z) { return z.imag() == 0.0 && z.real() <= 0.0 && std::floor(z.real()) == z.real(); }

}  // namespace

cd log_sin_pi(cd z) {
  const double y = z.imag();
  const cd i_unit(0.0, 1.0);
  const double pi = std::numbers::pi;
  if (y > 1.0) {
    // sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 i pi z}),  |e^{2 i pi z}| < e^{-2 pi}
    return std::log(0.5 * i_unit) - i_unit * pi * z + std::log(1.0 - std::exp(2.0 * i_unit * pi * z));
  }
  if (y < -1.0) {
    // sin(pi z) = -(i/2) e^{i pi z} (1 - e^{-2 i pi z})
    return std::log(-0.5 * i_unit) + i_unit * pi * z + std::log(1.0 - std::exp(-2.0 * i_unit * pi * z));
  }
  // Reduce the real part first so sin() sees a small argument.
  const double shift = std::round(z.real());
  const cd w(z.real() - shift, y);
  cd s = std::sin(pi * w);
  if (std::fmod(std::abs(shift), 2.0) == 1.0) s = -s;
  return std::log(s);
}

cd log_gamma(cd z) {
  if (is_pole(z)) return {std::numeric_limits<double>::infinity(), 0.0};
  if (z.real() >= 0.5) return log_gamma_right(z);
  return std::log(std::numbers::pi) - log_sin_pi(z) - log_gamma_right(1.0 - z);
}

cd log_rgamma(cd z) {
  if (is_pole(z)) return {-std::numeric_limits<double>::infinity(), 0.0};
  return -log_gamma(z);
}

cd gamma(cd z) {
  if (is_pole(z)) return {std::numeric_limits<double>::infinity(), 0.0};
  return std::exp(log_gamma(z));
}

cd rgamma(cd z) {
  if (is_pole(z)) return {0.0, 0.0};
  return std::exp(-log_gamma(z));
}

}  // namespace dms::special
