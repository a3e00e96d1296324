#pragma once

#include <cmath>
#include <random>

#include "lambdatherm/optics.hpp"

namespace testing {

// SiC oscillator parameters, written out so tests do not depend on data files.
inline lambdatherm::DielectricModel<double> sic() { return {6.7, 1.827e14, 1.495e14, 0.9e12}; }

inline constexpr double omega_r = 1.495e14;
inline constexpr double omega_p = 1.787e14;

inline double q_of(double omega) { return omega / lambdatherm::constants::speed_of_light; }

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(20240611);
  return engine;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }
inline double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

}  // namespace testing
