#include "lambdatherm/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace lambdatherm {

namespace {

using Eigen::Vector3d;

// 21-point Kronrod extension of the 10-point Gauss-Legendre rule (QUADPACK qk21).
constexpr std::array<double, 11> kKronrodNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

constexpr std::array<double, 11> kKronrodWeights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525983052, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

// Gauss weights for the odd-indexed Kronrod nodes above.
constexpr std::array<double, 5> kGaussWeights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

constexpr double kRoundoffFactor = 50.0 * std::numeric_limits<double>::epsilon();

using Sampler = std::function<Vector3d(double)>;

struct Panel {
  double a = 0;
  double b = 0;
  Vector3d value = Vector3d::Zero();
  Vector3d error = Vector3d::Zero();
  Vector3d magnitude = Vector3d::Zero();  // integral of |f|, for the roundoff floor
};

struct Accumulator {
  std::size_t evaluations = 0;
  double peak = 0;  // largest |f| component seen

  Vector3d sample(const Sampler& f, double t) {
    Vector3d v = f(t);
    ++evaluations;
    if (!v.allFinite()) throw NumericalError("non-finite integrand at t = " + std::to_string(t));
    peak = std::max(peak, v.cwiseAbs().maxCoeff());
    return v;
  }
};

Panel gauss_kronrod(const Sampler& f, double a, double b, Accumulator& acc) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const Vector3d fc = acc.sample(f, center);
  Vector3d kronrod = kKronrodWeights[10] * fc;
  Vector3d gauss = Vector3d::Zero();
  Vector3d magnitude = kKronrodWeights[10] * fc.cwiseAbs();
  for (std::size_t j = 0; j < 10; ++j) {
    const double dx = half * kKronrodNodes[j];
    const Vector3d f1 = acc.sample(f, center - dx);
    const Vector3d f2 = acc.sample(f, center + dx);
    kronrod += kKronrodWeights[j] * (f1 + f2);
    magnitude += kKronrodWeights[j] * (f1.cwiseAbs() + f2.cwiseAbs());
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * (f1 + f2);
  }
  Panel p;
  p.a = a;
  p.b = b;
  p.value = kronrod * half;
  p.error = ((kronrod - gauss) * half).cwiseAbs();
  p.magnitude = magnitude * std::abs(half);
  return p;
}

std::vector<double> sorted_unique(std::vector<double> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

// Global adaptive Gauss-Kronrod: repeatedly bisect the panel with the largest
// error relative to the componentwise tolerance. Panels stay ordered by
// position and are summed in that order, so the result does not depend on
// the refinement history beyond the panel set itself.
// `noise` is the relative accuracy of one integrand sample; the tolerance is
// never tighter than noise times the integral of |f|.
QuadratureResult adaptive(const Sampler& f, std::vector<Panel> panels, const QuadratureSpec& spec,
                          Accumulator& acc, const Vector3d& tail_error, double noise = kRoundoffFactor) {
  int subdivisions = 0;
  while (true) {
    QuadratureResult result;
    Vector3d magnitude = Vector3d::Zero();
    for (const Panel& p : panels) {
      result.value += p.value;
      result.error_estimate += p.error;
      magnitude += p.magnitude;
    }
    result.error_estimate += tail_error;
    result.evaluations = acc.evaluations;

    Vector3d tolerance;
    for (int i = 0; i < 3; ++i)
      tolerance[i] = std::max({spec.abs_tol, spec.rel_tol * std::abs(result.value[i]), noise * magnitude[i]});
    if ((result.error_estimate.array() <= tolerance.array()).all()) return result;
    if (subdivisions >= spec.max_subdivisions)
      throw QuadratureError("quadrature tolerance not met within " + std::to_string(spec.max_subdivisions) +
                                " subdivisions",
                            result);

    const Vector3d scale = tolerance.cwiseMax(std::numeric_limits<double>::min()).cwiseInverse();
    std::size_t worst = 0;
    double worst_ratio = -1;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      const double ratio = panels[i].error.cwiseProduct(scale).maxCoeff();
      if (ratio > worst_ratio) {
        worst_ratio = ratio;
        worst = i;
      }
    }
    const Panel target = panels[worst];
    const double mid = 0.5 * (target.a + target.b);
    if (!(mid > target.a && mid < target.b))
      throw QuadratureError("quadrature panel cannot be subdivided further", result);
    panels[worst] = gauss_kronrod(f, target.a, mid, acc);
    panels.insert(panels.begin() + static_cast<std::ptrdiff_t>(worst) + 1, gauss_kronrod(f, mid, target.b, acc));
    ++subdivisions;
  }
}

std::vector<Panel> initial_panels(const Sampler& f, const std::vector<double>& breaks, Accumulator& acc) {
  std::vector<Panel> panels;
  panels.reserve(breaks.size());
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
    if (breaks[i + 1] > breaks[i]) panels.push_back(gauss_kronrod(f, breaks[i], breaks[i + 1], acc));
  return panels;
}

Sampler angular_sampler(const ModeIntegrand& integrand, double omega) {
  const double q = Wavevector<double>::vacuum_wavenumber(omega);
  return [&integrand, omega, q](double theta) -> Vector3d {
    const auto wave = Wavevector<double>::propagative(theta, omega);
    return integrand(wave) * (q * std::cos(theta));  // dk = q cos(theta) dtheta
  };
}

std::vector<double> angular_breaks(double omega, std::span<const double> k_breakpoints) {
  const double q = Wavevector<double>::vacuum_wavenumber(omega);
  std::vector<double> breaks = {0.0, constants::pi / 2};
  for (double k : k_breakpoints)
    if (k > 0 && k < q) breaks.push_back(std::asin(k / q));
  return breaks;
}

void check_common(double omega, const QuadratureSpec& spec) {
  spec.validate();
  if (!(omega > 0)) throw NumericalError("quadrature requires omega > 0");
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0)) throw ConfigError("rel_tol", "must be positive");
  if (!(abs_tol >= 0)) throw ConfigError("abs_tol", "must be non-negative");
  if (max_subdivisions < 1) throw ConfigError("max_subdivisions", "must be at least 1");
}

QuadratureResult integrate_propagative(const ModeIntegrand& integrand, double omega, const QuadratureSpec& spec,
                                       std::span<const double> k_breakpoints) {
  check_common(omega, spec);
  const Sampler f = angular_sampler(integrand, omega);
  Accumulator acc;
  auto panels = initial_panels(f, sorted_unique(angular_breaks(omega, k_breakpoints)), acc);
  return adaptive(f, std::move(panels), spec, acc, Vector3d::Zero());
}

QuadratureResult integrate_oscillatory(const ModeIntegrand& integrand, double omega, double z,
                                       const QuadratureSpec& spec, std::span<const double> k_breakpoints) {
  check_common(omega, spec);
  if (!(z >= 0)) throw NumericalError("oscillatory integral requires z >= 0");
  const double q = Wavevector<double>::vacuum_wavenumber(omega);
  std::vector<double> breaks = angular_breaks(omega, k_breakpoints);
  // k_z z = m pi / 2  <=>  cos(theta) = m pi / (2 q z)
  const double quarter = constants::pi / (2 * q * z);
  for (long m = 1; std::isfinite(quarter) && m * quarter < 1.0; ++m) breaks.push_back(std::acos(m * quarter));

  // A phase of 2 q z radians carries an absolute rounding error of about
  // eps * 2 q z, which no amount of refinement removes.
  const double noise = std::max(kRoundoffFactor, 10 * std::numeric_limits<double>::epsilon() * 2 * q * z);

  const Sampler f = angular_sampler(integrand, omega);
  Accumulator acc;
  auto panels = initial_panels(f, sorted_unique(std::move(breaks)), acc);
  return adaptive(f, std::move(panels), spec, acc, Vector3d::Zero(), noise);
}

QuadratureResult integrate_evanescent(const ModeIntegrand& integrand, double omega, double z,
                                      const QuadratureSpec& spec, std::span<const double> k_breakpoints) {
  check_common(omega, spec);
  if (!(z > 0)) throw NumericalError("evanescent integral requires positive height");
  const double q = Wavevector<double>::vacuum_wavenumber(omega);

  const Sampler f = [&integrand, omega](double kappa) -> Vector3d {
    const auto wave = Wavevector<double>::evanescent(kappa, omega);
    return integrand(wave) * (kappa / wave.k);  // dk = (kappa / k) dkappa
  };

  constexpr double kDampingFloor = 1e-14;
  const double decay = 1.0 / (2 * z);  // e-folding length of exp(-2 kappa z)
  double kappa_end = -std::log(kDampingFloor) * decay;

  std::vector<double> breaks = {0.0};
  for (double kappa = 1e-2 * std::min(q, decay); kappa < kappa_end; kappa *= 2) breaks.push_back(kappa);
  breaks.push_back(kappa_end);
  for (double k : k_breakpoints)
    if (k > q) {
      const double kappa = std::sqrt((k - q) * (k + q));
      if (kappa < kappa_end) breaks.push_back(kappa);
    }

  Accumulator acc;
  auto panels = initial_panels(f, sorted_unique(std::move(breaks)), acc);

  // Push the cutoff out until the integrand is negligible against its peak.
  Vector3d edge = acc.sample(f, kappa_end).cwiseAbs();
  for (int extension = 0; edge.maxCoeff() > kDampingFloor * acc.peak; ++extension) {
    if (extension == 64) throw NumericalError("evanescent integrand does not decay");
    const double next = kappa_end + 8 * decay;
    panels.push_back(gauss_kronrod(f, kappa_end, next, acc));
    kappa_end = next;
    edge = acc.sample(f, kappa_end).cwiseAbs();
  }
  return adaptive(f, std::move(panels), spec, acc, edge * decay);
}

}  // namespace lambdatherm
