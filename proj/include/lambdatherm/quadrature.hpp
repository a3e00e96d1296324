#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include <Eigen/Core>

#include "lambdatherm/errors.hpp"
#include "lambdatherm/optics.hpp"

namespace lambdatherm {

struct QuadratureSpec {
  double rel_tol = 1e-9;
  double abs_tol = 1e-14;
  int max_subdivisions = 2000;  // bisections beyond the initial partition

  void validate() const;
};

struct QuadratureResult {
  Eigen::Vector3d value = Eigen::Vector3d::Zero();
  Eigen::Vector3d error_estimate = Eigen::Vector3d::Zero();
  std::size_t evaluations = 0;
};

/// Thrown when the tolerance is not met; carries the best estimate reached.
class QuadratureError : public NumericalError {
 public:
  QuadratureError(const std::string& what, QuadratureResult best)
      : NumericalError(what), best_(std::move(best)) {}
  const QuadratureResult& best_estimate() const noexcept { return best_; }

 private:
  QuadratureResult best_;
};

/// Integrand over the transverse wavevector magnitude, measure dk. It sees
/// the exact (k, k_z) of each sample so it can form k/k_z without
/// cancellation. Returns the (xx, yy, zz) components.
using ModeIntegrand = std::function<Eigen::Vector3d(const Wavevector<double>&)>;

// All three engines take optional extra breakpoints in k (values outside the
// engine's domain are ignored) so callers can mark known structure such as
// slab resonances.

/// Integral over 0 <= k <= w/c. Evaluated in the polar angle theta
/// (k = (w/c) sin theta), which absorbs the 1/k_z endpoint singularity.
QuadratureResult integrate_propagative(const ModeIntegrand& integrand, double omega,
                                       const QuadratureSpec& spec = {},
                                       std::span<const double> k_breakpoints = {});

/// As integrate_propagative, with the angular domain split wherever
/// k_z z crosses a multiple of pi/2 so each panel holds at most half a period
/// of exp(2 i k_z z).
QuadratureResult integrate_oscillatory(const ModeIntegrand& integrand, double omega, double z,
                                       const QuadratureSpec& spec = {},
                                       std::span<const double> k_breakpoints = {});

/// Integral over k >= w/c, evaluated in kappa = Im k_z. The upper limit is
/// extended until the integrand has fallen below 1e-14 of its sampled peak;
/// the remaining tail, assuming exp(-2 kappa z) decay, is added to the error.
QuadratureResult integrate_evanescent(const ModeIntegrand& integrand, double omega, double z,
                                      const QuadratureSpec& spec = {},
                                      std::span<const double> k_breakpoints = {});

}  // namespace lambdatherm
