#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "lambdatherm/optics.hpp"
#include "lambdatherm/quadrature.hpp"

namespace lambdatherm {

/// Atom height above the slab and slab thickness, both in metres.
struct GeometryPoint {
  double z = 0;
  double delta = 0;

  void validate() const;
};

// Dimensionless field-response vectors, components (xx, yy, zz):
//   B  propagative, |rho|^2 + |tau|^2, independent of z
//   C  propagative, Re(rho exp(2 i k_z z)), oscillates and decays with z
//   D  evanescent,  Im(rho) exp(-2 Im(k_z) z), diverges as 1/z^3 near the slab
struct ResponseVectors {
  Eigen::Vector3d B = Eigen::Vector3d::Zero();
  Eigen::Vector3d C = Eigen::Vector3d::Zero();
  Eigen::Vector3d D = Eigen::Vector3d::Zero();
};

/// Weights of the wall (alpha_W) and body (alpha_M) radiation channels seen
/// by a dipole transition. Both are non-negative.
struct AlphaPair {
  double alpha_W = 0;
  double alpha_M = 0;

  double total() const { return alpha_W + alpha_M; }
};

inline Eigen::Vector3d isotropic_weights() { return Eigen::Vector3d::Constant(1.0 / 3.0); }

/// Throws ConfigError unless the entries are non-negative and sum to 1.
void validate_dipole_weights(const Eigen::Vector3d& weights, const std::string& key = "dipole_weights");

/// k values worth marking as quadrature breakpoints for a slab: positions
/// where Re(k_zm) delta crosses a multiple of pi/2 while the internal round
/// trip is still weakly damped, plus the surface-polariton wavevector when
/// Re eps < -1.
std::vector<double> slab_breakpoints(double omega, double delta, const std::complex<double>& eps);

ResponseVectors response_vectors(double omega, const GeometryPoint& geom, const std::complex<double>& eps,
                                 const QuadratureSpec& spec = {});
ResponseVectors response_vectors(double omega, const GeometryPoint& geom, const DielectricModel<double>& model,
                                 const QuadratureSpec& spec = {});

/// alpha_W = (1 + B + 2C)/2 . d,  alpha_M = (1 - B + 2D)/2 . d.
/// Values below zero by less than `tolerance` are clamped to zero; anything
/// more negative throws a passivity violation.
AlphaPair assemble_alphas(const ResponseVectors& response, const Eigen::Vector3d& dipole_weights,
                          double tolerance);

AlphaPair alpha_pair(double omega, const GeometryPoint& geom, const std::complex<double>& eps,
                     const Eigen::Vector3d& dipole_weights = isotropic_weights(), const QuadratureSpec& spec = {});
AlphaPair alpha_pair(double omega, const GeometryPoint& geom, const DielectricModel<double>& model,
                     const Eigen::Vector3d& dipole_weights = isotropic_weights(), const QuadratureSpec& spec = {});

/// Height z* at which alpha_W = alpha_M, by bisection in log z over the
/// bracket (z_lo, z_hi). Throws NumericalError when the bracket holds no sign
/// change.
double crossover_distance(double omega, double delta, const std::complex<double>& eps,
                          std::pair<double, double> bracket, const Eigen::Vector3d& dipole_weights = isotropic_weights(),
                          const QuadratureSpec& spec = {});
double crossover_distance(double omega, double delta, const DielectricModel<double>& model,
                          std::pair<double, double> bracket, const Eigen::Vector3d& dipole_weights = isotropic_weights(),
                          const QuadratureSpec& spec = {});

}  // namespace lambdatherm
