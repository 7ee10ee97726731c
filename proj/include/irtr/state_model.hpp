#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "irtr/psf.hpp"

namespace irtr {

using Matrix2 = Eigen::Matrix2d;
using Matrix4 = Eigen::Matrix4d;

/// One-photon state and its SLD operators in the orthonormal basis e1..e4 of
/// the subspace spanned by the two source modes and their position
/// derivatives. Entries of the SLDs carry units of length^-1.
struct StateModel4 {
  Matrix4 rho;
  Matrix4 sld_centroid;
  Matrix4 sld_separation;
  double eta3 = 0.0;
  double eta4 = 0.0;

  /// d rho / d theta_j = (L_j rho + rho L_j) / 2, j = 0 (centroid) or 1 (separation).
  Matrix4 rho_derivative(int parameter) const;
};

struct Qfim {
  Matrix2 matrix;
};

struct IncompatibilityCoefficients {
  double c_tilde = 0.0;
  double c = 0.0;
  double gamma_measure = 0.0;
};

/// Throws DegenerateStateError when 1 - delta <= 1e-12 or when eta3^2 / eta4^2
/// fall below -1e-12 (values in [-1e-12, 0) are clamped to zero).
StateModel4 build_state_model(const OverlapIntegrals& overlaps);

/// diag(4 kappa - 4 gamma^2, kappa)
Qfim qfim(const OverlapIntegrals& overlaps);

/// c_tilde = |beta| / sqrt(kappa (kappa - gamma^2)); c and the gamma measure
/// are evaluated from the commutator expectation of the 4x4 model.
IncompatibilityCoefficients incompatibility(const OverlapIntegrals& overlaps);

/// Closed form of c_tilde for the Gaussian profile.
double gaussian_incompatibility(double sigma, double separation);

/// tr|sqrt(rho) [L1, L2] sqrt(rho)|, the sum of singular values.
double commutator_quantity(const StateModel4& model);

/// Largest Frobenius residual, over both parameters, between a central
/// difference of the projected state and (L_j rho + rho L_j) / 2. The
/// displaced states are projected onto the fiducial basis by quadrature.
double verify_sld(const PointSpreadFunction& psf, const SourceGeometry& geometry,
                  const QuadratureSpec& quad, double step);

/// Basis functions e1..e4 sampled on a composite quadrature grid.
struct SubspaceBasis {
  std::vector<double> x;
  std::vector<double> w;
  std::array<std::vector<double>, 4> e;

  /// Quadrature Gram matrix <e_i|e_j>.
  Matrix4 gram() const;
  /// Coefficients <e_k|f> of a function sampled on the same grid.
  Eigen::Vector4d project(const std::vector<double>& f) const;
};

SubspaceBasis subspace_basis_wavefunctions(const PointSpreadFunction& psf,
                                           const SourceGeometry& geometry,
                                           const QuadratureSpec& quad = {});

}  // namespace irtr
