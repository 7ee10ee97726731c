#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "irtr/psf.hpp"
#include "irtr/rng.hpp"
#include "irtr/state_model.hpp"

namespace irtr {

enum class OutcomeKind { ContinuumGrid, DiscreteModes, SubspaceProjectors };

/// Outcome probabilities at the fiducial point together with their partial
/// derivatives with respect to the centroid and the separation. Continuum
/// models fold the quadrature weight into each entry, so every model is a
/// plain discrete distribution.
struct ProbabilityModel {
  OutcomeKind kind = OutcomeKind::DiscreteModes;
  std::vector<double> probabilities;
  std::vector<double> d_centroid;
  std::vector<double> d_separation;
  /// Probability mass not represented by the listed outcomes.
  double truncated_mass = 0.0;
  /// Fisher information carried by the truncated tail, where it is estimated.
  double fisher_tail_estimate = 0.0;

  std::size_t size() const { return probabilities.size(); }
  double total_probability() const;
};

/// Rows are the measurement vectors in the e1..e4 basis.
struct ProjectiveMeasurement4 {
  Matrix4 matrix;
  std::uint64_t seed = 0;
  std::uint64_t stream_index = 0;
};

struct RegretReport {
  Matrix2 fim;
  Matrix2 qfim;
  Matrix2 regret;
  double delta1 = 0.0;
  double delta2 = 0.0;
};

/// Photon-position density p(x) = (psi(x - X1)^2 + psi(x - X2)^2) / 2 on a
/// composite Gauss-Legendre grid over [X1 - R sigma, X2 + R sigma].
ProbabilityModel direct_imaging_model(const PointSpreadFunction& psf,
                                      const SourceGeometry& geometry,
                                      const QuadratureSpec& quad = {});

/// Direct imaging with square pixels of width `pixel_width`; pixel edges
/// sit at integer multiples of the width.
ProbabilityModel pixelated_direct_imaging_model(const PointSpreadFunction& psf,
                                                const SourceGeometry& geometry,
                                                double pixel_width,
                                                const QuadratureSpec& quad = {});

/// Hermite-Gaussian mode sorting of the Gaussian-PSF state. `mode_cutoff`
/// fixes the largest mode index; std::nullopt grows it until the truncated
/// mass is below 1e-14 and the dropped Fisher information is below
/// 1e-16 / sigma^2 (capped at 512 modes). Throws CutoffError if the mass
/// criterion is not met.
ProbabilityModel spade_model(double sigma, const SourceGeometry& geometry,
                             std::optional<int> mode_cutoff = std::nullopt);

/// q-th Hermite-Gaussian mode with characteristic length sigma.
double hermite_gaussian_wavefunction(int q, double sigma, double x);

/// Haar-distributed orthogonal matrix: QR of a dim x dim matrix of standard
/// normals (filled row-major) with Q's columns multiplied by sign(R_ii).
Eigen::MatrixXd haar_random_orthogonal(RngStream& rng, int dim = 4);

ProjectiveMeasurement4 haar_random_measurement(RngStream& rng);

/// Born-rule probabilities (O rho O^T)_kk and derivatives (O drho O^T)_kk.
ProbabilityModel projective_model(const StateModel4& state, const ProjectiveMeasurement4& meas);

/// Classical Fisher information. Outcomes with p < 1e-15 max p are skipped;
/// if such an outcome has |dp| >= 1e-9 max |dp| a DegenerateOutcomeError is
/// thrown.
Matrix2 fim(const ProbabilityModel& model);

/// Regret R = Q - F and normalized square-root regrets. Throws
/// BoundViolationError when R has an eigenvalue below -1e-6.
RegretReport regret_report(const Matrix2& fim, const Matrix2& qfim);

}  // namespace irtr
