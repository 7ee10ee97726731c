#pragma once

#include <filesystem>
#include <functional>
#include <memory>
#include <vector>

#include "irtr/errors.hpp"

namespace irtr {

enum class PsfKind { Gaussian, UserDefined };

/// A real, normalized one-dimensional amplitude point-spread function.
///
/// `sigma` is the characteristic length; quadrature domains and finite
/// difference steps are expressed in multiples of it. Copies share the
/// underlying (immutable) sample data.
class PointSpreadFunction {
 public:
  using Profile = std::function<double(double)>;

  /// psi(x) = (2 pi sigma^2)^(-1/4) exp(-x^2 / 4 sigma^2)
  static PointSpreadFunction gaussian(double sigma);

  /// Arbitrary profile. Without `derivative`, psi' is taken from a
  /// fourth-order central difference with step 1e-3 sigma.
  static PointSpreadFunction from_profile(Profile amplitude, double sigma,
                                          Profile derivative = nullptr);

  /// Samples on a uniform, strictly increasing grid (at least 5 points).
  /// Node derivatives come from fourth-order differences; between nodes the
  /// profile is the cubic Hermite interpolant, and zero outside the grid.
  static PointSpreadFunction from_samples(std::vector<double> x, std::vector<double> amplitude,
                                          double sigma);

  /// Two-column text file (x, psi(x)); '#' starts a comment line.
  static PointSpreadFunction load(const std::filesystem::path& path, double sigma);

  PsfKind kind() const { return kind_; }
  double sigma() const { return sigma_; }

  double amplitude(double x) const { return amplitude_(x); }
  double derivative(double x) const { return derivative_(x); }

  /// Same profile multiplied by `factor` (derivative included).
  PointSpreadFunction scaled(double factor) const;

 private:
  PointSpreadFunction(PsfKind kind, double sigma, Profile amplitude, Profile derivative)
      : kind_(kind), sigma_(sigma), amplitude_(std::move(amplitude)),
        derivative_(std::move(derivative)) {}

  PsfKind kind_;
  double sigma_;
  Profile amplitude_;
  Profile derivative_;
};

/// Centroid theta1 and separation theta2 of the two sources.
class SourceGeometry {
 public:
  SourceGeometry(double centroid, double separation);

  double centroid() const { return centroid_; }
  double separation() const { return separation_; }
  double x1() const { return centroid_ - 0.5 * separation_; }
  double x2() const { return centroid_ + 0.5 * separation_; }

 private:
  double centroid_;
  double separation_;
};

struct QuadratureSpec {
  /// Half-width of the domain beyond each source, in units of sigma.
  double truncation_radius = 12.0;
  /// Initial panels per sigma of domain length.
  int panel_count = 1;
  int nodes_per_panel = 32;
  double abs_tolerance = 1e-12;

  void validate() const;
};

/// The four scalars that fix the whole two-source estimation model.
/// kappa, gamma and beta carry units of length^-2; delta is dimensionless.
struct OverlapIntegrals {
  double kappa = 0.0;
  double gamma = 0.0;
  double beta = 0.0;
  double delta = 0.0;
  /// 1 - delta, computed directly so it keeps full relative precision when
  /// the sources nearly coincide.
  double one_minus_delta = 1.0;
};

double eval_psf(const PointSpreadFunction& psf, double x);
double eval_psf_derivative(const PointSpreadFunction& psf, double x);

/// kappa = int psi'^2, gamma = int psi'(x) psi(x - s), beta = int psi'(x) psi'(x - s),
/// delta = int psi(x) psi(x - s) with s the separation. Only the separation
/// enters, so the result is exactly invariant under moving the centroid.
OverlapIntegrals overlap_integrals(const PointSpreadFunction& psf, const SourceGeometry& geometry,
                                   const QuadratureSpec& quad = {});

/// Closed forms for the Gaussian profile.
OverlapIntegrals gaussian_overlap_integrals(double sigma, double separation);

/// |int psi^2 - 1| over [-R sigma, R sigma].
double check_normalization(const PointSpreadFunction& psf, const QuadratureSpec& quad = {});

}  // namespace irtr
