#include "irtr/measurements.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "irtr/quadrature.hpp"

namespace irtr {

namespace {

constexpr double kSpadeMassTarget = 1e-14;
constexpr int kSpadeModeCap = 512;
constexpr int kSpadeTailTerms = 64;
// Adaptive cutoffs also keep the dropped Fisher information below this, in
// units of sigma^-2. High modes carry far more information than mass.
constexpr double kSpadeFisherTarget = 1e-16;

/// Poisson-shaped terms t_q = a^(2q) e^(-a^2) / q! and their a-derivatives
/// 2a (t_{q-1} - t_q).
struct ModeTerms {
  std::vector<double> value;
  std::vector<double> slope;
};

ModeTerms mode_terms(double a, int last) {
  ModeTerms t;
  t.value.resize(last + 1);
  t.slope.resize(last + 1);
  const double a2 = a * a;
  // Log space: exp(-a^2) alone underflows for large displacements.
  const double log_a2 = a2 > 0.0 ? std::log(a2) : -std::numeric_limits<double>::infinity();
  for (int q = 0; q <= last; ++q)
    t.value[q] = q == 0 ? std::exp(-a2) : std::exp(q * log_a2 - a2 - std::lgamma(q + 1.0));
  t.slope[0] = -2.0 * a * t.value[0];
  for (int q = 1; q <= last; ++q) t.slope[q] = 2.0 * a * (t.value[q - 1] - t.value[q]);
  return t;
}

/// Upper bound on sum_{q > last} t_q for a Poisson(lambda) pmf; infinite
/// while the terms are still growing.
double poisson_tail_bound(double lambda, double next_term, int last) {
  const double ratio = lambda / (last + 2.0);
  if (ratio >= 1.0) return std::numeric_limits<double>::infinity();
  return next_term / (1.0 - ratio);
}

void fill_direct_point(const PointSpreadFunction& psf, const SourceGeometry& g, double x,
                       double& p, double& d1, double& d2) {
  const double a1 = psf.amplitude(x - g.x1());
  const double a2 = psf.amplitude(x - g.x2());
  const double s1 = psf.derivative(x - g.x1());
  const double s2 = psf.derivative(x - g.x2());
  p = 0.5 * (a1 * a1 + a2 * a2);
  // dp/dX_j = -psi_j psi_j'; dX_j/dtheta1 = 1, dX_1/dtheta2 = -1/2, dX_2/dtheta2 = +1/2.
  d1 = -(a1 * s1 + a2 * s2);
  d2 = 0.5 * (a1 * s1 - a2 * s2);
}

double gaussian_tail_mass(const PointSpreadFunction& psf, double radius) {
  return psf.kind() == PsfKind::Gaussian ? std::erfc(radius / std::numbers::sqrt2) : 0.0;
}

}  // namespace

double ProbabilityModel::total_probability() const {
  double s = 0.0;
  for (double p : probabilities) s += p;
  return s;
}

ProbabilityModel direct_imaging_model(const PointSpreadFunction& psf,
                                      const SourceGeometry& geometry,
                                      const QuadratureSpec& quad) {
  quad.validate();
  const double sigma = psf.sigma();
  const double a = geometry.x1() - quad.truncation_radius * sigma;
  const double b = geometry.x2() + quad.truncation_radius * sigma;
  const int panels = static_cast<int>(std::ceil((b - a) / sigma * quad.panel_count));
  const QuadratureGrid grid = composite_grid(GaussLegendreRule(quad.nodes_per_panel), a, b, panels);

  ProbabilityModel m;
  m.kind = OutcomeKind::ContinuumGrid;
  m.probabilities.resize(grid.size());
  m.d_centroid.resize(grid.size());
  m.d_separation.resize(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    double p = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
    fill_direct_point(psf, geometry, grid.x[k], p, d1, d2);
    m.probabilities[k] = grid.w[k] * p;
    m.d_centroid[k] = grid.w[k] * d1;
    m.d_separation[k] = grid.w[k] * d2;
  }
  m.truncated_mass = gaussian_tail_mass(psf, quad.truncation_radius);
  return m;
}

ProbabilityModel pixelated_direct_imaging_model(const PointSpreadFunction& psf,
                                                const SourceGeometry& geometry,
                                                double pixel_width, const QuadratureSpec& quad) {
  quad.validate();
  if (!(pixel_width > 0.0)) throw DomainError("pixel width must be positive");
  const double sigma = psf.sigma();
  const double lo = std::floor((geometry.x1() - quad.truncation_radius * sigma) / pixel_width);
  const double hi = std::ceil((geometry.x2() + quad.truncation_radius * sigma) / pixel_width);
  const auto pixels = static_cast<std::size_t>(hi - lo);
  const int sub = std::max(1, static_cast<int>(std::ceil(pixel_width / sigma * quad.panel_count)));
  const GaussLegendreRule rule(quad.nodes_per_panel);

  ProbabilityModel m;
  m.kind = OutcomeKind::ContinuumGrid;
  m.probabilities.assign(pixels, 0.0);
  m.d_centroid.assign(pixels, 0.0);
  m.d_separation.assign(pixels, 0.0);
  for (std::size_t i = 0; i < pixels; ++i) {
    const double left = (lo + static_cast<double>(i)) * pixel_width;
    const QuadratureGrid grid = composite_grid(rule, left, left + pixel_width, sub);
    for (std::size_t k = 0; k < grid.size(); ++k) {
      double p = 0.0;
      double d1 = 0.0;
      double d2 = 0.0;
      fill_direct_point(psf, geometry, grid.x[k], p, d1, d2);
      m.probabilities[i] += grid.w[k] * p;
      m.d_centroid[i] += grid.w[k] * d1;
      m.d_separation[i] += grid.w[k] * d2;
    }
  }
  m.truncated_mass = gaussian_tail_mass(psf, quad.truncation_radius);
  return m;
}

ProbabilityModel spade_model(double sigma, const SourceGeometry& geometry,
                             std::optional<int> mode_cutoff) {
  if (!(sigma > 0.0)) throw DomainError("sigma must be positive");
  if (mode_cutoff && *mode_cutoff < 0) throw DomainError("mode cutoff must be nonnegative");
  const double a1 = geometry.x1() / (2.0 * sigma);
  const double a2 = geometry.x2() / (2.0 * sigma);

  auto tail_mass = [&](int last) {
    auto next = [last](double a) {
      const double a_sq = a * a;
      if (a_sq == 0.0) return 0.0;
      return std::exp((last + 1.0) * std::log(a_sq) - a_sq - std::lgamma(last + 2.0));
    };
    const double n1 = next(a1);
    const double n2 = next(a2);
    return 0.5 * (poisson_tail_bound(a1 * a1, n1, last) + poisson_tail_bound(a2 * a2, n2, last));
  };

  int last = 0;
  double mass = 0.0;
  ModeTerms t1;
  ModeTerms t2;
  if (mode_cutoff) {
    last = *mode_cutoff;
    t1 = mode_terms(a1, last);
    t2 = mode_terms(a2, last);
    mass = tail_mass(last);
    if (!(mass < kSpadeMassTarget))
      throw CutoffError("mode cutoff " + std::to_string(last) + " leaves truncated mass " +
                        std::to_string(mass));
  } else {
    t1 = mode_terms(a1, kSpadeModeCap);
    t2 = mode_terms(a2, kSpadeModeCap);
    // Fisher information of the modes above each candidate cutoff.
    std::vector<double> fisher_above(kSpadeModeCap + 2, 0.0);
    for (int q = kSpadeModeCap; q >= 0; --q) {
      const double p = 0.5 * (t1.value[q] + t2.value[q]);
      double f = 0.0;
      if (p > 0.0) {
        const double d1 = 0.5 * (t1.slope[q] + t2.slope[q]);
        const double d2 = 0.25 * (t2.slope[q] - t1.slope[q]);
        f = std::max(d1 * d1, d2 * d2) / (4.0 * p);
      }
      fisher_above[q] = fisher_above[q + 1] + f;
    }
    for (last = 0; last <= kSpadeModeCap; ++last) {
      mass = tail_mass(last);
      if (mass < kSpadeMassTarget && fisher_above[last + 1] < kSpadeFisherTarget) break;
    }
    if (last > kSpadeModeCap)
      throw CutoffError("SPADE truncated mass stays above 1e-14 at the 512-mode cap");
    t1.value.resize(last + 1);
    t1.slope.resize(last + 1);
    t2.value.resize(last + 1);
    t2.slope.resize(last + 1);
  }

  // d alpha_1 / d(theta1, theta2) = (1, -1/2) / 2 sigma; alpha_2: (1, +1/2) / 2 sigma.
  const double c = 1.0 / (2.0 * sigma);
  ProbabilityModel m;
  m.kind = OutcomeKind::DiscreteModes;
  m.probabilities.resize(last + 1);
  m.d_centroid.resize(last + 1);
  m.d_separation.resize(last + 1);
  for (int q = 0; q <= last; ++q) {
    m.probabilities[q] = 0.5 * (t1.value[q] + t2.value[q]);
    m.d_centroid[q] = 0.5 * c * (t1.slope[q] + t2.slope[q]);
    m.d_separation[q] = 0.25 * c * (t2.slope[q] - t1.slope[q]);
  }
  m.truncated_mass = mass;

  // Fisher information of the next block of modes beyond the cutoff.
  const ModeTerms e1 = mode_terms(a1, last + kSpadeTailTerms);
  const ModeTerms e2 = mode_terms(a2, last + kSpadeTailTerms);
  double tail11 = 0.0;
  double tail22 = 0.0;
  for (int q = last + 1; q <= last + kSpadeTailTerms; ++q) {
    const double p = 0.5 * (e1.value[q] + e2.value[q]);
    if (!(p > 0.0)) continue;
    const double d1 = 0.5 * c * (e1.slope[q] + e2.slope[q]);
    const double d2 = 0.25 * c * (e2.slope[q] - e1.slope[q]);
    tail11 += d1 * d1 / p;
    tail22 += d2 * d2 / p;
  }
  m.fisher_tail_estimate = std::max(tail11, tail22);
  return m;
}

double hermite_gaussian_wavefunction(int q, double sigma, double x) {
  if (q < 0) throw DomainError("mode index must be nonnegative");
  if (!(sigma > 0.0)) throw DomainError("sigma must be positive");
  const double xi = x / (std::numbers::sqrt2 * sigma);
  // Normalized Hermite functions h_q = H_q / sqrt(2^q q!):
  // h_{q+1} = sqrt(2/(q+1)) xi h_q - sqrt(q/(q+1)) h_{q-1}.
  double prev = 0.0;
  double cur = 1.0;
  for (int k = 0; k < q; ++k) {
    const double next = std::sqrt(2.0 / (k + 1.0)) * xi * cur - std::sqrt(k / (k + 1.0)) * prev;
    prev = cur;
    cur = next;
  }
  const double ground = std::pow(2.0 * std::numbers::pi * sigma * sigma, -0.25) *
                        std::exp(-x * x / (4.0 * sigma * sigma));
  return ground * cur;
}

Eigen::MatrixXd haar_random_orthogonal(RngStream& rng, int dim) {
  if (dim < 2) throw DomainError("dimension must be at least 2");
  Eigen::MatrixXd a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = rng.normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd& r = qr.matrixQR();
  for (int j = 0; j < dim; ++j)
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  return q;
}

ProjectiveMeasurement4 haar_random_measurement(RngStream& rng) {
  ProjectiveMeasurement4 m;
  m.seed = rng.seed();
  m.stream_index = rng.stream_index();
  m.matrix = haar_random_orthogonal(rng, 4);
  return m;
}

ProbabilityModel projective_model(const StateModel4& state, const ProjectiveMeasurement4& meas) {
  const Matrix4& o = meas.matrix;
  const Matrix4 p = o * state.rho * o.transpose();
  const Matrix4 g1 = o * state.rho_derivative(0) * o.transpose();
  const Matrix4 g2 = o * state.rho_derivative(1) * o.transpose();
  ProbabilityModel m;
  m.kind = OutcomeKind::SubspaceProjectors;
  for (int k = 0; k < 4; ++k) {
    m.probabilities.push_back(std::max(0.0, p(k, k)));
    m.d_centroid.push_back(g1(k, k));
    m.d_separation.push_back(g2(k, k));
  }
  return m;
}

Matrix2 fim(const ProbabilityModel& model) {
  const std::size_t n = model.size();
  if (model.d_centroid.size() != n || model.d_separation.size() != n)
    throw DomainError("probability model columns differ in length");
  double pmax = 0.0;
  double dmax = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (model.probabilities[k] < 0.0) throw DomainError("negative outcome probability");
    pmax = std::max(pmax, model.probabilities[k]);
    dmax = std::max({dmax, std::abs(model.d_centroid[k]), std::abs(model.d_separation[k])});
  }
  Matrix2 f = Matrix2::Zero();
  const double pcut = 1e-15 * pmax;
  const double dcut = 1e-9 * dmax;
  for (std::size_t k = 0; k < n; ++k) {
    const double p = model.probabilities[k];
    const double d1 = model.d_centroid[k];
    const double d2 = model.d_separation[k];
    if (p < pcut || p == 0.0) {
      if (dmax > 0.0 && (std::abs(d1) >= dcut || std::abs(d2) >= dcut))
        throw DegenerateOutcomeError("outcome " + std::to_string(k) +
                                     " has vanishing probability but non-vanishing derivative");
      continue;
    }
    f(0, 0) += d1 * d1 / p;
    f(0, 1) += d1 * d2 / p;
    f(1, 1) += d2 * d2 / p;
  }
  f(1, 0) = f(0, 1);
  return f;
}

RegretReport regret_report(const Matrix2& fim, const Matrix2& qfim) {
  if (!(qfim(0, 0) > 0.0) || !(qfim(1, 1) > 0.0))
    throw DomainError("QFIM diagonal must be positive");
  RegretReport r;
  r.fim = fim;
  r.qfim = qfim;
  r.regret = qfim - fim;
  const Eigen::SelfAdjointEigenSolver<Matrix2> eig(r.regret, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -1e-6)
    throw BoundViolationError("Fisher information exceeds the quantum limit (regret eigenvalue " +
                              std::to_string(eig.eigenvalues().minCoeff()) + ")");
  double ratio[2];
  for (int j = 0; j < 2; ++j) {
    ratio[j] = r.regret(j, j) / qfim(j, j);
    if (ratio[j] < 0.0) {
      if (ratio[j] < -1e-9)
        throw BoundViolationError("negative information regret for parameter " +
                                  std::to_string(j + 1));
      ratio[j] = 0.0;
      r.regret(j, j) = 0.0;
    }
  }
  r.delta1 = std::sqrt(std::min(1.0, ratio[0]));
  r.delta2 = std::sqrt(std::min(1.0, ratio[1]));
  return r;
}

}  // namespace irtr
