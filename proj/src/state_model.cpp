#include "irtr/state_model.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "irtr/quadrature.hpp"

namespace irtr {

namespace {

constexpr double kDegenerateOverlap = 1e-12;
constexpr double kClampTolerance = 1e-12;

double clamped_square(double value, const char* name) {
  if (value >= 0.0) return value;
  if (value >= -kClampTolerance) return 0.0;
  throw DegenerateStateError(std::string(name) + "^2 is negative: " + std::to_string(value));
}

struct Etas {
  double eta3;
  double eta4;
};

Etas etas(const OverlapIntegrals& o) {
  if (o.one_minus_delta <= kDegenerateOverlap)
    throw DegenerateStateError("source modes are degenerate (1 - delta <= 1e-12)");
  const double e3 = clamped_square(o.kappa + o.beta - o.gamma * o.gamma / o.one_minus_delta, "eta3");
  const double e4 = clamped_square(o.kappa - o.beta - o.gamma * o.gamma / (1.0 + o.delta), "eta4");
  return {std::sqrt(e3), std::sqrt(e4)};
}

}  // namespace

Matrix4 StateModel4::rho_derivative(int parameter) const {
  const Matrix4& l = parameter == 0 ? sld_centroid : sld_separation;
  return 0.5 * (l * rho + rho * l);
}

StateModel4 build_state_model(const OverlapIntegrals& o) {
  const auto [eta3, eta4] = etas(o);
  const double d = o.delta;
  const double g = o.gamma;
  const double dm = o.one_minus_delta;
  const double sm = std::sqrt(dm);
  const double sp = std::sqrt(1.0 + d);

  StateModel4 m;
  m.eta3 = eta3;
  m.eta4 = eta4;
  m.rho = Matrix4::Zero();
  m.rho(0, 0) = 0.5 * dm;
  m.rho(1, 1) = 0.5 * (1.0 + d);

  const double a = 2.0 * g * d / (sm * sp);
  m.sld_centroid = Matrix4::Zero();
  m.sld_centroid(0, 1) = m.sld_centroid(1, 0) = a;
  m.sld_centroid(0, 3) = m.sld_centroid(3, 0) = 2.0 * eta4 / sm;
  m.sld_centroid(1, 2) = m.sld_centroid(2, 1) = 2.0 * eta3 / sp;

  m.sld_separation = Matrix4::Zero();
  m.sld_separation(0, 0) = -g / dm;
  m.sld_separation(1, 1) = g / (1.0 + d);
  m.sld_separation(0, 2) = m.sld_separation(2, 0) = -eta3 / sm;
  m.sld_separation(1, 3) = m.sld_separation(3, 1) = -eta4 / sp;
  return m;
}

Qfim qfim(const OverlapIntegrals& o) {
  Qfim q;
  q.matrix << 4.0 * o.kappa - 4.0 * o.gamma * o.gamma, 0.0, 0.0, o.kappa;
  return q;
}

IncompatibilityCoefficients incompatibility(const OverlapIntegrals& o) {
  const double reduced = o.kappa - o.gamma * o.gamma;
  if (!(reduced > 0.0) || !(o.kappa > 0.0))
    throw DegenerateStateError("kappa - gamma^2 must be positive");
  IncompatibilityCoefficients out;
  out.c_tilde = std::abs(o.beta) / std::sqrt(o.kappa * reduced);

  const StateModel4 m = build_state_model(o);
  const Matrix2 f = qfim(o).matrix;
  const Matrix4 comm = m.sld_centroid * m.sld_separation - m.sld_separation * m.sld_centroid;
  const double norm = 2.0 * std::sqrt(f(0, 0) * f(1, 1));
  out.c = std::abs((comm * m.rho).trace()) / norm;

  // U_jk = -(i/4) tr(rho [L_j, L_k]); for two parameters det(2U) = -|2 U_12|^2.
  using cplx = std::complex<double>;
  Eigen::Matrix2cd u = Eigen::Matrix2cd::Zero();
  const cplx u12 = cplx(0.0, -0.25) * (m.rho * comm).trace();
  u(0, 1) = u12;
  u(1, 0) = -u12;
  const double det2u = std::abs((2.0 * u).determinant());
  out.gamma_measure = std::sqrt(det2u / f.determinant());
  return out;
}

double gaussian_incompatibility(double sigma, double separation) {
  if (!(sigma > 0.0) || !(separation > 0.0))
    throw DomainError("sigma and separation must be positive");
  const double t = separation * separation / (4.0 * sigma * sigma);
  const double num = 1.0 - t;
  return std::abs(num) / std::sqrt(std::exp(t) - t);
}

double commutator_quantity(const StateModel4& model) {
  const Matrix4 root = model.rho.cwiseSqrt();  // rho is diagonal
  const Matrix4 comm =
      model.sld_centroid * model.sld_separation - model.sld_separation * model.sld_centroid;
  const Matrix4 arg = root * comm * root;
  Eigen::JacobiSVD<Matrix4> svd(arg);
  return svd.singularValues().sum();
}

Matrix4 SubspaceBasis::gram() const {
  Matrix4 g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < x.size(); ++k) s += w[k] * e[i][k] * e[j][k];
      g(i, j) = s;
    }
  return g;
}

Eigen::Vector4d SubspaceBasis::project(const std::vector<double>& f) const {
  Eigen::Vector4d c;
  for (int i = 0; i < 4; ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) s += w[k] * e[i][k] * f[k];
    c(i) = s;
  }
  return c;
}

SubspaceBasis subspace_basis_wavefunctions(const PointSpreadFunction& psf,
                                           const SourceGeometry& geometry,
                                           const QuadratureSpec& quad) {
  const OverlapIntegrals o = overlap_integrals(psf, geometry, quad);
  const auto [eta3, eta4] = etas(o);
  if (eta3 <= 0.0 || eta4 <= 0.0)
    throw DegenerateStateError("derivative modes are linearly dependent on the source modes");

  const double sigma = psf.sigma();
  const double a = geometry.x1() - quad.truncation_radius * sigma;
  const double b = geometry.x2() + quad.truncation_radius * sigma;
  // One panel doubling beyond the requested density.
  const int panels = 2 * static_cast<int>(std::ceil((b - a) / sigma * quad.panel_count));
  const QuadratureGrid grid = composite_grid(GaussLegendreRule(quad.nodes_per_panel), a, b, panels);

  SubspaceBasis basis;
  basis.x = grid.x;
  basis.w = grid.w;
  for (auto& v : basis.e) v.resize(grid.size());

  const double n1 = 1.0 / std::sqrt(2.0 * o.one_minus_delta);
  const double n2 = 1.0 / std::sqrt(2.0 * (1.0 + o.delta));
  const double r2 = 1.0 / std::sqrt(2.0);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double x = grid.x[k];
    const double p1 = psf.amplitude(x - geometry.x1());
    const double p2 = psf.amplitude(x - geometry.x2());
    // d psi(x - X) / dX = -psi'(x - X)
    const double q1 = -psf.derivative(x - geometry.x1());
    const double q2 = -psf.derivative(x - geometry.x2());
    const double e1 = n1 * (p1 - p2);
    const double e2 = n2 * (p1 + p2);
    basis.e[0][k] = e1;
    basis.e[1][k] = e2;
    basis.e[2][k] = (r2 * (q1 + q2) - o.gamma / std::sqrt(o.one_minus_delta) * e1) / eta3;
    basis.e[3][k] = (r2 * (q1 - q2) + o.gamma / std::sqrt(1.0 + o.delta) * e2) / eta4;
  }
  return basis;
}

double verify_sld(const PointSpreadFunction& psf, const SourceGeometry& geometry,
                  const QuadratureSpec& quad, double step) {
  const double sigma = psf.sigma();
  if (!(step >= 1e-7 * sigma && step <= 1e-3 * sigma))
    throw DomainError("finite-difference step must lie in [1e-7 sigma, 1e-3 sigma]");

  if (!(geometry.separation() > step)) throw DomainError("separation must exceed the step");

  const SubspaceBasis basis = subspace_basis_wavefunctions(psf, geometry, quad);
  const StateModel4 model = build_state_model(overlap_integrals(psf, geometry, quad));

  auto projected_rho = [&](double centroid, double separation) {
    const SourceGeometry g(centroid, separation);
    std::vector<double> f1(basis.x.size());
    std::vector<double> f2(basis.x.size());
    for (std::size_t k = 0; k < basis.x.size(); ++k) {
      f1[k] = psf.amplitude(basis.x[k] - g.x1());
      f2[k] = psf.amplitude(basis.x[k] - g.x2());
    }
    const Eigen::Vector4d c1 = basis.project(f1);
    const Eigen::Vector4d c2 = basis.project(f2);
    return Matrix4(0.5 * (c1 * c1.transpose() + c2 * c2.transpose()));
  };

  const double t1 = geometry.centroid();
  const double t2 = geometry.separation();
  const Matrix4 d1 = (projected_rho(t1 + step, t2) - projected_rho(t1 - step, t2)) / (2.0 * step);
  const Matrix4 d2 = (projected_rho(t1, t2 + step) - projected_rho(t1, t2 - step)) / (2.0 * step);
  const double r1 = (d1 - model.rho_derivative(0)).norm();
  const double r2 = (d2 - model.rho_derivative(1)).norm();
  return std::max(r1, r2);
}

}  // namespace irtr
