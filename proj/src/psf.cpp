#include "irtr/psf.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "irtr/quadrature.hpp"

namespace irtr {

namespace {

struct SampledProfile {
  double x0 = 0.0;
  double step = 0.0;
  std::vector<double> f;
  std::vector<double> df;

  std::size_t cell(double x) const {
    const auto i = static_cast<std::size_t>(std::floor((x - x0) / step));
    return std::min(i, f.size() - 2);
  }
  bool outside(double x) const { return x < x0 || x > x0 + step * static_cast<double>(f.size() - 1); }

  double value(double x) const {
    if (outside(x)) return 0.0;
    const std::size_t i = cell(x);
    const double t = (x - (x0 + step * static_cast<double>(i))) / step;
    const double t2 = t * t;
    const double t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * f[i] + (t3 - 2 * t2 + t) * step * df[i] +
           (-2 * t3 + 3 * t2) * f[i + 1] + (t3 - t2) * step * df[i + 1];
  }

  double slope(double x) const {
    if (outside(x)) return 0.0;
    const std::size_t i = cell(x);
    const double t = (x - (x0 + step * static_cast<double>(i))) / step;
    const double t2 = t * t;
    return ((6 * t2 - 6 * t) * f[i] + (3 * t2 - 4 * t + 1) * step * df[i] +
            (-6 * t2 + 6 * t) * f[i + 1] + (3 * t2 - 2 * t) * step * df[i + 1]) /
           step;
  }
};

std::vector<double> fourth_order_derivative(const std::vector<double>& f, double h) {
  const std::size_t n = f.size();
  std::vector<double> d(n);
  for (std::size_t i = 2; i + 2 < n; ++i)
    d[i] = (-f[i + 2] + 8 * f[i + 1] - 8 * f[i - 1] + f[i - 2]) / (12 * h);
  d[0] = (-25 * f[0] + 48 * f[1] - 36 * f[2] + 16 * f[3] - 3 * f[4]) / (12 * h);
  d[1] = (-3 * f[0] - 10 * f[1] + 18 * f[2] - 6 * f[3] + f[4]) / (12 * h);
  d[n - 1] = (25 * f[n - 1] - 48 * f[n - 2] + 36 * f[n - 3] - 16 * f[n - 4] + 3 * f[n - 5]) / (12 * h);
  d[n - 2] = (3 * f[n - 1] + 10 * f[n - 2] - 18 * f[n - 3] + 6 * f[n - 4] - f[n - 5]) / (12 * h);
  return d;
}

void require_sigma(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DomainError("sigma must be positive and finite");
}

}  // namespace

PointSpreadFunction PointSpreadFunction::gaussian(double sigma) {
  require_sigma(sigma);
  const double norm = std::pow(2.0 * std::numbers::pi * sigma * sigma, -0.25);
  const double inv = 1.0 / (4.0 * sigma * sigma);
  auto amp = [norm, inv](double x) { return norm * std::exp(-x * x * inv); };
  auto der = [norm, inv](double x) { return -2.0 * x * inv * norm * std::exp(-x * x * inv); };
  return PointSpreadFunction(PsfKind::Gaussian, sigma, amp, der);
}

PointSpreadFunction PointSpreadFunction::from_profile(Profile amplitude, double sigma,
                                                      Profile derivative) {
  require_sigma(sigma);
  if (!amplitude) throw DomainError("amplitude profile is empty");
  if (!derivative) {
    const double h = 1e-3 * sigma;
    derivative = [amplitude, h](double x) {
      return (-amplitude(x + 2 * h) + 8 * amplitude(x + h) - 8 * amplitude(x - h) +
              amplitude(x - 2 * h)) /
             (12 * h);
    };
  }
  return PointSpreadFunction(PsfKind::UserDefined, sigma, std::move(amplitude),
                             std::move(derivative));
}

PointSpreadFunction PointSpreadFunction::from_samples(std::vector<double> x,
                                                      std::vector<double> amplitude,
                                                      double sigma) {
  require_sigma(sigma);
  if (x.size() != amplitude.size()) throw DomainError("sample columns differ in length");
  if (x.size() < 5) throw DomainError("at least 5 samples are required");
  const double step = (x.back() - x.front()) / static_cast<double>(x.size() - 1);
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (!(x[i] > x[i - 1])) throw DomainError("sample positions must be strictly increasing");
    if (std::abs((x[i] - x[i - 1]) - step) > 1e-6 * step)
      throw DomainError("sample positions must be uniformly spaced");
  }
  auto table = std::make_shared<SampledProfile>();
  table->x0 = x.front();
  table->step = step;
  table->df = fourth_order_derivative(amplitude, step);
  table->f = std::move(amplitude);
  return PointSpreadFunction(
      PsfKind::UserDefined, sigma, [table](double v) { return table->value(v); },
      [table](double v) { return table->slope(v); });
}

PointSpreadFunction PointSpreadFunction::load(const std::filesystem::path& path, double sigma) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open PSF file " + path.string());
  std::vector<double> xs;
  std::vector<double> ys;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream row(line);
    double xv = 0.0;
    double yv = 0.0;
    std::string extra;
    if (!(row >> xv >> yv) || (row >> extra))
      throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                        ": expected two numeric columns");
    if (!xs.empty() && !(xv > xs.back()))
      throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                        ": x must be strictly increasing");
    xs.push_back(xv);
    ys.push_back(yv);
  }
  try {
    return from_samples(std::move(xs), std::move(ys), sigma);
  } catch (const DomainError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

PointSpreadFunction PointSpreadFunction::scaled(double factor) const {
  auto amp = amplitude_;
  auto der = derivative_;
  return PointSpreadFunction(
      kind_ == PsfKind::Gaussian && factor == 1.0 ? kind_ : PsfKind::UserDefined, sigma_,
      [amp, factor](double x) { return factor * amp(x); },
      [der, factor](double x) { return factor * der(x); });
}

SourceGeometry::SourceGeometry(double centroid, double separation)
    : centroid_(centroid), separation_(separation) {
  if (!std::isfinite(centroid)) throw DomainError("centroid must be finite");
  if (!(separation > 0.0) || !std::isfinite(separation))
    throw DomainError("separation must be positive and finite");
}

void QuadratureSpec::validate() const {
  if (!(truncation_radius >= 8.0)) throw DomainError("truncation_radius must be at least 8");
  if (panel_count < 1) throw DomainError("panel_count must be positive");
  if (nodes_per_panel < 1) throw DomainError("nodes_per_panel must be positive");
  if (!(abs_tolerance > 0.0)) throw DomainError("abs_tolerance must be positive");
}

double eval_psf(const PointSpreadFunction& psf, double x) { return psf.amplitude(x); }

double eval_psf_derivative(const PointSpreadFunction& psf, double x) { return psf.derivative(x); }

OverlapIntegrals overlap_integrals(const PointSpreadFunction& psf, const SourceGeometry& geometry,
                                   const QuadratureSpec& quad) {
  quad.validate();
  const double sigma = psf.sigma();
  const double s = geometry.separation();
  const double a = -quad.truncation_radius * sigma;
  const double b = s + quad.truncation_radius * sigma;
  const int panels = static_cast<int>(std::ceil((b - a) / sigma * quad.panel_count));
  const GaussLegendreRule rule(quad.nodes_per_panel);

  // Integrate in the frame of the first source, with derivative terms scaled
  // by sigma^2 so the tolerance applies to dimensionless values.
  const double s2 = sigma * sigma;
  auto integrand = [&](double u) -> std::array<double, 6> {
    const double p0 = psf.amplitude(u);
    const double d0 = psf.derivative(u);
    const double p1 = psf.amplitude(u - s);
    const double d1 = psf.derivative(u - s);
    const double diff = p0 - p1;
    return {p0 * p0, s2 * d0 * d0, s2 * d0 * p1, s2 * d0 * d1, p0 * p1, 0.5 * diff * diff};
  };
  const auto v = integrate_refined<6>(integrand, a, b, panels, rule, quad.abs_tolerance);

  // The first-source window [a, b] contains [-R sigma, R sigma].
  if (std::abs(v[0] - 1.0) > 10.0 * quad.abs_tolerance)
    throw NormalizationError("PSF is not normalized: |int psi^2 - 1| = " +
                             std::to_string(std::abs(v[0] - 1.0)));
  return OverlapIntegrals{v[1] / s2, v[2] / s2, v[3] / s2, v[4], v[5]};
}

OverlapIntegrals gaussian_overlap_integrals(double sigma, double separation) {
  require_sigma(sigma);
  if (!(separation > 0.0)) throw DomainError("separation must be positive");
  const double s2 = sigma * sigma;
  const double exponent = -separation * separation / (8.0 * s2);
  const double decay = std::exp(exponent);
  return OverlapIntegrals{
      1.0 / (4.0 * s2),
      -separation / (4.0 * s2) * decay,
      -(separation * separation - 4.0 * s2) / (16.0 * s2 * s2) * decay,
      decay,
      -std::expm1(exponent),
  };
}

double check_normalization(const PointSpreadFunction& psf, const QuadratureSpec& quad) {
  quad.validate();
  const double r = quad.truncation_radius * psf.sigma();
  const int panels = static_cast<int>(std::ceil(2.0 * quad.truncation_radius * quad.panel_count));
  const GaussLegendreRule rule(quad.nodes_per_panel);
  auto integrand = [&](double x) -> std::array<double, 1> {
    const double p = psf.amplitude(x);
    return {p * p};
  };
  const auto v = integrate_refined<1>(integrand, -r, r, panels, rule, quad.abs_tolerance);
  return std::abs(v[0] - 1.0);
}

}  // namespace irtr
