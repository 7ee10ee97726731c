#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "irtr/psf.hpp"
#include "oracles.hpp"

using namespace irtr;
using irtr::testing::trapezoid;

TEST_CASE("Gaussian PSF closed form") {
  const auto psf = PointSpreadFunction::gaussian(1.0);
  CHECK(psf.kind() == PsfKind::Gaussian);
  CHECK(eval_psf(psf, 0.0) == doctest::Approx(0.631618777746064701).epsilon(1e-15));
  CHECK(eval_psf(psf, 60.0) < 1e-300);
  CHECK(eval_psf(psf, -60.0) < 1e-300);
  CHECK(eval_psf(PointSpreadFunction::gaussian(2.0), 0.0) ==
        doctest::Approx(0.446621920869001166).epsilon(1e-15));
  CHECK(eval_psf_derivative(psf, 0.0) == 0.0);
  CHECK(eval_psf_derivative(psf, 1.0) == doctest::Approx(-0.5 * eval_psf(psf, 1.0)).epsilon(1e-15));
  CHECK_THROWS_AS(PointSpreadFunction::gaussian(0.0), DomainError);
}

TEST_CASE("derivative matches central differences") {
  const double h = 1e-5;
  const auto gauss = PointSpreadFunction::gaussian(1.3);
  const auto lorentz_like = PointSpreadFunction::from_profile(
      [](double x) { return std::sqrt(2.0 / M_PI) / (1.0 + x * x); }, 1.0);
  for (const auto* psf : {&gauss, &lorentz_like}) {
    for (double x : {-3.0, -0.7, 0.0, 0.4, 2.5}) {
      const double fd = (psf->amplitude(x + h) - psf->amplitude(x - h)) / (2 * h);
      CHECK(std::abs(psf->derivative(x) - fd) < 1e-9);
    }
  }
}

TEST_CASE("Gaussian overlaps: quadrature agrees with closed forms") {
  for (double sigma : {1.0, 0.7}) {
    const auto psf = PointSpreadFunction::gaussian(sigma);
    for (double t = 0.05; t <= 10.0 + 1e-9; t += 0.05) {
      const auto q = overlap_integrals(psf, SourceGeometry(0.3, t * sigma));
      const auto c = gaussian_overlap_integrals(sigma, t * sigma);
      const double s2 = sigma * sigma;
      CHECK(std::abs(q.kappa - c.kappa) * s2 < 1e-12);
      CHECK(std::abs(q.gamma - c.gamma) * s2 < 1e-12);
      CHECK(std::abs(q.beta - c.beta) * s2 < 1e-12);
      CHECK(std::abs(q.delta - c.delta) < 1e-12);
      CHECK(std::abs(q.one_minus_delta - c.one_minus_delta) < 1e-12);
      CHECK(q.one_minus_delta == doctest::Approx(1.0 - q.delta).epsilon(1e-9));
      CHECK(q.delta > 0.0);
      CHECK(q.delta < 1.0);
      CHECK(q.kappa - q.gamma * q.gamma >= 0.0);
      CHECK(q.beta * q.beta <= q.kappa * (q.kappa - q.gamma * q.gamma));
    }
  }
}

TEST_CASE("Gaussian overlap point values") {
  const auto two = gaussian_overlap_integrals(1.0, 2.0);
  CHECK(two.kappa == 0.25);
  CHECK(std::abs(two.beta) < 1e-17);
  CHECK(two.gamma == doctest::Approx(-0.303265329856316712).epsilon(1e-15));
  CHECK(two.delta == doctest::Approx(0.606530659712633424).epsilon(1e-15));

  const auto one = gaussian_overlap_integrals(1.0, 1.0);
  CHECK(one.beta == doctest::Approx(0.165468169234611638).epsilon(1e-15));

  const auto tiny = gaussian_overlap_integrals(1.0, 1e-6);
  CHECK(tiny.beta == doctest::Approx(0.25).epsilon(1e-10));
  CHECK(std::abs(tiny.gamma) < 1e-6);

  const auto psf = PointSpreadFunction::gaussian(2.0);
  CHECK(overlap_integrals(psf, SourceGeometry(0.0, 4.0)).beta * 16.0 == doctest::Approx(0.0));
}

TEST_CASE("1 - delta keeps relative precision for nearly coincident sources") {
  const auto psf = PointSpreadFunction::gaussian(1.0);
  for (double t : {1e-4, 1e-3, 1e-2}) {
    const auto q = overlap_integrals(psf, SourceGeometry(0.0, t));
    // 1 - exp(-t^2 / 8) to two terms; the dropped term is below 1e-12 relative.
    const double series = t * t / 8.0 - t * t * t * t / 128.0;
    CHECK(q.one_minus_delta == doctest::Approx(series).epsilon(1e-9));
  }
}

TEST_CASE("delta at separation 2 sigma against an independent trapezoid oracle") {
  const double oracle = trapezoid(
      [](double x) { return testing::gaussian_psf(1.0, x) * testing::gaussian_psf(1.0, x - 2.0); },
      -20.0, 22.0, 42000);
  CHECK(oracle == doctest::Approx(std::exp(-0.5)).epsilon(1e-13));
  const auto q = overlap_integrals(PointSpreadFunction::gaussian(1.0), SourceGeometry(0.0, 2.0));
  CHECK(std::abs(q.delta - oracle) < 1e-13);
  const double beta_oracle = trapezoid(
      [](double x) {
        return testing::gaussian_psf_derivative(1.0, x) *
               testing::gaussian_psf_derivative(1.0, x - 1.0);
      },
      -20.0, 21.0, 41000);
  const auto q1 = overlap_integrals(PointSpreadFunction::gaussian(1.0), SourceGeometry(0.0, 1.0));
  CHECK(std::abs(q1.beta - beta_oracle) < 1e-13);
}

TEST_CASE("beta changes sign once, at 2 sigma") {
  const auto psf = PointSpreadFunction::gaussian(1.0);
  int changes = 0;
  int last_sign = 0;
  for (int i = 1; i <= 200; ++i) {
    const double b = overlap_integrals(psf, SourceGeometry(0.0, 0.05 * i)).beta;
    if (std::abs(b) < 1e-12) continue;
    const int sign = b > 0 ? 1 : -1;
    if (last_sign != 0 && sign != last_sign) ++changes;
    last_sign = sign;
  }
  CHECK(changes == 1);
  CHECK(overlap_integrals(psf, SourceGeometry(0.0, 1.99)).beta > 0.0);
  CHECK(overlap_integrals(psf, SourceGeometry(0.0, 2.01)).beta < 0.0);
}

TEST_CASE("overlaps are invariant under translation and kappa ignores separation") {
  const auto psf = PointSpreadFunction::gaussian(1.0);
  for (double t : {0.3, 1.0, 4.0}) {
    const auto a = overlap_integrals(psf, SourceGeometry(0.0, t));
    for (double c : {1.0, 5.0}) {
      const auto b = overlap_integrals(psf, SourceGeometry(c, t));
      CHECK(a.kappa == b.kappa);
      CHECK(a.gamma == b.gamma);
      CHECK(a.beta == b.beta);
      CHECK(a.delta == b.delta);
    }
    CHECK(a.kappa == doctest::Approx(0.25).epsilon(1e-13));
  }
  const auto far = overlap_integrals(psf, SourceGeometry(0.0, 40.0));
  CHECK(std::abs(far.gamma) < 1e-20);
  CHECK(std::abs(far.beta) < 1e-20);
}

TEST_CASE("normalization check") {
  QuadratureSpec quad;
  CHECK(check_normalization(PointSpreadFunction::gaussian(1.0), quad) < 1e-12);
  CHECK(check_normalization(PointSpreadFunction::gaussian(1.0).scaled(2.0), quad) ==
        doctest::Approx(3.0).epsilon(1e-12));
  quad.truncation_radius = 8.0;
  CHECK(check_normalization(PointSpreadFunction::gaussian(3.0), quad) < 1e-12);
  CHECK_THROWS_AS(overlap_integrals(PointSpreadFunction::gaussian(1.0).scaled(2.0),
                                    SourceGeometry(0.0, 1.0)),
                  NormalizationError);
}

TEST_CASE("preconditions") {
  CHECK_THROWS_AS(SourceGeometry(0.0, 0.0), DomainError);
  CHECK_THROWS_AS(SourceGeometry(0.0, -1.0), DomainError);
  const SourceGeometry g(1.0, 0.5);
  CHECK(g.x2() - g.x1() == 0.5);
  QuadratureSpec bad;
  bad.truncation_radius = 6.0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = {};
  bad.abs_tolerance = 0.0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("sampled PSF reproduces the Gaussian overlaps") {
  std::vector<double> x;
  std::vector<double> y;
  for (int i = -2000; i <= 2000; ++i) {
    x.push_back(i * 0.01);
    y.push_back(testing::gaussian_psf(1.0, i * 0.01));
  }
  const auto psf = PointSpreadFunction::from_samples(x, y, 1.0);
  CHECK(psf.kind() == PsfKind::UserDefined);
  QuadratureSpec quad;
  quad.abs_tolerance = 1e-9;
  const auto q = overlap_integrals(psf, SourceGeometry(0.0, 1.0), quad);
  const auto c = gaussian_overlap_integrals(1.0, 1.0);
  CHECK(std::abs(q.kappa - c.kappa) < 1e-8);
  CHECK(std::abs(q.beta - c.beta) < 1e-8);
  CHECK(std::abs(q.gamma - c.gamma) < 1e-8);
  CHECK(std::abs(q.delta - c.delta) < 1e-8);
  CHECK(psf.amplitude(25.0) == 0.0);

  CHECK_THROWS_AS(PointSpreadFunction::from_samples({0, 1, 2, 4, 5}, {0, 1, 1, 1, 0}, 1.0),
                  DomainError);
  CHECK_THROWS_AS(PointSpreadFunction::from_samples({0, 1, 2}, {0, 1, 0}, 1.0), DomainError);
}

TEST_CASE("PSF file format") {
  const auto dir = std::filesystem::temp_directory_path() / "irtr_psf_test";
  std::filesystem::create_directories(dir);
  const auto good = dir / "good.txt";
  {
    std::ofstream out(good);
    out << "# sampled Gaussian, sigma = 1\n\n";
    out.precision(17);
    for (int i = -1600; i <= 1600; ++i)
      out << i * 0.01 << "  " << testing::gaussian_psf(1.0, i * 0.01) << "\n";
  }
  const auto psf = PointSpreadFunction::load(good, 1.0);
  CHECK(psf.amplitude(0.0) == doctest::Approx(testing::gaussian_psf(1.0, 0.0)).epsilon(1e-12));
  CHECK(psf.amplitude(0.005) ==
        doctest::Approx(testing::gaussian_psf(1.0, 0.005)).epsilon(1e-9));

  const auto bad = dir / "bad.txt";
  {
    std::ofstream out(bad);
    out << "0 1\n1 2\n1 3\n";
  }
  try {
    PointSpreadFunction::load(bad, 1.0);
    FAIL("expected a ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find(":3:") != std::string::npos);
  }
  CHECK_THROWS_AS(PointSpreadFunction::load(dir / "missing.txt", 1.0), ConfigError);
}
