// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "irtr/errors.hpp"
#include "irtr/experiments.hpp"
#include "irtr/measurements.hpp"
#include "irtr/psf.hpp"
#include "irtr/state_model.hpp"
#include "irtr/tradeoff.hpp"
#include "oracles.hpp"

using namespace irtr;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double min_eigenvalue(const Matrix2& m) {
  return Eigen::SelfAdjointEigenSolver<Matrix2>(m, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const auto kGaussian = PointSpreadFunction::gaussian(1.0);
const QuadratureSpec kQuad{};

// Regret pairs gathered by the quantum-bound check, replayed by the IRTR check.
struct Sample {
  double delta1;
  double delta2;
  double c_tilde;
};
std::vector<Sample> g_samples;

Outcome gaussian_cross_validation() {
  double worst = 0.0;
  int n = 0;
  for (int i = 2; i <= 160; ++i, ++n) {
    const double t = 0.05 * i;
    const double closed = gaussian_incompatibility(1.0, t);
    const double quad = incompatibility(overlap_integrals(kGaussian, SourceGeometry(0.0, t), kQuad)).c_tilde;
    worst = std::max(worst, std::abs(closed - quad));
  }
  return {worst <= 1e-8, "max |closed - quadrature| = " + num(worst) + " over " + std::to_string(n) + " separations"};
}

Outcome point_values() {
  const double at_two = incompatibility(overlap_integrals(kGaussian, SourceGeometry(0.0, 2.0), kQuad)).c_tilde;
  const double small = incompatibility(overlap_integrals(kGaussian, SourceGeometry(0.0, 0.01), kQuad)).c_tilde;
  RngStream rng(12345);
  double worst_c = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double t = 0.05 + 7.95 * rng.uniform();
    worst_c = std::max(worst_c, incompatibility(overlap_integrals(kGaussian, SourceGeometry(0.0, t), kQuad)).c);
  }
  return {at_two <= 1e-10 && small >= 0.9999 && worst_c <= 1e-12,
          "c~(2)=" + num(at_two) + " c~(0.01)=" + num(small) + " max c=" + num(worst_c)};
}

Outcome commutator_identity() {
  double worst = 0.0;
  for (double t : {0.1, 0.5, 1.0, 2.0, 4.0}) {
    const auto o = overlap_integrals(kGaussian, SourceGeometry(0.0, t), kQuad);
    worst = std::max(worst, std::abs(commutator_quantity(build_state_model(o)) - 4.0 * std::abs(o.beta)));
  }
  return {worst <= 1e-9, "max deviation " + num(worst)};
}

Outcome sld_equation() {
  double worst = 0.0;
  for (double t : {0.5, 1.0, 2.0, 4.0})
    worst = std::max(worst, verify_sld(kGaussian, SourceGeometry(0.0, t), kQuad, 1e-5));
  return {worst <= 1e-6, "max residual " + num(worst)};
}

Outcome spade_optimality() {
  const Matrix2 f = fim(spade_model(1.0, SourceGeometry(0.0, 0.1)));
  const auto r = regret_report(f, qfim(gaussian_overlap_integrals(1.0, 0.1)).matrix);
  const double gap = std::abs(f(1, 1) - 0.25);
  return {gap <= 1e-8 && r.delta2 <= 1e-6, "|F22 - kappa|=" + num(gap) + " delta2=" + num(r.delta2)};
}

Outcome spade_far_field() {
  const Matrix2 f = fim(spade_model(1.0, SourceGeometry(5.0, 0.01)));
  const double rel = std::abs(f(0, 0) - 1.0);
  return {rel <= 0.01, "F11=" + num(f(0, 0)) + " relative gap " + num(rel)};
}

Outcome quantum_bound() {
  g_samples.clear();
  double worst = 1.0;
  ExperimentConfig cfg = default_config(FigureId::Custom);
  for (double t1 : {0.0, 0.5, 1.0, 2.0, 3.0})
    for (double t2 : {0.1, 0.5, 1.0, 2.0})
      for (const RegretRow& r : {direct_imaging_row(cfg, t1, t2), spade_row(cfg, t1, t2)}) {
        worst = std::min(worst, min_eigenvalue(r.report.regret));
        g_samples.push_back({r.report.delta1, r.report.delta2, r.c_tilde});
      }
  const auto o = overlap_integrals(kGaussian, SourceGeometry(0.0, 0.1), kQuad);
  const auto state = build_state_model(o);
  const Matrix2 q = qfim(o).matrix;
  const double ct = std::min(1.0, incompatibility(o).c_tilde);
  for (int i = 0; i < 10000; ++i) {
    RngStream rng(20211, i);
    const auto r = regret_report(fim(projective_model(state, haar_random_measurement(rng))), q);
    worst = std::min(worst, min_eigenvalue(r.regret));
    g_samples.push_back({r.delta1, r.delta2, ct});
  }
  return {worst >= -1e-9, "min regret eigenvalue " + num(worst) + " over " + std::to_string(g_samples.size()) + " measurements"};
}

Outcome irtr_property() {
  if (g_samples.empty()) return {false, "no samples from the quantum-bound check"};
  double worst = 1.0;
  for (const auto& s : g_samples) worst = std::min(worst, irtr_residual({s.delta1, s.delta2}, s.c_tilde));
  return {worst >= -1e-9, "min residual " + num(worst) + " over " + std::to_string(g_samples.size()) + " pairs"};
}

Outcome rayleigh_curse() {
  const ExperimentConfig cfg = default_config(FigureId::Fig2);
  const auto near = direct_imaging_row(cfg, 0.0, 0.1);
  const auto far = direct_imaging_row(cfg, 0.0, 8.0);
  const bool ok = near.report.delta2 >= 0.9 && far.report.delta1 <= 0.1 && far.report.delta2 <= 0.1;
  return {ok, "delta2(0.1)=" + num(near.report.delta2) + " delta(8)=(" + num(far.report.delta1) + ", " +
                  num(far.report.delta2) + ")"};
}

Outcome spade_monotonicity() {
  ExperimentConfig cfg = default_config(FigureId::Fig4);
  cfg.theta1_grid = parse_grid("0:3:0.05");
  const auto rows = compute_fig4(cfg);
  int breaks = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    breaks += rows[i].report.delta1 > rows[i - 1].report.delta1;
    breaks += rows[i].report.delta2 < rows[i - 1].report.delta2;
  }
  return {breaks == 0, std::to_string(rows.size()) + " grid points, " + std::to_string(breaks) + " monotonicity breaks"};
}

Outcome frontier_correctness() {
  double worst_residual = 0.0;
  double worst_root = 0.0;
  for (double c : {0.2, 0.5, 0.9, 1.0})
    for (const auto& p : irtr_frontier(c, 257)) {
      worst_residual = std::max(worst_residual, std::abs(irtr_residual(p, c)));
      const double root = testing::bisect([&](double d2) { return irtr_residual({p.delta1, d2}, c); }, 0.0, 1.0);
      worst_root = std::max(worst_root, std::abs(root - p.delta2));
    }
  return {worst_residual <= 1e-12 && worst_root <= 1e-10,
          "max |residual|=" + num(worst_residual) + " max |bisection - closed|=" + num(worst_root)};
}

Outcome determinism() {
  const fs::path base = fs::temp_directory_path() / "irtr_acceptance_fig5";
  fs::remove_all(base);
  auto run = [&](std::uint64_t seed, const std::string& tag) {
    ExperimentConfig cfg = default_config(FigureId::Fig5);
    cfg.seed = seed;
    cfg.output_dir = base / tag;
    run_experiment(cfg);
    return std::pair{slurp(cfg.output_dir / "fig5_random.csv"), slurp(cfg.output_dir / "fig5_frontier.csv")};
  };
  const auto a = run(7, "a");
  const auto b = run(7, "b");
  const auto c = run(8, "c");
  fs::remove_all(base);
  const bool same = a.first == b.first && a.second == b.second;
  const bool differ = a.first != c.first;
  const bool frontier = a.second == c.second;
  return {same && differ && frontier && !a.first.empty(),
          std::string("same seed identical: ") + (same ? "yes" : "no") + ", other seed differs: " +
              (differ ? "yes" : "no") + ", frontier identical: " + (frontier ? "yes" : "no")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"gaussian cross-validation", gaussian_cross_validation},
      {"incompatibility point values", point_values},
      {"commutator identity", commutator_identity},
      {"SLD defining equation", sld_equation},
      {"SPADE separation optimality", spade_optimality},
      {"SPADE far field", spade_far_field},
      {"quantum Cramer-Rao bound", quantum_bound},
      {"regret tradeoff property", irtr_property},
      {"Rayleigh's curse", rayleigh_curse},
      {"SPADE regret monotonicity", spade_monotonicity},
      {"frontier correctness", frontier_correctness},
      {"fig5 determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome r;
    try {
      r = criteria[i].second();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    failures += !r.pass;
    std::printf("[%s] %2zu %s: %s\n", r.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                r.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
