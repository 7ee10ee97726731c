// irtr-lab: regenerates the datasets for the two-source tradeoff study.
//
//   irtr-lab fig1|fig2|fig3|fig4|fig5|custom [--config PATH] [--seed N]
//            [--sigma X] [--out DIR] [--n-random N] [--grid START:STOP:STEP]
//
// Exit codes: 0 success, 2 configuration error, 3 numerical error.

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "irtr/experiments.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Options {
  std::optional<double> sigma;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<unsigned> threads;
  std::optional<double> truncation_radius;
  std::optional<int> nodes_per_panel;
  std::optional<int> panel_count;
  std::optional<double> abs_tolerance;
  std::optional<int> frontier_samples;
  std::optional<std::string> psf_file;
};

struct FigureOptions {
  std::optional<std::string> grid;
  std::optional<std::string> theta1_grid;
  std::optional<std::vector<double>> panels;
  std::optional<double> theta1;
  std::optional<double> theta2;
  std::optional<int> n_random;
  std::optional<std::string> mode_cutoff;
  std::optional<double> pixel_width;
  std::optional<std::vector<std::string>> measurements;
};

irtr::ExperimentConfig build_config(irtr::FigureId id, const Options& o, const FigureOptions& f) {
  using irtr::FigureId;
  irtr::ExperimentConfig c = irtr::default_config(id);
  if (o.sigma) c.sigma = *o.sigma;
  if (o.seed) c.seed = *o.seed;
  if (o.out) c.output_dir = *o.out;
  if (o.threads) c.threads = *o.threads;
  if (o.truncation_radius) c.quad.truncation_radius = *o.truncation_radius;
  if (o.nodes_per_panel) c.quad.nodes_per_panel = *o.nodes_per_panel;
  if (o.panel_count) c.quad.panel_count = *o.panel_count;
  if (o.abs_tolerance) c.quad.abs_tolerance = *o.abs_tolerance;
  if (o.frontier_samples) c.frontier_samples = *o.frontier_samples;
  if (o.psf_file) c.psf_file = *o.psf_file;

  // --grid sweeps the figure's free axis: theta1 for fig4, theta2 elsewhere.
  if (f.grid) {
    if (id == FigureId::Fig4)
      c.theta1_grid = irtr::parse_grid(*f.grid);
    else
      c.theta2_grid = irtr::parse_grid(*f.grid);
  }
  if (f.theta1_grid) c.theta1_grid = irtr::parse_grid(*f.theta1_grid);
  if (f.panels) c.theta2_grid = *f.panels;
  if (f.theta1) c.theta1_grid = {*f.theta1};
  if (f.theta2) c.theta2_grid = {*f.theta2};
  if (f.n_random) c.n_random = *f.n_random;
  if (f.pixel_width) c.pixel_width = *f.pixel_width;
  if (f.mode_cutoff) {
    if (*f.mode_cutoff == "adaptive") {
      c.mode_cutoff.reset();
    } else {
      try {
        c.mode_cutoff = std::stoi(*f.mode_cutoff);
      } catch (const std::exception&) {
        throw irtr::ConfigError("mode-cutoff: expected an integer or 'adaptive'");
      }
    }
  }
  if (f.measurements) {
    c.measurements.clear();
    for (const auto& m : *f.measurements) c.measurements.push_back(irtr::parse_measurement_kind(m));
  }
  c.validate();
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fisher-information regret tradeoffs for locating two incoherent point sources",
               "irtr-lab"};
  app.set_version_flag("--version", irtr::kSoftwareVersion);
  app.require_subcommand(1);
  app.fallthrough();
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.set_config("--config", "", "key=value file; [figN] sections configure one subcommand");

  Options opts;
  app.add_option("--sigma", opts.sigma, "PSF characteristic length (all grids are in units of it)");
  app.add_option("--seed", opts.seed, "64-bit seed for random measurements");
  app.add_option("--out", opts.out, "Output directory");
  app.add_option("--threads", opts.threads, "Worker threads (default: all; IRTR_LAB_THREADS caps it)");
  app.add_option("--truncation-radius", opts.truncation_radius, "Quadrature radius in sigma");
  app.add_option("--nodes-per-panel", opts.nodes_per_panel, "Gauss-Legendre nodes per panel");
  app.add_option("--panel-count", opts.panel_count, "Initial panels per sigma");
  app.add_option("--abs-tolerance", opts.abs_tolerance, "Quadrature refinement tolerance");
  app.add_option("--frontier-samples", opts.frontier_samples, "Points per tradeoff frontier");
  app.add_option("--psf-file", opts.psf_file, "Two-column PSF samples (x, psi) instead of Gaussian");

  const std::map<std::string, std::pair<irtr::FigureId, std::string>> figures{
      {"fig1", {irtr::FigureId::Fig1, "Incompatibility coefficient versus separation"}},
      {"fig2", {irtr::FigureId::Fig2, "Direct-imaging regrets versus separation"}},
      {"fig3", {irtr::FigureId::Fig3, "Direct-imaging regrets against the tradeoff frontier"}},
      {"fig4", {irtr::FigureId::Fig4, "SPADE regrets versus misalignment"}},
      {"fig5", {irtr::FigureId::Fig5, "Haar-random projective measurements"}},
      {"custom", {irtr::FigureId::Custom, "Sweep over (theta1, theta2) and measurements"}},
  };
  std::map<std::string, FigureOptions> fig_opts;
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, entry] : figures) {
    auto* sub = app.add_subcommand(name, entry.second);
    auto& f = fig_opts[name];
    subs[name] = sub;
    sub->add_option("--grid", f.grid, "START:STOP:STEP in units of sigma");
    if (name == "fig3") sub->add_option("--panels", f.panels, "Panel separations in sigma");
    if (name == "fig4" || name == "fig5")
      sub->add_option("--theta2", f.theta2, "Fixed separation in sigma");
    if (name == "fig5") sub->add_option("--theta1", f.theta1, "Fixed centroid in sigma");
    if (name == "fig5" || name == "custom")
      sub->add_option("--n-random", f.n_random, "Number of Haar-random measurements");
    if (name == "fig4" || name == "custom")
      sub->add_option("--mode-cutoff", f.mode_cutoff, "Largest HG mode, or 'adaptive'");
    if (name == "fig2" || name == "fig3" || name == "custom")
      sub->add_option("--pixel-width", f.pixel_width, "Pixel width in sigma (0: continuum)");
    if (name == "custom") {
      sub->add_option("--theta1-grid", f.theta1_grid, "Centroid grid START:STOP:STEP");
      sub->add_option("--measurements", f.measurements, "direct, spade, random")->delimiter(',');
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  for (const auto& [name, sub] : subs) {
    if (!sub->parsed()) continue;
    try {
      const auto config = build_config(figures.at(name).first, opts, fig_opts[name]);
      const auto result = irtr::run_experiment(config);
      for (const auto& f : result.files)
        std::cout << (config.output_dir / f.name).string() << "  " << f.sha256 << '\n';
      std::cout << result.manifest.string() << '\n';
      return 0;
    } catch (const irtr::ConfigError& e) {
      std::cerr << "irtr-lab: configuration error: " << e.what() << '\n';
      return kExitConfig;
    } catch (const irtr::DomainError& e) {
      std::cerr << "irtr-lab: configuration error: " << e.what() << '\n';
      return kExitConfig;
    } catch (const irtr::NumericalError& e) {
      std::cerr << "irtr-lab: numerical error: " << e.what() << '\n';
      return kExitNumerical;
    } catch (const std::exception& e) {
      std::cerr << "irtr-lab: " << e.what() << '\n';
      return 1;
    }
  }
  return kExitConfig;
}
