#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "irtr/measurements.hpp"
#include "irtr/psf.hpp"
#include "irtr/tradeoff.hpp"
#include <nlohmann/json.hpp>

namespace irtr {

inline constexpr const char* kSoftwareVersion = "0.1.0";

enum class FigureId { Fig1, Fig2, Fig3, Fig4, Fig5, Custom };
enum class MeasurementKind { Direct, Spade, Random };

std::string to_string(FigureId id);
std::string to_string(MeasurementKind kind);
MeasurementKind parse_measurement_kind(const std::string& name);

/// Every length in a config is in units of sigma.
struct ExperimentConfig {
  FigureId figure = FigureId::Fig1;
  double sigma = 1.0;
  std::vector<double> theta2_grid;
  std::vector<double> theta1_grid;
  int n_random = 10000;
  std::uint64_t seed = 20211;
  /// std::nullopt selects the adaptive SPADE cutoff.
  std::optional<int> mode_cutoff;
  std::filesystem::path output_dir = "irtr-out";
  QuadratureSpec quad;
  int frontier_samples = 512;
  /// Custom sweeps only.
  std::vector<MeasurementKind> measurements;
  /// Pixel width for direct imaging; 0 selects the continuum model.
  double pixel_width = 0.0;
  /// Optional user PSF for direct imaging and random measurements.
  std::optional<std::filesystem::path> psf_file;
  /// 0 means the hardware concurrency; IRTR_LAB_THREADS caps either.
  unsigned threads = 0;

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

/// Defaults per figure: grids, fixed separations and sample counts.
ExperimentConfig default_config(FigureId figure);

/// Inclusive grid "START:STOP:STEP"; values are START + i STEP.
std::vector<double> parse_grid(const std::string& spec);

/// Worker count: the request (0 means hardware concurrency), capped by
/// IRTR_LAB_THREADS when that is a positive integer.
unsigned worker_count(unsigned requested);

struct Fig1Row {
  double theta2 = 0.0;
  double c_tilde_closed = 0.0;
  double c_tilde_quadrature = 0.0;
};

struct RegretRow {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double c_tilde = 0.0;
  RegretReport report;
  double irtr_residual = 0.0;
};

struct Fig3Panel {
  RegretRow direct;
  bool no_constraint = false;
  std::vector<TradeoffPoint> frontier;
};

struct RandomRow {
  std::uint64_t sample_index = 0;
  RegretRow row;
};

/// Coefficients below this are treated as "no tradeoff constraint".
inline constexpr double kNoConstraintThreshold = 1e-10;
/// Emitted regret pairs must have an IRTR residual at least this large.
inline constexpr double kResidualFloor = -1e-9;
/// Residual below which a random measurement counts as nearly saturating.
inline constexpr double kNearSaturation = 0.1;

std::vector<Fig1Row> compute_fig1(const ExperimentConfig& config);
std::vector<RegretRow> compute_fig2(const ExperimentConfig& config);
std::vector<Fig3Panel> compute_fig3(const ExperimentConfig& config);
std::vector<RegretRow> compute_fig4(const ExperimentConfig& config);
std::vector<RandomRow> compute_fig5(const ExperimentConfig& config);

/// Regret row for one measurement model at (theta1, theta2), in units of sigma.
RegretRow direct_imaging_row(const ExperimentConfig& config, double theta1, double theta2);
RegretRow spade_row(const ExperimentConfig& config, double theta1, double theta2);

struct OutputFile {
  std::string name;
  std::string sha256;
  std::uintmax_t bytes = 0;
};

struct RunResult {
  std::vector<OutputFile> files;
  nlohmann::json extras = nlohmann::json::object();
  std::filesystem::path manifest;
};

/// Computes the configured dataset, writes its CSV files and one JSON
/// manifest into config.output_dir.
RunResult run_experiment(const ExperimentConfig& config);

RunResult run_fig1(const ExperimentConfig& config);
RunResult run_fig2(const ExperimentConfig& config);
RunResult run_fig3(const ExperimentConfig& config);
RunResult run_fig4(const ExperimentConfig& config);
RunResult run_fig5(const ExperimentConfig& config);
RunResult run_custom(const ExperimentConfig& config);

std::string sha256_file(const std::filesystem::path& path);

}  // namespace irtr
