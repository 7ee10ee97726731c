#include "irtr/experiments.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>

#include "irtr/state_model.hpp"

namespace irtr {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Runs fn(i) for i in [0, n) on up to `workers` threads. Results are stored
/// by index, so output order never depends on scheduling.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t n, unsigned workers, Fn fn) {
  std::vector<T> out(n);
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = n;
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

class CsvWriter {
 public:
  explicit CsvWriter(std::filesystem::path path) : path_(std::move(path)) {}

  void meta(const std::string& key, const std::string& value) {
    body_ << "# " << key << '=' << value << '\n';
  }
  void header(std::initializer_list<const char*> columns) {
    bool first = true;
    for (const char* c : columns) {
      body_ << (first ? "" : ",") << c;
      first = false;
    }
    body_ << '\n';
  }
  template <class... Ts>
  void row(const Ts&... values) {
    bool first = true;
    ((body_ << (first ? "" : ",") << cell(values), first = false), ...);
    body_ << '\n';
  }

  OutputFile write() const {
    std::ofstream out(path_, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path_.string());
    const std::string text = body_.str();
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.close();
    if (!out) throw Error("failed writing " + path_.string());
    return {path_.filename().string(), sha256_file(path_), text.size()};
  }

 private:
  static std::string cell(double v) { return fmt17(v); }
  static std::string cell(const std::string& s) { return s; }
  static std::string cell(const char* s) { return s; }
  static std::string cell(bool b) { return b ? "true" : "false"; }
  template <class I>
    requires std::is_integral_v<I>
  static std::string cell(I v) {
    return std::to_string(v);
  }

  std::filesystem::path path_;
  std::ostringstream body_;
};

void require_grid(const std::vector<double>& g, const char* field, bool positive) {
  if (g.empty()) throw ConfigError(std::string(field) + ": grid must not be empty");
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!std::isfinite(g[i])) throw ConfigError(std::string(field) + ": non-finite grid value");
    if (positive && !(g[i] > 0.0))
      throw ConfigError(std::string(field) + ": values must be positive (entry " +
                        std::to_string(i) + ")");
    if (i > 0 && !(g[i] > g[i - 1]))
      throw ConfigError(std::string(field) + ": grid must be strictly increasing (entry " +
                        std::to_string(i) + ")");
  }
}

void check_residual(const RegretRow& r, const char* what) {
  if (r.irtr_residual < kResidualFloor)
    throw BoundViolationError(std::string(what) + " violates the regret tradeoff at theta2/sigma=" +
                              fmt17(r.theta2) + " (residual " + fmt17(r.irtr_residual) + ")");
}

double clamp_coefficient(double c) { return std::clamp(c, 0.0, 1.0); }

PointSpreadFunction config_psf(const ExperimentConfig& c) {
  if (c.psf_file) return PointSpreadFunction::load(*c.psf_file, c.sigma);
  return PointSpreadFunction::gaussian(c.sigma);
}

RegretRow make_row(double theta1, double theta2, const OverlapIntegrals& o, const Matrix2& f) {
  RegretRow r;
  r.theta1 = theta1;
  r.theta2 = theta2;
  r.c_tilde = clamp_coefficient(incompatibility(o).c_tilde);
  r.report = regret_report(f, qfim(o).matrix);
  r.irtr_residual = irtr_residual({r.report.delta1, r.report.delta2}, r.c_tilde);
  return r;
}

RegretRow direct_row_with(const ExperimentConfig& c, const PointSpreadFunction& psf, double theta1,
                          double theta2) {
  const SourceGeometry g(theta1 * c.sigma, theta2 * c.sigma);
  const OverlapIntegrals o = overlap_integrals(psf, g, c.quad);
  const ProbabilityModel m = c.pixel_width > 0.0
                                 ? pixelated_direct_imaging_model(psf, g, c.pixel_width * c.sigma,
                                                                  c.quad)
                                 : direct_imaging_model(psf, g, c.quad);
  return make_row(theta1, theta2, o, fim(m));
}

std::vector<OutputFile> write_frontier(const std::filesystem::path& path, double c_tilde,
                                       int samples, double theta2) {
  CsvWriter csv(path);
  const bool none = c_tilde <= kNoConstraintThreshold;
  csv.meta("theta2_over_sigma", fmt17(theta2));
  csv.meta("c_tilde", fmt17(c_tilde));
  csv.meta("no_constraint", none ? "true" : "false");
  csv.header({"delta1", "delta2"});
  if (!none)
    for (const auto& p : irtr_frontier(c_tilde, samples)) csv.row(p.delta1, p.delta2);
  return {csv.write()};
}

void common_meta(CsvWriter& csv, const ExperimentConfig& c) {
  csv.meta("software", std::string("irtr-lab ") + kSoftwareVersion);
  csv.meta("figure", to_string(c.figure));
  csv.meta("sigma", fmt17(c.sigma));
}

nlohmann::json config_json(const ExperimentConfig& c) {
  nlohmann::json j;
  j["figure"] = to_string(c.figure);
  j["sigma"] = c.sigma;
  j["theta1_grid"] = c.theta1_grid;
  j["theta2_grid"] = c.theta2_grid;
  j["n_random"] = c.n_random;
  j["seed"] = c.seed;
  j["mode_cutoff"] = c.mode_cutoff ? nlohmann::json(*c.mode_cutoff) : nlohmann::json("adaptive");
  j["output_dir"] = c.output_dir.string();
  j["frontier_samples"] = c.frontier_samples;
  j["pixel_width"] = c.pixel_width;
  j["psf_file"] = c.psf_file ? nlohmann::json(c.psf_file->string()) : nlohmann::json(nullptr);
  std::vector<std::string> kinds;
  for (auto k : c.measurements) kinds.push_back(to_string(k));
  j["measurements"] = kinds;
  j["quadrature"] = {{"truncation_radius", c.quad.truncation_radius},
                     {"panel_count", c.quad.panel_count},
                     {"nodes_per_panel", c.quad.nodes_per_panel},
                     {"abs_tolerance", c.quad.abs_tolerance}};
  return j;
}

}  // namespace

std::string to_string(FigureId id) {
  switch (id) {
    case FigureId::Fig1: return "fig1";
    case FigureId::Fig2: return "fig2";
    case FigureId::Fig3: return "fig3";
    case FigureId::Fig4: return "fig4";
    case FigureId::Fig5: return "fig5";
    case FigureId::Custom: return "custom";
  }
  return "unknown";
}

std::string to_string(MeasurementKind kind) {
  switch (kind) {
    case MeasurementKind::Direct: return "direct";
    case MeasurementKind::Spade: return "spade";
    case MeasurementKind::Random: return "random";
  }
  return "unknown";
}

MeasurementKind parse_measurement_kind(const std::string& name) {
  if (name == "direct") return MeasurementKind::Direct;
  if (name == "spade") return MeasurementKind::Spade;
  if (name == "random") return MeasurementKind::Random;
  throw ConfigError("measurements: unknown measurement '" + name +
                    "' (expected direct, spade or random)");
}

void ExperimentConfig::validate() const {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ConfigError("sigma: must be positive");
  if (n_random < 1) throw ConfigError("n_random: must be at least 1");
  if (frontier_samples < 2) throw ConfigError("frontier_samples: must be at least 2");
  if (mode_cutoff && *mode_cutoff < 0) throw ConfigError("mode_cutoff: must be nonnegative");
  if (pixel_width < 0.0) throw ConfigError("pixel_width: must be nonnegative");
  try {
    quad.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("quadrature: ") + e.what());
  }
  switch (figure) {
    case FigureId::Fig1:
    case FigureId::Fig2:
    case FigureId::Fig3:
      require_grid(theta2_grid, "theta2_grid", true);
      break;
    case FigureId::Fig4:
      require_grid(theta1_grid, "theta1_grid", false);
      require_grid(theta2_grid, "theta2_grid", true);
      break;
    case FigureId::Fig5:
      require_grid(theta2_grid, "theta2_grid", true);
      require_grid(theta1_grid, "theta1_grid", false);
      break;
    case FigureId::Custom:
      require_grid(theta1_grid, "theta1_grid", false);
      require_grid(theta2_grid, "theta2_grid", true);
      if (measurements.empty()) throw ConfigError("measurements: at least one is required");
      if (psf_file && std::find(measurements.begin(), measurements.end(),
                                MeasurementKind::Spade) != measurements.end())
        throw ConfigError("measurements: spade requires the Gaussian PSF (drop psf_file)");
      break;
  }
}

ExperimentConfig default_config(FigureId figure) {
  ExperimentConfig c;
  c.figure = figure;
  switch (figure) {
    case FigureId::Fig1:
    case FigureId::Fig2:
      c.theta2_grid = parse_grid("0.05:8:0.05");
      c.theta1_grid = {0.0};
      break;
    case FigureId::Fig3:
      c.theta2_grid = {0.2, 0.5, 1.0, 2.0, 3.0, 4.0, 6.0, 8.0};
      c.theta1_grid = {0.0};
      break;
    case FigureId::Fig4:
      c.theta1_grid = parse_grid("0:5:0.05");
      c.theta2_grid = {0.1};
      break;
    case FigureId::Fig5:
      c.theta1_grid = {0.0};
      c.theta2_grid = {0.1};
      break;
    case FigureId::Custom:
      c.theta1_grid = {0.0};
      c.theta2_grid = {0.1, 1.0, 2.0};
      c.n_random = 100;
      c.measurements = {MeasurementKind::Direct, MeasurementKind::Spade, MeasurementKind::Random};
      break;
  }
  return c;
}

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream in(spec);
  for (std::string part; std::getline(in, part, ':');) parts.push_back(part);
  if (spec.empty() || parts.size() != 3 || spec.back() == ':')
    throw ConfigError("grid: expected START:STOP:STEP, got '" + spec + "'");
  double v[3];
  for (int i = 0; i < 3; ++i) {
    try {
      std::size_t used = 0;
      v[i] = std::stod(parts[i], &used);
      if (used != parts[i].size()) throw std::invalid_argument(parts[i]);
    } catch (const std::exception&) {
      throw ConfigError("grid: '" + parts[i] + "' is not a number in '" + spec + "'");
    }
  }
  const double lo = v[0], hi = v[1], step = v[2];
  if (!(step > 0.0)) throw ConfigError("grid: STEP must be positive in '" + spec + "'");
  if (!(hi >= lo)) throw ConfigError("grid: STOP must not be below START in '" + spec + "'");
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> g(count);
  for (std::size_t i = 0; i < count; ++i) g[i] = lo + static_cast<double>(i) * step;
  return g;
}

unsigned worker_count(unsigned requested) {
  unsigned n = requested > 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("IRTR_LAB_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) n = std::min(n, static_cast<unsigned>(cap));
  }
  return n;
}

RegretRow direct_imaging_row(const ExperimentConfig& c, double theta1, double theta2) {
  return direct_row_with(c, config_psf(c), theta1, theta2);
}

RegretRow spade_row(const ExperimentConfig& c, double theta1, double theta2) {
  const SourceGeometry g(theta1 * c.sigma, theta2 * c.sigma);
  const OverlapIntegrals o = overlap_integrals(PointSpreadFunction::gaussian(c.sigma), g, c.quad);
  return make_row(theta1, theta2, o, fim(spade_model(c.sigma, g, c.mode_cutoff)));
}

std::vector<Fig1Row> compute_fig1(const ExperimentConfig& c) {
  c.validate();
  const auto psf = PointSpreadFunction::gaussian(c.sigma);
  return parallel_map<Fig1Row>(c.theta2_grid.size(), worker_count(c.threads), [&](std::size_t i) {
    const double t2 = c.theta2_grid[i];
    const OverlapIntegrals o = overlap_integrals(psf, SourceGeometry(0.0, t2 * c.sigma), c.quad);
    return Fig1Row{t2, gaussian_incompatibility(c.sigma, t2 * c.sigma), incompatibility(o).c_tilde};
  });
}

std::vector<RegretRow> compute_fig2(const ExperimentConfig& c) {
  c.validate();
  const auto psf = config_psf(c);
  auto rows = parallel_map<RegretRow>(c.theta2_grid.size(), worker_count(c.threads),
                                      [&](std::size_t i) {
                                        return direct_row_with(c, psf, 0.0, c.theta2_grid[i]);
                                      });
  for (const auto& r : rows) check_residual(r, "direct imaging");
  return rows;
}

std::vector<Fig3Panel> compute_fig3(const ExperimentConfig& c) {
  c.validate();
  const auto psf = config_psf(c);
  return parallel_map<Fig3Panel>(c.theta2_grid.size(), worker_count(c.threads),
                                 [&](std::size_t i) {
                                   Fig3Panel p;
                                   p.direct = direct_row_with(c, psf, 0.0, c.theta2_grid[i]);
                                   check_residual(p.direct, "direct imaging");
                                   p.no_constraint = p.direct.c_tilde <= kNoConstraintThreshold;
                                   if (!p.no_constraint)
                                     p.frontier = irtr_frontier(p.direct.c_tilde, c.frontier_samples);
                                   return p;
                                 });
}

std::vector<RegretRow> compute_fig4(const ExperimentConfig& c) {
  c.validate();
  const double t2 = c.theta2_grid.front();
  auto rows = parallel_map<RegretRow>(c.theta1_grid.size(), worker_count(c.threads),
                                      [&](std::size_t i) { return spade_row(c, c.theta1_grid[i], t2); });
  for (const auto& r : rows) check_residual(r, "SPADE");
  return rows;
}

std::vector<RandomRow> compute_fig5(const ExperimentConfig& c) {
  c.validate();
  const double t1 = c.theta1_grid.front();
  const double t2 = c.theta2_grid.front();
  const auto psf = config_psf(c);
  const SourceGeometry g(t1 * c.sigma, t2 * c.sigma);
  const OverlapIntegrals o = overlap_integrals(psf, g, c.quad);
  const StateModel4 state = build_state_model(o);
  const Matrix2 q = qfim(o).matrix;
  const double ct = clamp_coefficient(incompatibility(o).c_tilde);
  auto rows = parallel_map<RandomRow>(
      static_cast<std::size_t>(c.n_random), worker_count(c.threads), [&](std::size_t i) {
        RngStream rng(c.seed, i);
        const auto meas = haar_random_measurement(rng);
        RandomRow out;
        out.sample_index = i;
        out.row.theta1 = t1;
        out.row.theta2 = t2;
        out.row.c_tilde = ct;
        out.row.report = regret_report(fim(projective_model(state, meas)), q);
        out.row.irtr_residual = irtr_residual({out.row.report.delta1, out.row.report.delta2}, ct);
        return out;
      });
  for (const auto& r : rows) check_residual(r.row, "random projective measurement");
  return rows;
}

RunResult run_fig1(const ExperimentConfig& c) {
  const auto rows = compute_fig1(c);
  CsvWriter csv(c.output_dir / "fig1_incompatibility.csv");
  common_meta(csv, c);
  csv.header({"theta2_over_sigma", "c_tilde_closed_form", "c_tilde_quadrature"});
  double worst = 0.0;
  for (const auto& r : rows) {
    csv.row(r.theta2, r.c_tilde_closed, r.c_tilde_quadrature);
    worst = std::max(worst, std::abs(r.c_tilde_closed - r.c_tilde_quadrature));
  }
  RunResult out;
  out.files.push_back(csv.write());
  out.extras["max_closed_vs_quadrature_difference"] = worst;
  return out;
}

RunResult run_fig2(const ExperimentConfig& c) {
  const auto rows = compute_fig2(c);
  CsvWriter csv(c.output_dir / "fig2_direct_imaging.csv");
  common_meta(csv, c);
  csv.meta("measurement", "direct");
  csv.header({"theta2_over_sigma", "delta1", "delta2"});
  for (const auto& r : rows) csv.row(r.theta2, r.report.delta1, r.report.delta2);
  RunResult out;
  out.files.push_back(csv.write());
  return out;
}

RunResult run_fig3(const ExperimentConfig& c) {
  const auto panels = compute_fig3(c);
  RunResult out;
  CsvWriter summary(c.output_dir / "fig3_panels.csv");
  common_meta(summary, c);
  summary.meta("measurement", "direct");
  summary.meta("frontier_samples", std::to_string(c.frontier_samples));
  summary.header({"panel", "theta2_over_sigma", "c_tilde", "delta1", "delta2", "irtr_residual",
                  "no_constraint"});
  for (std::size_t i = 0; i < panels.size(); ++i) {
    const auto& p = panels[i];
    summary.row(i + 1, p.direct.theta2, p.direct.c_tilde, p.direct.report.delta1,
                p.direct.report.delta2, p.direct.irtr_residual, p.no_constraint);
  }
  out.files.push_back(summary.write());
  for (std::size_t i = 0; i < panels.size(); ++i) {
    const auto name = "fig3_panel" + std::to_string(i + 1) + "_frontier.csv";
    for (auto& f : write_frontier(c.output_dir / name, panels[i].direct.c_tilde,
                                  c.frontier_samples, panels[i].direct.theta2))
      out.files.push_back(f);
  }
  return out;
}

RunResult run_fig4(const ExperimentConfig& c) {
  const auto rows = compute_fig4(c);
  CsvWriter csv(c.output_dir / "fig4_spade.csv");
  common_meta(csv, c);
  csv.meta("measurement", "spade");
  csv.meta("theta2_over_sigma", fmt17(c.theta2_grid.front()));
  csv.meta("mode_cutoff", c.mode_cutoff ? std::to_string(*c.mode_cutoff) : "adaptive");
  csv.header({"theta1_over_sigma", "delta1", "delta2"});
  for (const auto& r : rows) csv.row(r.theta1, r.report.delta1, r.report.delta2);
  RunResult out;
  out.files.push_back(csv.write());
  const double ct = rows.front().c_tilde;
  for (auto& f : write_frontier(c.output_dir / "fig4_frontier.csv", ct, c.frontier_samples,
                                c.theta2_grid.front()))
    out.files.push_back(f);
  return out;
}

RunResult run_fig5(const ExperimentConfig& c) {
  const auto rows = compute_fig5(c);
  CsvWriter csv(c.output_dir / "fig5_random.csv");
  common_meta(csv, c);
  csv.meta("measurement", "random_projective");
  csv.meta("theta1_over_sigma", fmt17(c.theta1_grid.front()));
  csv.meta("theta2_over_sigma", fmt17(c.theta2_grid.front()));
  csv.meta("seed", std::to_string(c.seed));
  csv.meta("rng", "splitmix64 stream per sample index; normals row-major, Box-Muller");
  csv.header({"sample_index", "delta1", "delta2", "irtr_residual"});
  std::size_t near = 0;
  double min_residual = std::numeric_limits<double>::infinity();
  for (const auto& r : rows) {
    csv.row(r.sample_index, r.row.report.delta1, r.row.report.delta2, r.row.irtr_residual);
    if (r.row.irtr_residual < kNearSaturation) ++near;
    min_residual = std::min(min_residual, r.row.irtr_residual);
  }
  RunResult out;
  out.files.push_back(csv.write());
  for (auto& f : write_frontier(c.output_dir / "fig5_frontier.csv", rows.front().row.c_tilde,
                                c.frontier_samples, c.theta2_grid.front()))
    out.files.push_back(f);
  out.extras["near_saturation_threshold"] = kNearSaturation;
  out.extras["near_saturation_fraction"] =
      static_cast<double>(near) / static_cast<double>(rows.size());
  out.extras["min_irtr_residual"] = min_residual;
  return out;
}

RunResult run_custom(const ExperimentConfig& c) {
  c.validate();
  const auto psf = config_psf(c);
  struct Job {
    MeasurementKind kind;
    double theta1;
    double theta2;
    std::size_t combo;
    std::uint64_t sample;
  };
  std::vector<Job> jobs;
  std::size_t combo = 0;
  for (double t2 : c.theta2_grid)
    for (double t1 : c.theta1_grid) {
      for (auto kind : c.measurements) {
        const std::uint64_t n = kind == MeasurementKind::Random ? c.n_random : 1;
        for (std::uint64_t s = 0; s < n; ++s) jobs.push_back({kind, t1, t2, combo, s});
      }
      ++combo;
    }

  auto rows = parallel_map<RegretRow>(jobs.size(), worker_count(c.threads), [&](std::size_t i) {
    const Job& j = jobs[i];
    switch (j.kind) {
      case MeasurementKind::Direct: return direct_row_with(c, psf, j.theta1, j.theta2);
      case MeasurementKind::Spade: return spade_row(c, j.theta1, j.theta2);
      case MeasurementKind::Random: {
        const SourceGeometry g(j.theta1 * c.sigma, j.theta2 * c.sigma);
        const OverlapIntegrals o = overlap_integrals(psf, g, c.quad);
        RngStream rng(mix64(c.seed + j.combo), j.sample);
        const auto meas = haar_random_measurement(rng);
        return make_row(j.theta1, j.theta2, o, fim(projective_model(build_state_model(o), meas)));
      }
    }
    throw Error("unreachable measurement kind");
  });

  CsvWriter csv(c.output_dir / "custom_regrets.csv");
  common_meta(csv, c);
  csv.meta("seed", std::to_string(c.seed));
  csv.meta("psf", c.psf_file ? c.psf_file->string() : "gaussian");
  csv.header({"measurement", "sample_index", "theta1_over_sigma", "theta2_over_sigma", "c_tilde",
              "fim11", "fim12", "fim22", "qfim11", "qfim22", "delta1", "delta2", "irtr_residual"});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    check_residual(r, to_string(jobs[i].kind).c_str());
    csv.row(to_string(jobs[i].kind), jobs[i].sample, r.theta1, r.theta2, r.c_tilde,
            r.report.fim(0, 0), r.report.fim(0, 1), r.report.fim(1, 1), r.report.qfim(0, 0),
            r.report.qfim(1, 1), r.report.delta1, r.report.delta2, r.irtr_residual);
  }
  RunResult out;
  out.files.push_back(csv.write());
  return out;
}

RunResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  std::error_code ec;
  std::filesystem::create_directories(config.output_dir, ec);
  if (ec) throw Error("cannot create output directory " + config.output_dir.string());

  const auto start = std::chrono::steady_clock::now();
  RunResult result;
  switch (config.figure) {
    case FigureId::Fig1: result = run_fig1(config); break;
    case FigureId::Fig2: result = run_fig2(config); break;
    case FigureId::Fig3: result = run_fig3(config); break;
    case FigureId::Fig4: result = run_fig4(config); break;
    case FigureId::Fig5: result = run_fig5(config); break;
    case FigureId::Custom: result = run_custom(config); break;
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  nlohmann::json manifest;
  manifest["software"] = "irtr-lab";
  manifest["version"] = kSoftwareVersion;
  manifest["seed"] = config.seed;
  manifest["config"] = config_json(config);
  manifest["wall_time_seconds"] = seconds;
  manifest["threads"] = worker_count(config.threads);
  manifest["files"] = nlohmann::json::array();
  for (const auto& f : result.files)
    manifest["files"].push_back({{"name", f.name}, {"sha256", f.sha256}, {"bytes", f.bytes}});
  manifest["results"] = result.extras;

  result.manifest = config.output_dir / (to_string(config.figure) + "_manifest.json");
  std::ofstream out(result.manifest, std::ios::trunc);
  out << manifest.dump(2) << '\n';
  if (!out) throw Error("failed writing " + result.manifest.string());
  return result;
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
  char buf[1 << 15];
  while (in.read(buf, sizeof buf) || in.gcount() > 0)
    EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(in.gcount()));
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &len);
  static constexpr char hex[] = "0123456789abcdef";
  std::string s;
  for (unsigned int i = 0; i < len; ++i) {
    s += hex[digest[i] >> 4];
    s += hex[digest[i] & 0xf];
  }
  return s;
}

}  // namespace irtr
