#pragma once

// Scenario files drive the command-line tool. The format is line oriented:
// `[section]` headers followed by `key value...` lines, `#` comments, blank
// lines ignored. Matrices are written as `KEY rows cols e11 e12 ...` in
// row-major order. See README.md for the full key list.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "edgesync/analysis.h"
#include "edgesync/controller.h"
#include "edgesync/error.h"
#include "edgesync/graph.h"
#include "edgesync/metric.h"
#include "edgesync/models.h"
#include "edgesync/riccati.h"
#include "edgesync/simulator.h"
#include "edgesync/upsilon.h"

namespace edgesync {

enum class ModelKind { kLinear, kTanh, kLorenz };

struct ModelSpec {
  ModelKind kind = ModelKind::kLinear;
  Matrix a;  // linear / tanh
  Matrix b;  // linear / tanh, n x 1
  double gamma = 0.0;
  LorenzParameters lorenz;
};

enum class CertificateMode { kRiccati, kInline };

struct CertificateSpec {
  CertificateMode mode = CertificateMode::kRiccati;
  double rho = 1.0;
  double mu = 0.5;
  Matrix a;  // riccati: optional override of the design pair
  Matrix b;
  Matrix p;  // inline
};

/// Exactly one of the two is set.
struct BetaSpec {
  std::optional<double> absolute;
  std::optional<double> multiplier;
};

struct InitialSpec {
  std::vector<Vector> states;  // explicit, one per agent
  Vector base;                 // or base + seeded perturbation
  double radius = 0.0;
  std::uint64_t seed = 0;
  /// Integrate the uncoupled, unforced agent from `base` for this long before
  /// perturbing (lands the base point on an attractor).
  double settle = 0.0;
};

struct CheckSpec {
  std::size_t samples = 1000;
  double sample_radius = 10.0;
  std::uint64_t sample_seed = 1;
  double fd_step = kDefaultFdStep;
  double fit_skip = 0.1;  // fraction of the horizon skipped before fitting
  double monotone_tol = 1e-6;
};

struct Scenario {
  std::string name;
  WeightedGraph graph{2, {}};
  ModelSpec model;
  CertificateSpec certificate;
  std::optional<BetaSpec> controller;
  InitialSpec initial;
  SimulationOptions integration{20.0, 1e-2, 1e-1, 0};
  CheckSpec checks;
  std::string output_dir;  // empty: fall back to EDGESYNC_OUT_DIR, then "out"
};

/// Parses scenario text. Relative `file` paths in [graph] resolve against
/// `base_dir`. Throws ParseError with the offending line number.
Scenario ParseScenario(std::string_view text,
                       const std::filesystem::path& base_dir = {});
Scenario LoadScenario(const std::filesystem::path& path);

/// Everything derived from the graph alone.
struct GraphCheck {
  GraphMatrices matrices;
  SpectralReport spectrum;
  UpsilonResult upsilon;
  EndpointResiduals endpoints;
};

GraphCheck CheckGraph(const WeightedGraph& g);

/// Graph checks plus the closed-loop ingredients, computed before any
/// simulation.
struct PreparedRun {
  GraphCheck graph;
  AgentModel model;
  MetricCertificate certificate;
  std::optional<LinearDesign> design;
  double ari_margin = 0.0;
  KillingIntegrabilityResiduals killing;
  std::optional<BetaStar> beta_star;
  std::optional<ControllerConfig> controller;
  Vector x0;
};

/// Builds graph matrices, Υ, the certificate and feedback, β*, and x0.
/// Throws kDisconnectedGraph when a controller is requested on a
/// disconnected graph.
PreparedRun PrepareRun(const Scenario& s);

/// Key-value text written to graph_check.txt.
std::string FormatGraphCheck(const Scenario& s, const PreparedRun& run);

struct RunSummary {
  double beta = 0.0;
  double beta_star = 0.0;
  DecayFit fit;
  MonotoneCheck monotone;
  double initial_sync_error = 0.0;
  double final_sync_error = 0.0;
};

/// Key-value text written to report.txt.
std::string FormatRunReport(const Scenario& s, const PreparedRun& run,
                            const Trajectory& traj, const RunSummary& summary);

/// Simulates and analyses a prepared run with the given coupling gain.
RunSummary AnalyseRun(const Scenario& s, const PreparedRun& run,
                      const Trajectory& traj);

Trajectory SimulatePrepared(const Scenario& s, const PreparedRun& run);

/// `check`: writes graph_check.txt into `out_dir`.
void RunCheck(const Scenario& s, const std::filesystem::path& out_dir);

/// `run`: writes trajectory.csv, report.txt and graph_check.txt.
RunSummary RunScenario(const Scenario& s, const std::filesystem::path& out_dir);

struct SweepRow {
  double multiplier = 0.0;
  bool ok = false;
  std::string status;  // "ok" or the error name
  RunSummary summary;
};

/// One run per β-multiplier of β*; failed runs are recorded and skipped.
/// Writes summary.csv plus per-run directories run_<index>/.
std::vector<SweepRow> RunSweep(const Scenario& s,
                               std::span<const double> multipliers,
                               const std::filesystem::path& out_dir);

std::string FormatSweepCsv(std::span<const SweepRow> rows);

/// Writes through a temporary sibling file and renames it into place.
void WriteFileAtomic(const std::filesystem::path& path,
                     std::string_view content);

/// Stable process exit code per error category (0 and 1 are reserved for
/// success and usage errors).
int ExitCodeFor(ErrorCode code);

}  // namespace edgesync
