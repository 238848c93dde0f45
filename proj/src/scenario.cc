#include "edgesync/scenario.h"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include "edgesync/analysis.h"
#include "edgesync/error.h"
#include "edgesync/lorenz_design.h"

namespace edgesync {
namespace {

struct Line {
  int number = 0;
  std::vector<std::string> tokens;
};

std::vector<std::string> Tokenize(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream is{std::string(line)};
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

double ToDouble(const Line& line, std::size_t index) {
  if (index >= line.tokens.size()) {
    throw ParseError(line.number, "missing value for '" + line.tokens[0] + "'");
  }
  const std::string& tok = line.tokens[index];
  double v = 0.0;
  const char* first = tok.data();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v)) {
    throw ParseError(line.number, "malformed number '" + tok + "'");
  }
  return v;
}

std::uint64_t ToUnsigned(const Line& line, std::size_t index) {
  if (index >= line.tokens.size()) {
    throw ParseError(line.number, "missing value for '" + line.tokens[0] + "'");
  }
  const std::string& tok = line.tokens[index];
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(line.number, "expected a non-negative integer, got '" +
                                      tok + "'");
  }
  return v;
}

void ExpectArity(const Line& line, std::size_t values) {
  if (line.tokens.size() != values + 1) {
    std::ostringstream os;
    os << "'" << line.tokens[0] << "' takes " << values << " value(s)";
    throw ParseError(line.number, os.str());
  }
}

double ScalarValue(const Line& line) {
  ExpectArity(line, 1);
  return ToDouble(line, 1);
}

Vector VectorValue(const Line& line, std::size_t first) {
  Vector v;
  for (std::size_t i = first; i < line.tokens.size(); ++i) {
    v.push_back(ToDouble(line, i));
  }
  return v;
}

Matrix MatrixValue(const Line& line) {
  const std::uint64_t rows = ToUnsigned(line, 1);
  const std::uint64_t cols = ToUnsigned(line, 2);
  if (rows == 0 || cols == 0) {
    throw ParseError(line.number, "matrix dimensions must be positive");
  }
  if (line.tokens.size() != 3 + rows * cols) {
    std::ostringstream os;
    os << "matrix '" << line.tokens[0] << "' expects " << rows * cols
       << " entries, got " << line.tokens.size() - 3;
    throw ParseError(line.number, os.str());
  }
  return Matrix::FromRowMajor(rows, cols, VectorValue(line, 3));
}

/// Tracks duplicate keys within a section.
class KeySet {
 public:
  void Claim(const Line& line) {
    if (!seen_.insert(line.tokens[0]).second) {
      throw ParseError(line.number, "duplicate key '" + line.tokens[0] + "'");
    }
  }
  bool Has(const std::string& key) const { return seen_.count(key) != 0; }

 private:
  std::set<std::string> seen_;
};

[[noreturn]] void UnknownKey(const Line& line, const std::string& section) {
  throw ParseError(line.number, "unknown key '" + line.tokens[0] +
                                    "' in [" + section + "]");
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "'");
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void ParseModel(const std::vector<Line>& lines, ModelSpec& model, int header) {
  KeySet keys;
  std::optional<std::string> type;
  for (const Line& line : lines) {
    keys.Claim(line);
    const std::string& key = line.tokens[0];
    if (key == "type") {
      ExpectArity(line, 1);
      type = line.tokens[1];
      if (*type == "linear") {
        model.kind = ModelKind::kLinear;
      } else if (*type == "tanh") {
        model.kind = ModelKind::kTanh;
      } else if (*type == "lorenz") {
        model.kind = ModelKind::kLorenz;
      } else {
        throw ParseError(line.number, "unknown model type '" + *type + "'");
      }
    } else if (key == "A") {
      model.a = MatrixValue(line);
    } else if (key == "B") {
      model.b = MatrixValue(line);
    } else if (key == "gamma") {
      model.gamma = ScalarValue(line);
    } else if (key == "regime") {
      ExpectArity(line, 1);
      if (line.tokens[1] == "default") {
        model.lorenz = LorenzParameters::Published();
      } else if (line.tokens[1] == "chaotic") {
        model.lorenz = LorenzParameters::Chaotic();
      } else {
        throw ParseError(line.number, "regime must be 'default' or 'chaotic'");
      }
    } else if (key == "a" || key == "b" || key == "c") {
      // Applied below so they override `regime` regardless of order.
    } else {
      UnknownKey(line, "model");
    }
  }
  for (const Line& line : lines) {
    const std::string& key = line.tokens[0];
    if (key == "a") model.lorenz.a = ScalarValue(line);
    if (key == "b") model.lorenz.b = ScalarValue(line);
    if (key == "c") model.lorenz.c = ScalarValue(line);
  }
  if (!type) throw ParseError(header, "[model] requires 'type'");
  if (model.kind != ModelKind::kLorenz) {
    if (!keys.Has("A") || !keys.Has("B")) {
      throw ParseError(header, "[model] linear/tanh models require A and B");
    }
    if (model.kind == ModelKind::kTanh && !keys.Has("gamma")) {
      throw ParseError(header, "[model] tanh model requires gamma");
    }
  }
}

void ParseCertificate(const std::vector<Line>& lines, CertificateSpec& cert,
                      int header) {
  KeySet keys;
  for (const Line& line : lines) {
    keys.Claim(line);
    const std::string& key = line.tokens[0];
    if (key == "mode") {
      ExpectArity(line, 1);
      if (line.tokens[1] == "riccati") {
        cert.mode = CertificateMode::kRiccati;
      } else if (line.tokens[1] == "inline") {
        cert.mode = CertificateMode::kInline;
      } else {
        throw ParseError(line.number, "mode must be 'riccati' or 'inline'");
      }
    } else if (key == "rho") {
      cert.rho = ScalarValue(line);
    } else if (key == "mu") {
      cert.mu = ScalarValue(line);
    } else if (key == "A") {
      cert.a = MatrixValue(line);
    } else if (key == "B") {
      cert.b = MatrixValue(line);
    } else if (key == "P") {
      cert.p = MatrixValue(line);
    } else {
      UnknownKey(line, "certificate");
    }
  }
  if (cert.mode == CertificateMode::kInline && !keys.Has("P")) {
    throw ParseError(header, "[certificate] inline mode requires P");
  }
  if (keys.Has("A") != keys.Has("B")) {
    throw ParseError(header, "[certificate] A and B must be given together");
  }
}

BetaSpec ParseController(const std::vector<Line>& lines, int header) {
  BetaSpec beta;
  for (const Line& line : lines) {
    const std::string& key = line.tokens[0];
    if (key == "beta" || key == "beta_multiplier") {
      if (beta.absolute || beta.multiplier) {
        throw ParseError(line.number,
                         "give exactly one of 'beta' or 'beta_multiplier'");
      }
      const double v = ScalarValue(line);
      if (!(v >= 0.0)) throw ParseError(line.number, "beta must be >= 0");
      (key == "beta" ? beta.absolute : beta.multiplier) = v;
    } else {
      UnknownKey(line, "controller");
    }
  }
  if (!beta.absolute && !beta.multiplier) {
    throw ParseError(header,
                     "[controller] needs 'beta' or 'beta_multiplier'");
  }
  return beta;
}

void ParseInitial(const std::vector<Line>& lines, InitialSpec& init) {
  KeySet keys;
  std::map<std::uint64_t, std::pair<int, Vector>> explicit_states;
  for (const Line& line : lines) {
    const std::string& key = line.tokens[0];
    if (key == "state") {
      const std::uint64_t agent = ToUnsigned(line, 1);
      if (agent == 0) throw ParseError(line.number, "agents are 1-based");
      if (!explicit_states.emplace(agent, std::make_pair(line.number,
                                                         VectorValue(line, 2)))
               .second) {
        throw ParseError(line.number, "duplicate state for agent");
      }
      continue;
    }
    keys.Claim(line);
    if (key == "base") {
      init.base = VectorValue(line, 1);
    } else if (key == "radius") {
      init.radius = ScalarValue(line);
    } else if (key == "seed") {
      ExpectArity(line, 1);
      init.seed = ToUnsigned(line, 1);
    } else if (key == "settle") {
      init.settle = ScalarValue(line);
    } else {
      UnknownKey(line, "initial");
    }
  }
  if (!explicit_states.empty() && keys.Has("base")) {
    throw ParseError(lines.front().number,
                     "[initial] uses either 'state' lines or 'base'");
  }
  std::uint64_t expected = 1;
  for (auto& [agent, entry] : explicit_states) {
    if (agent != expected++) {
      throw ParseError(entry.first, "explicit states must cover agents 1..N");
    }
    init.states.push_back(std::move(entry.second));
  }
}

void ParseIntegration(const std::vector<Line>& lines, SimulationOptions& opt) {
  KeySet keys;
  for (const Line& line : lines) {
    keys.Claim(line);
    const std::string& key = line.tokens[0];
    if (key == "h") {
      opt.step = ScalarValue(line);
    } else if (key == "t_end") {
      opt.t_end = ScalarValue(line);
    } else if (key == "record_interval") {
      opt.record_interval = ScalarValue(line);
    } else {
      UnknownKey(line, "integration");
    }
  }
}

void ParseChecks(const std::vector<Line>& lines, CheckSpec& checks) {
  KeySet keys;
  for (const Line& line : lines) {
    keys.Claim(line);
    const std::string& key = line.tokens[0];
    if (key == "samples") {
      ExpectArity(line, 1);
      checks.samples = ToUnsigned(line, 1);
    } else if (key == "sample_radius") {
      checks.sample_radius = ScalarValue(line);
    } else if (key == "sample_seed") {
      ExpectArity(line, 1);
      checks.sample_seed = ToUnsigned(line, 1);
    } else if (key == "fd_step") {
      checks.fd_step = ScalarValue(line);
    } else if (key == "fit_skip") {
      checks.fit_skip = ScalarValue(line);
    } else if (key == "monotone_tol") {
      checks.monotone_tol = ScalarValue(line);
    } else {
      UnknownKey(line, "checks");
    }
  }
}

void ParseOutput(const std::vector<Line>& lines, std::string& dir) {
  KeySet keys;
  for (const Line& line : lines) {
    keys.Claim(line);
    if (line.tokens[0] == "dir") {
      ExpectArity(line, 1);
      dir = line.tokens[1];
    } else {
      UnknownKey(line, "output");
    }
  }
}

/// Single-agent RK4 with u = 0, used to settle a base point.
Vector SettleUnforced(const AgentModel& model, Vector x, double duration,
                      double h) {
  const auto steps = static_cast<long>(std::llround(duration / h));
  const std::size_t n = x.size();
  auto shifted = [n](const Vector& base, double s, const Vector& k) {
    Vector out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = base[i] + s * k[i];
    return out;
  };
  for (long step = 0; step < steps; ++step) {
    const Vector k1 = model.drift(x);
    const Vector k2 = model.drift(shifted(x, 0.5 * h, k1));
    const Vector k3 = model.drift(shifted(x, 0.5 * h, k2));
    const Vector k4 = model.drift(shifted(x, h, k3));
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
  }
  return x;
}

AgentModel BuildModel(const ModelSpec& spec, const Matrix& gain) {
  switch (spec.kind) {
    case ModelKind::kLinear:
      return LinearModel(spec.a, spec.b, gain);
    case ModelKind::kTanh:
      return TanhPerturbedModel(spec.a, spec.b, spec.gamma, gain);
    case ModelKind::kLorenz:
      return LorenzModel(spec.lorenz, LinearFeedback(gain));
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown model kind");
}

std::size_t StateDim(const ModelSpec& spec) {
  return spec.kind == ModelKind::kLorenz ? 3 : spec.a.rows();
}

/// Nominal design pair: (A, B) for linear/tanh, the origin linearization for
/// Lorenz.
std::pair<Matrix, Matrix> NominalPair(const ModelSpec& spec) {
  if (spec.kind != ModelKind::kLorenz) return {spec.a, spec.b};
  const std::size_t n = StateDim(spec);
  const AgentModel open_loop = BuildModel(spec, Matrix(1, n));
  const Vector origin(n, 0.0);
  return {open_loop.drift_jacobian(origin),
          Matrix::Column(open_loop.input(origin))};
}

void AppendMatrix(std::ostream& os, const std::string& key, const Matrix& m) {
  os << key << ' ' << m.rows() << ' ' << m.cols();
  for (double v : m.data()) os << ' ' << v;
  os << '\n';
}

void AppendVector(std::ostream& os, const std::string& key,
                  std::span<const double> v) {
  os << key;
  for (double x : v) os << ' ' << x;
  os << '\n';
}

}  // namespace

Scenario ParseScenario(std::string_view text,
                       const std::filesystem::path& base_dir) {
  std::map<std::string, std::vector<Line>> sections;
  std::map<std::string, int> headers;
  std::string graph_text;
  int graph_first_line = 0;
  std::string current;

  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++number;
    std::string_view content = raw;
    if (const auto hash = content.find('#'); hash != std::string_view::npos) {
      content = content.substr(0, hash);
    }
    auto tokens = Tokenize(content);
    if (tokens.empty()) {
      if (current == "graph") graph_text += std::string(raw) + "\n";
      continue;
    }
    if (tokens[0].front() == '[') {
      if (tokens.size() != 1 || tokens[0].back() != ']') {
        throw ParseError(number, "malformed section header");
      }
      current = tokens[0].substr(1, tokens[0].size() - 2);
      static const std::set<std::string> known = {
          "graph",   "model",       "certificate", "controller",
          "initial", "integration", "checks",      "output"};
      if (known.count(current) == 0) {
        throw ParseError(number, "unknown section [" + current + "]");
      }
      if (!headers.emplace(current, number).second) {
        throw ParseError(number, "duplicate section [" + current + "]");
      }
      sections[current];
      if (current == "graph") graph_first_line = number + 1;
      continue;
    }
    if (current.empty()) {
      throw ParseError(number, "content before the first [section]");
    }
    if (current == "graph") graph_text += std::string(raw) + "\n";
    sections[current].push_back({number, std::move(tokens)});
  }

  Scenario s;
  if (!headers.count("graph")) throw ParseError(number, "missing [graph]");
  if (!headers.count("model")) throw ParseError(number, "missing [model]");
  if (!headers.count("certificate")) {
    throw ParseError(number, "missing [certificate]");
  }

  const auto& graph_lines = sections["graph"];
  if (!graph_lines.empty() && graph_lines.front().tokens[0] == "file") {
    const Line& line = graph_lines.front();
    ExpectArity(line, 1);
    if (graph_lines.size() != 1) {
      throw ParseError(graph_lines[1].number,
                       "[graph] with 'file' takes no inline edges");
    }
    std::filesystem::path path = line.tokens[1];
    if (path.is_relative()) path = base_dir / path;
    s.graph = ParseGraphText(ReadFile(path));
  } else if (!graph_lines.empty() && graph_lines.front().tokens[0] == "random") {
    // random N p w_min w_max seed
    const Line& line = graph_lines.front();
    ExpectArity(line, 5);
    if (graph_lines.size() != 1) {
      throw ParseError(graph_lines[1].number,
                       "[graph] with 'random' takes no inline edges");
    }
    const std::uint64_t nodes = ToUnsigned(line, 1);
    try {
      s.graph = RandomConnectedGraph(static_cast<int>(nodes),
                                     ToDouble(line, 2), ToDouble(line, 3),
                                     ToDouble(line, 4), ToUnsigned(line, 5));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(line.number, e.what());
    }
  } else {
    s.graph = ParseGraphText(graph_text, graph_first_line);
  }

  ParseModel(sections["model"], s.model, headers["model"]);
  ParseCertificate(sections["certificate"], s.certificate,
                   headers["certificate"]);
  if (headers.count("controller")) {
    s.controller = ParseController(sections["controller"],
                                   headers["controller"]);
  }
  ParseInitial(sections["initial"], s.initial);
  ParseIntegration(sections["integration"], s.integration);
  ParseChecks(sections["checks"], s.checks);
  ParseOutput(sections["output"], s.output_dir);

  const std::size_t n = StateDim(s.model);
  const int model_line = headers["model"];
  if (s.model.kind != ModelKind::kLorenz &&
      (!s.model.a.square() || s.model.b.rows() != n || s.model.b.cols() != 1)) {
    throw ParseError(model_line, "A must be n x n and B must be n x 1");
  }
  const int cert_line = headers["certificate"];
  if (s.certificate.mode == CertificateMode::kInline &&
      (s.certificate.p.rows() != n || s.certificate.p.cols() != n)) {
    throw ParseError(cert_line, "P must be n x n for the selected model");
  }
  if (s.certificate.a.rows() != 0 &&
      (s.certificate.a.rows() != n || !s.certificate.a.square() ||
       s.certificate.b.rows() != n || s.certificate.b.cols() != 1)) {
    throw ParseError(cert_line, "certificate A/B do not match the model");
  }
  const int init_line = headers.count("initial") ? headers["initial"] : number;
  if (!s.initial.states.empty()) {
    if (s.initial.states.size() !=
        static_cast<std::size_t>(s.graph.num_nodes())) {
      throw ParseError(init_line, "one explicit state per agent is required");
    }
    for (const Vector& x : s.initial.states) {
      if (x.size() != n) {
        throw ParseError(init_line, "explicit state has the wrong dimension");
      }
    }
  } else if (!s.initial.base.empty() && s.initial.base.size() != n) {
    throw ParseError(init_line, "base point has the wrong dimension");
  } else if (s.initial.base.empty()) {
    s.initial.base.assign(n, 0.0);
  }
  return s;
}

Scenario LoadScenario(const std::filesystem::path& path) {
  Scenario s = ParseScenario(ReadFile(path), path.parent_path());
  s.name = path.stem().string();
  return s;
}

GraphCheck CheckGraph(const WeightedGraph& g) {
  GraphCheck check;
  check.matrices = BuildMatrices(g);
  check.spectrum = ComputeSpectralReport(check.matrices, g);
  check.upsilon = BuildUpsilon(check.matrices);
  check.endpoints = VerifyEndpointIdentities(check.matrices, check.upsilon);
  return check;
}

PreparedRun PrepareRun(const Scenario& s) {
  const std::size_t n = StateDim(s.model);
  PreparedRun run;
  run.graph = CheckGraph(s.graph);
  if (s.controller && run.graph.spectrum.components != 1) {
    std::ostringstream os;
    os << "controller requested on a graph with "
       << run.graph.spectrum.components << " components";
    throw Error(ErrorCode::kDisconnectedGraph, os.str());
  }

  const bool approximate = s.model.kind == ModelKind::kLorenz;
  Matrix design_b;
  if (s.certificate.mode == CertificateMode::kRiccati) {
    auto [a, b] = s.certificate.a.rows() != 0
                      ? std::make_pair(s.certificate.a, s.certificate.b)
                      : NominalPair(s.model);
    run.design = SolveAri(a, b, s.certificate.rho, s.certificate.mu);
    run.design->certificate.approximate = approximate;
    run.certificate = run.design->certificate;
    design_b = b;
  } else {
    run.certificate = MakeCertificate(s.certificate.p, s.certificate.rho,
                                      s.certificate.mu, approximate);
    design_b = NominalPair(s.model).second;
  }
  // Integrability with a constant input direction forces α(x) = Bᵀ P x.
  const Matrix gain = design_b.transpose() * run.certificate.p;
  run.model = BuildModel(s.model, gain);

  const auto samples = SampleBall(Vector(n, 0.0), s.checks.sample_radius,
                                  s.checks.samples, s.checks.sample_seed);
  run.ari_margin = VerifyAriSampled(run.certificate, run.model, samples);
  run.killing = VerifyKillingIntegrability(run.certificate, run.model, samples,
                                           s.checks.fd_step);

  if (run.graph.spectrum.components == 1) {
    run.beta_star =
        ComputeBetaStar(run.graph.matrices, run.graph.upsilon,
                        run.certificate.rho);
  }
  if (s.controller) {
    const double beta = s.controller->absolute
                            ? *s.controller->absolute
                            : *s.controller->multiplier * run.beta_star->value;
    run.controller = MakeControllerConfig(beta, run.beta_star->value);
  }

  if (!s.initial.states.empty()) {
    for (const Vector& x : s.initial.states) {
      run.x0.insert(run.x0.end(), x.begin(), x.end());
    }
  } else {
    Vector base = s.initial.base;
    if (s.initial.settle > 0.0) {
      base = SettleUnforced(run.model, base, s.initial.settle,
                            s.integration.step);
    }
    run.x0 = PerturbedInitialState(base, s.graph.num_nodes(),
                                   s.initial.radius, s.initial.seed);
  }
  return run;
}

std::string FormatGraphCheck(const Scenario& s, const PreparedRun& run) {
  const GraphCheck& gc = run.graph;
  std::ostringstream os;
  os << std::setprecision(17);
  os << "scenario " << (s.name.empty() ? "-" : s.name) << '\n';
  os << "nodes " << s.graph.num_nodes() << '\n';
  os << "edges " << s.graph.num_edges() << '\n';
  os << "components " << gc.spectrum.components << '\n';
  AppendVector(os, "laplacian_eigs", gc.spectrum.laplacian_eigs);
  AppendVector(os, "edge_laplacian_eigs", gc.spectrum.edge_laplacian_eigs);
  os << "lambda2 " << gc.spectrum.lambda2 << '\n';
  os << "kernel_dim " << gc.upsilon.kernel_dim << '\n';
  os << "mu_upsilon " << gc.upsilon.mu << '\n';
  os << "pd_margin " << gc.upsilon.pd_margin << '\n';
  os << "upsilon_residual " << gc.upsilon.residual << '\n';
  os << "endpoint_residual_initial " << gc.endpoints.initial << '\n';
  os << "endpoint_residual_terminal " << gc.endpoints.terminal << '\n';
  os << "rho " << run.certificate.rho << '\n';
  if (run.beta_star) {
    os << "w_max " << run.beta_star->w_max << '\n';
    os << "lambda_min_sym " << run.beta_star->lambda_min << '\n';
    os << "beta_star " << run.beta_star->value << '\n';
  } else {
    os << "beta_star undefined_disconnected\n";
  }
  os << "certificate_mu " << run.certificate.mu << '\n';
  os << "certificate_approximate " << (run.certificate.approximate ? 1 : 0)
     << '\n';
  os << "p_lower " << run.certificate.p_lower << '\n';
  os << "p_upper " << run.certificate.p_upper << '\n';
  os << "ari_margin_sampled " << run.ari_margin << '\n';
  os << "killing_residual " << run.killing.killing << '\n';
  os << "integrability_residual " << run.killing.integrability << '\n';
  if (run.design) os << "are_residual " << run.design->are_residual << '\n';
  AppendMatrix(os, "P", run.certificate.p);
  AppendMatrix(os, "K", run.design ? run.design->gain
                                   : NominalPair(s.model).second.transpose() *
                                         run.certificate.p);
  AppendMatrix(os, "E", gc.matrices.incidence);
  AppendMatrix(os, "W", gc.matrices.weights);
  AppendMatrix(os, "L", gc.matrices.laplacian);
  AppendMatrix(os, "Le", gc.matrices.edge_laplacian);
  AppendMatrix(os, "Upsilon", gc.upsilon.upsilon);
  AppendMatrix(os, "Omega", gc.upsilon.omega);
  return os.str();
}

Trajectory SimulatePrepared(const Scenario& s, const PreparedRun& run) {
  if (!run.controller) {
    throw Error(ErrorCode::kInvalidArgument,
                "simulation requires a [controller] section");
  }
  Monitors monitors;
  monitors.metric = run.certificate.p;
  SimulationOptions opt = s.integration;
  opt.seed = s.initial.seed;
  return Simulate(s.graph, run.model, run.controller->beta, run.x0, opt,
                  monitors);
}

RunSummary AnalyseRun(const Scenario& s, const PreparedRun& run,
                      const Trajectory& traj) {
  RunSummary summary;
  summary.beta = run.controller ? run.controller->beta : 0.0;
  summary.beta_star = run.beta_star ? run.beta_star->value : 0.0;
  const double t_end = traj.times.back();
  summary.fit = FitDecayRate(traj, "V", s.checks.fit_skip * t_end, t_end);
  summary.monotone = CheckMonotone(traj, "V", s.checks.monotone_tol);
  summary.initial_sync_error = traj.sync_error.front();
  summary.final_sync_error = traj.sync_error.back();
  return summary;
}

std::string FormatRunReport(const Scenario& s, const PreparedRun& run,
                            const Trajectory& traj, const RunSummary& sum) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "scenario " << (s.name.empty() ? "-" : s.name) << '\n';
  os << "model " << run.model.name << '\n';
  os << "graph_hash " << std::hex << traj.metadata.graph_hash << std::dec
     << '\n';
  os << "seed " << traj.metadata.seed << '\n';
  os << "h " << traj.metadata.step << '\n';
  os << "t_end " << traj.times.back() << '\n';
  os << "record_interval " << traj.metadata.record_interval << '\n';
  os << "beta " << sum.beta << '\n';
  os << "beta_star " << sum.beta_star << '\n';
  os << "below_critical "
     << (run.controller && run.controller->below_critical ? 1 : 0) << '\n';
  os << "certificate_approximate " << (run.certificate.approximate ? 1 : 0)
     << '\n';
  os << "ari_margin_sampled " << run.ari_margin << '\n';
  os << "killing_residual " << run.killing.killing << '\n';
  os << "integrability_residual " << run.killing.integrability << '\n';
  os << "rate " << sum.fit.rate << '\n';
  os << "r_squared " << sum.fit.r_squared << '\n';
  os << "fit_window " << sum.fit.t_start << ' ' << sum.fit.t_end << '\n';
  os << "fit_clipped " << (sum.fit.clipped ? 1 : 0) << '\n';
  os << "largest_uptick " << sum.monotone.largest_uptick << '\n';
  os << "monotone_passed " << (sum.monotone.passed ? 1 : 0) << '\n';
  os << "initial_sync_error " << sum.initial_sync_error << '\n';
  os << "final_sync_error " << sum.final_sync_error << '\n';
  os << "initial_V " << traj.energy.front() << '\n';
  os << "final_V " << traj.energy.back() << '\n';
  return os.str();
}

void WriteFileAtomic(const std::filesystem::path& path,
                     std::string_view content) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) {
      throw Error(ErrorCode::kIo, "cannot create directory '" +
                                      path.parent_path().string() + "'");
    }
  }
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorCode::kIo, "short write to '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error(ErrorCode::kIo, "cannot rename into '" + path.string() + "'");
  }
}

void RunCheck(const Scenario& s, const std::filesystem::path& out_dir) {
  const PreparedRun run = PrepareRun(s);
  WriteFileAtomic(out_dir / "graph_check.txt", FormatGraphCheck(s, run));
}

RunSummary RunScenario(const Scenario& s,
                       const std::filesystem::path& out_dir) {
  const PreparedRun run = PrepareRun(s);
  const Trajectory traj = SimulatePrepared(s, run);
  const RunSummary summary = AnalyseRun(s, run, traj);

  std::ostringstream csv;
  WriteTrajectoryCsv(traj, csv);
  WriteFileAtomic(out_dir / "trajectory.csv", csv.str());
  WriteFileAtomic(out_dir / "report.txt",
                  FormatRunReport(s, run, traj, summary));
  WriteFileAtomic(out_dir / "graph_check.txt", FormatGraphCheck(s, run));
  return summary;
}

std::vector<SweepRow> RunSweep(const Scenario& s,
                               std::span<const double> multipliers,
                               const std::filesystem::path& out_dir) {
  std::vector<SweepRow> rows;
  for (std::size_t i = 0; i < multipliers.size(); ++i) {
    SweepRow row;
    row.multiplier = multipliers[i];
    Scenario variant = s;
    variant.controller = BetaSpec{std::nullopt, multipliers[i]};
    try {
      row.summary =
          RunScenario(variant, out_dir / ("run_" + std::to_string(i)));
      row.ok = true;
      row.status = "ok";
    } catch (const Error& err) {
      row.status = ErrorCodeName(err.code());
    }
    rows.push_back(std::move(row));
  }
  WriteFileAtomic(out_dir / "summary.csv", FormatSweepCsv(rows));
  return rows;
}

std::string FormatSweepCsv(std::span<const SweepRow> rows) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "multiplier,rate,largest_uptick,final_sync_error,status\n";
  for (const SweepRow& row : rows) {
    os << row.multiplier << ',';
    if (row.ok) {
      os << row.summary.fit.rate << ',' << row.summary.monotone.largest_uptick
         << ',' << row.summary.final_sync_error;
    } else {
      os << "nan,nan,nan";
    }
    os << ',' << row.status << '\n';
  }
  return os.str();
}

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParseError: return 2;
    case ErrorCode::kDisconnectedGraph: return 3;
    case ErrorCode::kInvalidArgument: return 4;
    case ErrorCode::kDimensionMismatch: return 5;
    case ErrorCode::kNonSymmetric: return 6;
    case ErrorCode::kNoConvergence: return 7;
    case ErrorCode::kSingular: return 8;
    case ErrorCode::kNotPositiveDefinite: return 9;
    case ErrorCode::kMuSearchFailed: return 10;
    case ErrorCode::kNotStabilizable: return 11;
    case ErrorCode::kDiverged: return 12;
    case ErrorCode::kEmptyWindow: return 13;
    case ErrorCode::kIo: return 14;
  }
  return 1;
}

}  // namespace edgesync
