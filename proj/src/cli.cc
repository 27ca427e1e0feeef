#include "qcm/cli.h"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "qcm/golden.h"
#include "qcm/graph.h"
#include "qcm/graph_enumeration.h"
#include "qcm/lemma_suite.h"
#include "qcm/lp_factory.h"
#include "qcm/lp_io.h"
#include "qcm/parallel.h"
#include "qcm/ratio.h"
#include "qcm/rng.h"
#include "qcm/simplex.h"

namespace qcm {
namespace {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::filesystem::path OutputDir() {
  const char* env = std::getenv(kOutputDirEnv);
  return (env && *env) ? std::filesystem::path(env) : std::filesystem::path("qcm-output");
}

std::filesystem::path DefaultOutput(const std::string& name) {
  std::filesystem::path dir = OutputDir();
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

std::optional<LpVariant> ParseVariant(const std::string& name) {
  for (LpVariant v : {LpVariant::kSimple, LpVariant::kTightened, LpVariant::kOddGirth,
                      LpVariant::kFRanking}) {
    if (name == LpVariantName(v)) return v;
  }
  return std::nullopt;
}

std::vector<int> ParseOrder(const std::string& text, int n) {
  std::vector<int> order;
  std::istringstream in(text);
  for (int v; in >> v;) order.push_back(v);
  if (!IsPermutation(order, n)) {
    throw UsageError("--order must list every vertex 0.." + std::to_string(n - 1) + " once");
  }
  return order;
}

// ---------------------------------------------------------------- bound

struct BoundFlags {
  std::string variant;
  int n = 0;
  std::optional<int> k;
  bool solve = false;
  bool golden = false;
  std::string export_path;
  std::string format = "lp";
  std::string pivot = "bland";
  double feasibility_tol = 1e-9;
  int64_t max_iterations = 1'000'000;
  double golden_tol = kGoldenTolerance;
  std::string solution_out;
  std::string verify_solution;
  double verify_tol = 1e-8;
};

int RunBound(const BoundFlags& f, std::ostream& out, std::ostream& err) {
  const auto variant = ParseVariant(f.variant);
  if (!variant) throw UsageError("unknown variant '" + f.variant + "'");
  if (f.n < 1) throw UsageError("--n must be at least 1");
  if (*variant == LpVariant::kOddGirth) {
    if (!f.k) throw UsageError("oddgirth needs --k");
    if (*f.k < 2) throw UsageError("--k must be at least 2");
  } else if (f.k) {
    throw UsageError("--k only applies to oddgirth");
  }
  if (f.format != "lp" && f.format != "mps") throw UsageError("--format is lp or mps");
  if (f.pivot != "bland" && f.pivot != "dantzig") throw UsageError("--pivot is bland or dantzig");
  const int k = f.k.value_or(0);
  std::optional<double> golden;
  if (f.golden) {
    golden = GoldenValue(*variant, f.n, k);
    if (!golden) {
      throw UsageError("no published value for " + f.variant + " n=" + std::to_string(f.n) +
                       (f.k ? " k=" + std::to_string(k) : ""));
    }
  }

  const LpModel model = BuildModel(*variant, f.n, k);
  out << "model " << f.variant << " n=" << f.n;
  if (f.k) out << " k=" << k;
  out << " variables=" << model.variable_count() << " constraints=" << model.constraints().size()
      << '\n';
  for (const auto& [family, count] : FamilyCounts(model)) {
    out << "  " << family << ' ' << count << '\n';
  }

  if (!f.export_path.empty()) {
    const ModelFormat format = f.format == "mps" ? ModelFormat::kMps : ModelFormat::kLpText;
    WriteFile(f.export_path, ExportModel(model, format));
    out << "exported " << f.export_path << '\n';
  }

  if (!f.verify_solution.empty()) {
    const auto assignment = ParseSolution(ReadFile(f.verify_solution));
    VerificationReport report;
    try {
      report = VerifySolution(model, assignment, f.verify_tol);
    } catch (const MissingVariableError& e) {
      throw UsageError(e.what());
    }
    out << "verify objective=" << std::setprecision(10) << report.objective
        << " max_violation=" << report.max_violation << " violations=" << report.violations.size()
        << '\n';
    for (size_t i = 0; i < report.violations.size() && i < 10; ++i) {
      out << "  " << report.violations[i].tag.ToString() << ' ' << report.violations[i].amount
          << '\n';
    }
    if (!report.ok()) return kExitMismatch;
  }

  if (f.solve || golden) {
    SolveOptions options;
    options.feasibility_tol = f.feasibility_tol;
    options.max_iterations = f.max_iterations;
    options.pivot_rule = f.pivot == "dantzig" ? PivotRule::kDantzig : PivotRule::kBland;
    const auto start = std::chrono::steady_clock::now();
    const Solution solution = Solve(model, options);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out << "status " << SolveStatusName(solution.status) << " iterations=" << solution.iterations
        << " seconds=" << std::fixed << std::setprecision(2) << seconds << '\n'
        << std::defaultfloat;
    if (solution.status != SolveStatus::kOptimal) {
      err << "solver did not reach an optimum\n";
      return kExitSolver;
    }
    out << "objective " << std::fixed << std::setprecision(7) << solution.objective << '\n'
        << std::defaultfloat;
    const VerificationReport check =
        VerifySolution(model, solution.values, 10 * f.feasibility_tol);
    out << "max_violation " << check.max_violation << '\n';
    if (!f.solution_out.empty()) {
      WriteFile(f.solution_out, WriteSolution(model, solution.values));
      out << "solution " << f.solution_out << '\n';
    }
    if (golden) {
      const double diff = std::abs(solution.objective - *golden);
      out << "golden " << std::fixed << std::setprecision(5) << *golden << " diff "
          << std::scientific << std::setprecision(2) << diff << '\n'
          << std::defaultfloat;
      if (diff > f.golden_tol) {
        err << "objective differs from the published value\n";
        return kExitMismatch;
      }
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------- simulate

struct SimulateFlags {
  std::string kind;
  int pairs = 0;
  std::string graph_file;
  int random = 0;
  int random_pairs = 3;
  double edge_prob = 0.5;
  int min_odd_girth = 0;
  bool exact = false;
  int64_t trials = 10000;
  uint64_t seed = 1;
  bool worst_pi = false;
  std::string order;
  std::optional<double> bound;
  std::string csv;
  int jobs = DefaultJobs();
};

std::vector<NamedGraph> SimulationInstances(const SimulateFlags& f) {
  const int sources = (f.pairs > 0) + !f.graph_file.empty() + (f.random > 0);
  if (sources != 1) throw UsageError("give exactly one of --pairs, --graph, --random");
  std::vector<NamedGraph> out;
  if (f.pairs > 0) {
    if (2 * f.pairs > kMaxEnumerationVertices) throw UsageError("--pairs too large to enumerate");
    const auto kind = ParseAlgorithmKind(f.kind);
    if ((f.exact || f.worst_pi) && 2 * f.pairs > ExactVertexLimit(*kind, f.worst_pi)) {
      throw UsageError("--pairs too large for exact " + f.kind);
    }
    int index = 0;
    for (Graph& g : PerfectMatchingGraphsUpToIsomorphism(f.pairs)) {
      if (f.min_odd_girth > 0 && OddGirth(g) < f.min_odd_girth) continue;
      out.push_back({"pm" + std::to_string(g.vertex_count() / 2) + "-" + std::to_string(index++),
                     std::move(g)});
    }
  } else if (!f.graph_file.empty()) {
    out.push_back({std::filesystem::path(f.graph_file).filename().string(),
                   ParseGraphText(ReadFile(f.graph_file))});
  } else {
    if (f.random_pairs < 1) throw UsageError("--random-pairs must be positive");
    for (int i = 0; i < f.random; ++i) {
      const uint64_t seed = Rng::StreamSeed(f.seed, 1000003 + i);
      Graph g = f.min_odd_girth > 0
                    ? GenerateOddGirthGraph(f.random_pairs, f.min_odd_girth, 10000, seed)
                    : GeneratePerfectMatchingGraph(f.random_pairs, f.edge_prob, seed);
      out.push_back({"random-" + std::to_string(i), std::move(g)});
    }
  }
  return out;
}

int RunSimulate(const SimulateFlags& f, std::ostream& out, std::ostream& err) {
  const auto kind = ParseAlgorithmKind(f.kind);
  if (!kind) throw UsageError("unknown kind '" + f.kind + "'");
  if (f.min_odd_girth != 0 && (f.min_odd_girth < 5 || f.min_odd_girth % 2 == 0)) {
    throw UsageError("--min-odd-girth must be odd and at least 5");
  }
  if (f.worst_pi && !NeedsAdversarialOrder(*kind)) {
    throw UsageError("--worst-pi needs greedy, irp, or franking");
  }
  if (f.worst_pi && !f.order.empty()) throw UsageError("--worst-pi and --order conflict");
  if (!f.exact && f.trials < 1) throw UsageError("--trials must be positive");
  if (f.jobs < 1) throw UsageError("--jobs must be positive");
  const std::vector<NamedGraph> instances = SimulationInstances(f);

  DominanceReport report;
  if (!f.order.empty()) {
    // A fixed decision order applies to a single graph only.
    if (instances.size() != 1) throw UsageError("--order needs a single --graph");
    if (!NeedsAdversarialOrder(*kind)) throw UsageError("--order only applies to greedy, irp, franking");
    const Graph& g = instances[0].graph;
    const std::vector<int> order = ParseOrder(f.order, g.vertex_count());
    const RatioEstimate est = f.exact ? ExactExpectedRatio(g, *kind, order)
                                      : MonteCarloRatio(g, *kind, order, f.trials, f.seed, f.jobs);
    const double bound = f.bound.value_or(0.0);
    report.rows.push_back({instances[0].id, AlgorithmKindName(*kind), est.mean, est.std_error,
                           bound, est.mean - 4 * est.std_error - bound});
    report.min_margin = report.rows[0].margin;
  } else {
    DominanceOptions options;
    options.exact = f.exact;
    options.trials = f.trials;
    options.worst_order = f.worst_pi;
    options.seed = f.seed;
    options.jobs = f.jobs;
    report = CheckBoundDominance(instances, *kind, f.bound.value_or(0.0), options);
  }

  const std::filesystem::path csv =
      f.csv.empty() ? DefaultOutput("simulate-" + f.kind + ".csv") : std::filesystem::path(f.csv);
  WriteFile(csv, DominanceCsv(report));
  double lowest = 1.0;
  for (const auto& row : report.rows) lowest = std::min(lowest, row.ratio);
  out << "instances " << report.rows.size() << " kind " << f.kind << " mode "
      << (f.exact ? "exact" : "sampled") << '\n';
  out << "min_ratio " << std::fixed << std::setprecision(6) << lowest << '\n' << std::defaultfloat;
  out << "csv " << csv.string() << '\n';
  if (f.bound) {
    out << "bound " << *f.bound << " min_margin " << report.min_margin << '\n';
    if (!report.ok()) {
      err << "bound dominance fails\n";
      return kExitMismatch;
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------- verify

struct VerifyFlags {
  bool all = false;
  std::vector<std::string> only;
  bool list = false;
  int64_t budget = 1000;
  uint64_t seed = 7;
  int exhaustive_pairs = 3;
  std::string replay;
  std::string json;
  int jobs = DefaultJobs();
};

std::string RegisteredList() {
  std::string names;
  for (const auto& n : RegisteredLemmas()) names += "  " + n + "\n";
  return names;
}

int RunVerify(const VerifyFlags& f, std::ostream& out, std::ostream& err) {
  if (f.list) {
    out << RegisteredList();
    return kExitOk;
  }
  if (!f.replay.empty()) {
    const ParsedWitness w = ParseWitness(ReadFile(f.replay));
    if (!IsRegisteredLemma(w.lemma)) throw UsageError("witness names unknown lemma " + w.lemma);
    const auto failure = CheckLemma(w.lemma, w.instance);
    out << "replay " << w.lemma << ' ' << (failure ? "FAIL: " + *failure : "pass") << '\n';
    return failure ? kExitLemma : kExitOk;
  }
  if (f.all == !f.only.empty()) throw UsageError("give either --all or --only");
  for (const auto& name : f.only) {
    if (!IsRegisteredLemma(name)) {
      throw UsageError("unknown lemma '" + name + "'; registered:\n" + RegisteredList());
    }
  }
  if (f.budget < 0) throw UsageError("--budget must be nonnegative");
  if (f.exhaustive_pairs < 0 || 2 * f.exhaustive_pairs > kMaxEnumerationVertices) {
    throw UsageError("--exhaustive-pairs out of range");
  }
  if (f.jobs < 1) throw UsageError("--jobs must be positive");
  SuiteOptions options;
  options.budget = f.budget;
  options.seed = f.seed;
  options.exhaustive_pairs = f.exhaustive_pairs;
  options.jobs = f.jobs;
  options.witness_dir = (OutputDir() / "witnesses").string();
  const LemmaReport report = RunLemmaSuite(f.all ? RegisteredLemmas() : f.only, options);
  for (const auto& r : report.results) {
    out << (r.passed() ? "pass " : "FAIL ") << r.name << " instances=" << r.instances
        << " checks=" << r.checks << " seconds=" << std::fixed << std::setprecision(1)
        << r.seconds << std::defaultfloat << '\n';
    if (!r.passed()) {
      out << "  " << r.first_failure << '\n';
      if (!r.witness_path.empty()) out << "  witness " << r.witness_path << '\n';
    }
  }
  const std::filesystem::path json =
      f.json.empty() ? DefaultOutput("verify-report.json") : std::filesystem::path(f.json);
  WriteFile(json, report.ToJson());
  out << "report " << json.string() << '\n';
  if (!report.passed()) {
    err << "lemma checks failed\n";
    return kExitLemma;
  }
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Query-commit matching: factor-revealing LPs, simulation, and lemma checks", "qcm"};
  app.require_subcommand(1);

  BoundFlags bound;
  CLI::App* bound_cmd = app.add_subcommand("bound", "Build, export, solve, or check an LP bound");
  bound_cmd->add_option("--variant", bound.variant, "ranking, tightened, oddgirth, or franking")
      ->required();
  bound_cmd->add_option("--n", bound.n, "Discretization size")->required();
  bound_cmd->add_option("--k", bound.k, "Compensation copies (oddgirth only, >= 2)");
  bound_cmd->add_flag("--solve", bound.solve, "Solve with the built-in simplex");
  bound_cmd->add_flag("--golden", bound.golden, "Compare with the published value (implies --solve)");
  bound_cmd->add_option("--export", bound.export_path, "Write the model to this file");
  bound_cmd->add_option("--format", bound.format, "Export format: lp or mps")
      ->capture_default_str();
  bound_cmd->add_option("--pivot", bound.pivot, "Entering rule: bland or dantzig")
      ->capture_default_str();
  bound_cmd->add_option("--feasibility-tol", bound.feasibility_tol, "Simplex feasibility tolerance")
      ->capture_default_str();
  bound_cmd->add_option("--max-iterations", bound.max_iterations, "Simplex iteration limit")
      ->capture_default_str();
  bound_cmd->add_option("--golden-tol", bound.golden_tol, "Allowed distance from the published value")
      ->capture_default_str();
  bound_cmd->add_option("--solution-out", bound.solution_out, "Write the solved assignment here");
  bound_cmd->add_option("--verify-solution", bound.verify_solution,
                        "Check a 'name value' assignment against the model");
  bound_cmd->add_option("--verify-tol", bound.verify_tol, "Tolerance for --verify-solution")
      ->capture_default_str();

  SimulateFlags sim;
  CLI::App* sim_cmd = app.add_subcommand("simulate", "Measure approximation ratios on graphs");
  sim_cmd->add_option("--kind", sim.kind, "greedy, irp, rdo, mrg, uur, ranking, or franking")
      ->required();
  sim_cmd->add_option("--pairs", sim.pairs, "All perfect-matching graphs with up to this many pairs");
  sim_cmd->add_option("--graph", sim.graph_file, "Graph file");
  sim_cmd->add_option("--random", sim.random, "Number of random perfect-matching graphs");
  sim_cmd->add_option("--random-pairs", sim.random_pairs, "Pairs per random graph")
      ->capture_default_str();
  sim_cmd->add_option("--edge-prob", sim.edge_prob, "Extra edge probability for random graphs")
      ->capture_default_str();
  sim_cmd->add_option("--min-odd-girth", sim.min_odd_girth, "Keep only graphs of this odd girth or more");
  sim_cmd->add_flag("--exact", sim.exact, "Enumerate all orders instead of sampling");
  sim_cmd->add_option("--trials", sim.trials, "Samples per graph")->capture_default_str();
  sim_cmd->add_option("--seed", sim.seed, "Master seed")->capture_default_str();
  sim_cmd->add_flag("--worst-pi", sim.worst_pi, "Minimize over all decision orders");
  sim_cmd->add_option("--order", sim.order, "Decision order as space-separated vertices");
  sim_cmd->add_option("--bound", sim.bound, "Fail unless every ratio reaches this bound");
  sim_cmd->add_option("--csv", sim.csv, "CSV output path");
  sim_cmd->add_option("--jobs", sim.jobs, "Worker threads (default: all cores)");

  VerifyFlags ver;
  CLI::App* ver_cmd = app.add_subcommand("verify", "Check structural properties on many instances");
  ver_cmd->add_flag("--all", ver.all, "Run every registered check");
  ver_cmd->add_option("--only", ver.only, "Run only these checks");
  ver_cmd->add_flag("--list", ver.list, "List registered checks");
  ver_cmd->add_option("--budget", ver.budget, "Random instances per check")->capture_default_str();
  ver_cmd->add_option("--seed", ver.seed, "Master seed")->capture_default_str();
  ver_cmd->add_option("--exhaustive-pairs", ver.exhaustive_pairs,
                      "Also sweep all perfect-matching graphs up to this many pairs (0: off)")
      ->capture_default_str();
  ver_cmd->add_option("--replay", ver.replay, "Re-run a witness file");
  ver_cmd->add_option("--json", ver.json, "JSON report path");
  ver_cmd->add_option("--jobs", ver.jobs, "Worker threads (default: all cores)");

  app.footer(std::string("Outputs without an explicit path go to $") + kOutputDirEnv +
             " (default ./qcm-output).\nExit codes: 0 ok, 2 usage, 3 solver failure, "
             "4 golden or bound mismatch, 5 lemma failure.");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    if (app.get_subcommands().empty()) {
      out << app.help("", CLI::AppFormatMode::All);
    } else {
      out << app.get_subcommands().front()->help();
    }
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n' << "run 'qcm --help' for usage\n";
    return kExitUsage;
  }

  try {
    if (bound_cmd->parsed()) return RunBound(bound, out, err);
    if (sim_cmd->parsed()) return RunSimulate(sim, out, err);
    return RunVerify(ver, out, err);
  } catch (const UsageError& e) {
    err << "usage: " << e.what() << '\n';
    return kExitUsage;
  } catch (const LpParameterError& e) {
    err << "usage: " << e.what() << '\n';
    return kExitUsage;
  } catch (const OracleScaleError& e) {
    err << "usage: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace qcm
