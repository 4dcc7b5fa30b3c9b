#include "cli_app.hpp"

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bufsim/json_out.hpp"
#include "bufsim/oracle.hpp"
#include "bufsim/policies.hpp"
#include "bufsim/proofcheck.hpp"
#include "bufsim/simulator.hpp"
#include "bufsim/trace_io.hpp"
#include "bufsim/tracegen.hpp"
#include "bufsim/types.hpp"
#include "bufsim/version.hpp"

namespace bufsim::cli {
namespace {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Relative output paths land in $BUFSIM_OUT_DIR when it is set.
fs::path resolve_out(const std::string& path) {
  fs::path p(path);
  if (p.is_absolute()) return p;
  if (const char* dir = std::getenv("BUFSIM_OUT_DIR"); dir && *dir) {
    return fs::path(dir) / p;
  }
  return p;
}

// Empty path means stdout; files are written atomically.
void emit(const std::string& path, const std::string& contents) {
  if (path.empty()) {
    std::cout << contents;
    return;
  }
  const fs::path target = resolve_out(path);
  if (target.has_parent_path()) {
    fs::create_directories(target.parent_path());
  }
  write_file_atomic(target.string(), contents);
}

struct ConfigArgs {
  int ports = 0;
  std::int64_t capacity = 0;
  std::string config_path;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--n", ports, "Number of output ports");
    cmd.add_option("--B", capacity, "Shared buffer capacity in packets");
    cmd.add_option("--config", config_path, "JSON config file with fields n, B");
  }

  SwitchConfig resolve() const {
    SwitchConfig config{ports, capacity};
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw UsageError("cannot open config file: " + config_path);
      nlohmann::json doc;
      try {
        in >> doc;
      } catch (const nlohmann::json::exception& e) {
        throw UsageError("bad config JSON: " + std::string(e.what()));
      }
      if (config.ports <= 0 && doc.contains("n")) config.ports = doc["n"].get<int>();
      if (config.capacity <= 0 && doc.contains("B")) {
        config.capacity = doc["B"].get<std::int64_t>();
      }
    }
    if (!config.valid()) {
      throw UsageError("need a valid config: --n/--B flags or --config JSON with n >= 1, B >= 1");
    }
    return config;
  }
};

Trace load_trace(const std::string& path, const SwitchConfig& config) {
  return read_trace_csv_file(path, config);
}

std::string policy_label(const AdmissionPolicy& policy, PolicyKind kind,
                         const PolicyParams& params) {
  std::ostringstream out;
  out << policy.name();
  if (kind == PolicyKind::DynamicThreshold) out << "(alpha=" << params.alpha << ")";
  if (kind == PolicyKind::Smxq) {
    out << "(theta=" << static_cast<const SmxqPolicy&>(policy).theta() << ")";
  }
  return out.str();
}

PolicyKind parse_policy_or_throw(const std::string& text) {
  PolicyKind kind;
  if (!parse_policy_kind(text, kind)) throw UsageError("unknown policy: " + text);
  return kind;
}

// --- simulate ---------------------------------------------------------

struct SimulateArgs {
  ConfigArgs config;
  std::string trace_path;
  std::string policy = "modified-harmonic";
  PolicyParams params;
  std::string out_path;
  std::string timeline_path;
};

int cmd_simulate(const SimulateArgs& args) {
  const SwitchConfig config = args.config.resolve();
  const Trace trace = load_trace(args.trace_path, config);
  const PolicyKind kind = parse_policy_or_throw(args.policy);
  auto policy = make_policy(kind, config, args.params);

  SimOptions options;
  options.record_timeline = !args.timeline_path.empty();
  const SimResult result = simulate(trace, *policy, options);

  emit(args.out_path, to_json(result, config, policy_label(*policy, kind, args.params)));
  if (!args.timeline_path.empty()) {
    emit(args.timeline_path, timeline_csv(result));
  }
  return kExitOk;
}

// --- opt --------------------------------------------------------------

struct OptArgs {
  ConfigArgs config;
  std::string trace_path;
  int max_packets = 24;
  std::int64_t node_budget = 100'000'000;
  std::string out_path;
};

int cmd_opt(const OptArgs& args) {
  const SwitchConfig config = args.config.resolve();
  const Trace trace = load_trace(args.trace_path, config);
  if (static_cast<std::int64_t>(trace.packets.size()) > args.max_packets) {
    throw UsageError("trace has " + std::to_string(trace.packets.size()) +
                     " packets, above --max-packets " + std::to_string(args.max_packets));
  }
  OracleLimits limits;
  limits.max_packets = args.max_packets;
  limits.node_budget = args.node_budget;
  emit(args.out_path, to_json(offline_opt(trace, limits), config));
  return kExitOk;
}

// --- gen --------------------------------------------------------------

struct GenArgs {
  ConfigArgs config;
  std::string kind = "uniform";
  std::int64_t slots = 8;
  std::uint64_t seed = 0;
  bool seed_set = false;
  double load = 1.0;
  int target_port = 1;
  std::int64_t burst = 0;
  std::string out_path;
  std::string out_dir;
  int max_packets = 0;
  int max_slots = 0;
  bool exact_length = false;
};

int cmd_gen(const GenArgs& args) {
  const SwitchConfig config = args.config.resolve();
  GenKind kind;
  if (!parse_gen_kind(args.kind, kind)) throw UsageError("unknown kind: " + args.kind);

  if (kind == GenKind::Enumerate) {
    if (args.max_packets <= 0 || args.max_slots <= 0) {
      throw UsageError("enumerate needs --max-packets and --max-slots");
    }
    if (args.out_dir.empty()) throw UsageError("enumerate needs --out-dir");
    const fs::path dir = resolve_out(args.out_dir);
    fs::create_directories(dir);
    TraceEnumerator enumerator(config, args.max_slots, args.max_packets, args.exact_length);
    Trace trace;
    std::uint64_t count = 0;
    while (enumerator.next(trace)) {
      std::ostringstream name;
      name << std::setw(6) << std::setfill('0') << count << ".csv";
      std::ostringstream body;
      write_trace_csv(body, trace);
      write_file_atomic((dir / name.str()).string(), body.str());
      ++count;
    }
    nlohmann::ordered_json doc;
    doc["tool"] = kToolName;
    doc["version"] = kVersion;
    doc["kind"] = "gen";
    doc["config"] = {{"n", config.ports}, {"B", config.capacity}};
    doc["family"] = "enumerate";
    doc["maxPackets"] = args.max_packets;
    doc["maxSlots"] = args.max_slots;
    doc["exactLength"] = args.exact_length;
    doc["traces"] = count;
    doc["outDir"] = dir.string();
    std::cout << doc.dump(2) << "\n";
    return kExitOk;
  }

  const bool randomized = kind == GenKind::Uniform || kind == GenKind::OnOff;
  if (randomized && !args.seed_set) {
    throw UsageError("--seed is required for kind " + args.kind);
  }
  if (args.out_path.empty()) throw UsageError("gen needs --out");

  GenSpec spec;
  spec.kind = kind;
  spec.config = config;
  spec.length = args.slots;
  spec.seed = args.seed;
  spec.load = args.load;
  spec.target_port = args.target_port;
  spec.burst_len = args.burst;
  const Trace trace = generate(spec);

  std::ostringstream body;
  write_trace_csv(body, trace);
  emit(args.out_path, body.str());

  nlohmann::ordered_json doc;
  doc["tool"] = kToolName;
  doc["version"] = kVersion;
  doc["kind"] = "gen";
  doc["config"] = {{"n", config.ports}, {"B", config.capacity}};
  doc["family"] = std::string(to_string(kind));
  doc["slots"] = args.slots;
  doc["seed"] = args.seed;
  doc["load"] = args.load;
  doc["targetPort"] = args.target_port;
  doc["burst"] = args.burst;
  doc["packets"] = trace.packets.size();
  doc["out"] = resolve_out(args.out_path).string();
  std::cout << doc.dump(2) << "\n";
  return kExitOk;
}

// --- check-proof ------------------------------------------------------

struct CheckProofArgs {
  ConfigArgs config;
  std::string trace_path;
  std::string vector_path;
  std::string strategy = "most-recent";
  std::string out_path;
  std::string dump_path;
};

std::vector<bool> read_vector_file(const std::string& path, std::size_t expected) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open vector file: " + path);
  std::vector<bool> vec;
  std::string token;
  while (in >> token) {
    if (token == "0") {
      vec.push_back(false);
    } else if (token == "1") {
      vec.push_back(true);
    } else {
      throw UsageError("vector file must hold 0/1 tokens, got: " + token);
    }
  }
  if (vec.size() != expected) {
    throw UsageError("vector has " + std::to_string(vec.size()) + " entries for " +
                     std::to_string(expected) + " packets");
  }
  return vec;
}

int cmd_check_proof(const CheckProofArgs& args) {
  const SwitchConfig config = args.config.resolve();
  const Trace trace = load_trace(args.trace_path, config);

  ProofCheckOptions options;
  if (args.strategy == "most-recent") {
    options.antecedent = AntecedentStrategy::MostRecentBuffered;
  } else if (args.strategy == "earliest") {
    options.antecedent = AntecedentStrategy::EarliestBuffered;
  } else {
    throw UsageError("unknown strategy: " + args.strategy + " (most-recent or earliest)");
  }

  std::vector<bool> vector;
  if (!args.vector_path.empty()) {
    vector = read_vector_file(args.vector_path, trace.packets.size());
    options.opt_source = "custom";
  } else {
    vector = choose_opt_vector(trace, options.opt_source);
  }

  ProofLedger ledger;
  try {
    ledger = check_proof(trace, vector, options);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  emit(args.out_path, to_json(ledger));
  if (ledger.clean()) return kExitOk;

  // Violation path: rerun with full event recording for the dump.
  options.record_events = true;
  const ProofLedger detailed = check_proof(trace, vector, options);
  const std::string dump = args.dump_path.empty() ? "proof_events.csv" : args.dump_path;
  emit(dump, proof_events_csv(detailed));
  std::cerr << "proof check found violations; event dump written to "
            << resolve_out(dump).string() << "\n";
  return kExitViolation;
}

// --- differential -----------------------------------------------------

struct DifferentialArgs {
  ConfigArgs config;
  std::string trace_path;
  std::string out_path;
};

int cmd_differential(const DifferentialArgs& args) {
  const SwitchConfig config = args.config.resolve();
  const Trace trace = load_trace(args.trace_path, config);
  emit(args.out_path, to_json(differential(trace), config));
  return kExitOk;
}

// --- ratio-sweep ------------------------------------------------------

struct RatioSweepArgs {
  ConfigArgs config;
  std::vector<std::string> trace_paths;
  std::string dir;
  bool enumerate = false;
  int max_packets = 0;
  int max_slots = 0;
  std::string policies = "modified-harmonic,harmonic,dt,smxq";
  PolicyParams params;
  int oracle_max_packets = 24;
  std::int64_t node_budget = 100'000'000;
  std::string opt_source = "auto";
  std::string out_path;
};

std::vector<PolicyKind> parse_policy_list(const std::string& text) {
  std::vector<PolicyKind> kinds;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    kinds.push_back(parse_policy_or_throw(item));
  }
  if (kinds.empty()) throw UsageError("--policies selected nothing");
  return kinds;
}

int cmd_ratio_sweep(const RatioSweepArgs& args) {
  const SwitchConfig config = args.config.resolve();
  const std::vector<PolicyKind> kinds = parse_policy_list(args.policies);
  if (args.opt_source != "auto" && args.opt_source != "oracle" && args.opt_source != "sigma") {
    throw UsageError("--opt-source must be auto, oracle, or sigma");
  }

  std::vector<std::pair<std::string, Trace>> inputs;
  for (const std::string& path : args.trace_paths) {
    inputs.emplace_back(path, load_trace(path, config));
  }
  if (!args.dir.empty()) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(args.dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".csv") {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
    for (const fs::path& file : files) {
      inputs.emplace_back(file.string(), load_trace(file.string(), config));
    }
  }
  if (args.enumerate) {
    if (args.max_packets <= 0 || args.max_slots <= 0) {
      throw UsageError("--enumerate needs --max-packets and --max-slots");
    }
    TraceEnumerator enumerator(config, args.max_slots, args.max_packets);
    Trace trace;
    std::uint64_t index = 0;
    while (enumerator.next(trace)) {
      inputs.emplace_back("enum:" + std::to_string(index), trace);
      ++index;
    }
  }

  OracleLimits limits;
  limits.max_packets = args.oracle_max_packets;
  limits.node_budget = args.node_budget;
  const double bound = 2.0 + std::log(static_cast<double>(config.ports));

  std::ostringstream out;
  out << "trace,n,B,policy,opt,alg,ratio,bound,guardTriggers,optSource,flagged\n";
  std::int64_t flagged_rows = 0;

  for (const auto& [label, trace] : inputs) {
    // One adversary count per trace, shared across policies.
    std::int64_t opt_count = 0;
    std::string opt_label;
    const bool fits = static_cast<int>(trace.packets.size()) <= limits.max_packets;
    if (args.opt_source == "sigma" || (args.opt_source == "auto" && !fits)) {
      opt_count = static_cast<std::int64_t>(trace.packets.size());
      opt_label = "sigma";
    } else {
      if (!fits) {
        throw UsageError("trace " + label + " exceeds oracle limits; use --opt-source sigma");
      }
      OptResult opt = offline_opt(trace, limits);
      opt_count = opt.opt_count;
      opt_label = opt.exact ? "oracle" : "oracle-lower-bound";
    }

    for (PolicyKind kind : kinds) {
      auto policy = make_policy(kind, config, args.params);
      const SimResult result = simulate(trace, *policy);
      const double ratio =
          result.accepted == 0
              ? (opt_count == 0 ? 1.0 : std::numeric_limits<double>::infinity())
              : static_cast<double>(opt_count) / static_cast<double>(result.accepted);
      const bool flagged = kind == PolicyKind::ModifiedHarmonic && ratio > bound;
      flagged_rows += flagged ? 1 : 0;
      out << label << ',' << config.ports << ',' << config.capacity << ','
          << policy_label(*policy, kind, args.params) << ',' << opt_count << ','
          << result.accepted << ',' << ratio << ',' << bound << ',' << result.guard_rejections
          << ',' << opt_label << ',' << (flagged ? 1 : 0) << '\n';
    }
  }

  emit(args.out_path, out.str());
  if (flagged_rows > 0) {
    std::cerr << flagged_rows << " row(s) exceed the 2+ln n bound for modified-harmonic\n";
    return kExitViolation;
  }
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Shared-buffer switch admission simulator and proof checker"};
  app.set_version_flag("--version", std::string(kToolName) + " " + kVersion);
  app.require_subcommand(1);

  SimulateArgs simulate_args;
  auto* simulate_cmd = app.add_subcommand("simulate", "Run a policy over a trace");
  simulate_args.config.add_to(*simulate_cmd);
  simulate_cmd->add_option("--trace", simulate_args.trace_path, "Trace CSV")->required();
  simulate_cmd->add_option("--policy", simulate_args.policy,
                           "modified-harmonic, harmonic, dt, sharing, partitioning, smxq");
  simulate_cmd->add_option("--alpha", simulate_args.params.alpha, "DT threshold factor");
  simulate_cmd->add_option("--theta", simulate_args.params.theta,
                           "SMXQ static cap (default ceil(B/sqrt(n)))");
  simulate_cmd->add_option("--out", simulate_args.out_path, "Result JSON (stdout when omitted)");
  simulate_cmd->add_option("--timeline", simulate_args.timeline_path, "Per-event timeline CSV");

  OptArgs opt_args;
  auto* opt_cmd = app.add_subcommand("opt", "Exact offline optimum by exhaustive search");
  opt_args.config.add_to(*opt_cmd);
  opt_cmd->add_option("--trace", opt_args.trace_path, "Trace CSV")->required();
  opt_cmd->add_option("--max-packets", opt_args.max_packets, "Refuse longer traces");
  opt_cmd->add_option("--node-budget", opt_args.node_budget, "Search node cap");
  opt_cmd->add_option("--out", opt_args.out_path, "Result JSON (stdout when omitted)");

  GenArgs gen_args;
  auto* gen_cmd = app.add_subcommand("gen", "Generate workload traces");
  gen_args.config.add_to(*gen_cmd);
  gen_cmd->add_option("--kind", gen_args.kind,
                      "uniform, flood, onoff, adversarial-shift, enumerate");
  gen_cmd->add_option("--slots", gen_args.slots, "Arrival slots (or phase length)");
  gen_cmd->add_option("--seed", gen_args.seed, "RNG seed (required for randomized kinds)")
      ->trigger_on_parse()
      ->each([&gen_args](const std::string&) { gen_args.seed_set = true; });
  gen_cmd->add_option("--load", gen_args.load, "Mean arrivals per slot across the switch");
  gen_cmd->add_option("--target-port", gen_args.target_port, "Flood victim port");
  gen_cmd->add_option("--burst", gen_args.burst, "Burst phase length (0 = default)");
  gen_cmd->add_option("--out", gen_args.out_path, "Trace CSV path");
  gen_cmd->add_option("--out-dir", gen_args.out_dir, "Directory for enumerate");
  gen_cmd->add_option("--max-packets", gen_args.max_packets, "Enumerate: packet cap");
  gen_cmd->add_option("--max-slots", gen_args.max_slots, "Enumerate: slot cap");
  gen_cmd->add_flag("--exact-length", gen_args.exact_length,
                    "Enumerate: exactly max-packets arrivals");

  CheckProofArgs check_args;
  auto* check_cmd = app.add_subcommand("check-proof", "Replay the competitive argument");
  check_args.config.add_to(*check_cmd);
  check_cmd->add_option("--trace", check_args.trace_path, "Trace CSV")->required();
  check_cmd->add_option("--vector", check_args.vector_path,
                        "Acceptance vector file of 0/1 tokens (default: oracle or greedy)");
  check_cmd->add_option("--strategy", check_args.strategy,
                        "Antecedent choice: most-recent or earliest");
  check_cmd->add_option("--out", check_args.out_path, "Ledger JSON (stdout when omitted)");
  check_cmd->add_option("--dump", check_args.dump_path,
                        "Event dump CSV on violation (default proof_events.csv)");

  DifferentialArgs diff_args;
  auto* diff_cmd =
      app.add_subcommand("differential", "Prefix-budget vs threshold form, first divergence");
  diff_args.config.add_to(*diff_cmd);
  diff_cmd->add_option("--trace", diff_args.trace_path, "Trace CSV")->required();
  diff_cmd->add_option("--out", diff_args.out_path, "Report JSON (stdout when omitted)");

  RatioSweepArgs sweep_args;
  auto* sweep_cmd = app.add_subcommand("ratio-sweep", "Competitive ratios across policies");
  sweep_args.config.add_to(*sweep_cmd);
  sweep_cmd->add_option("traces", sweep_args.trace_paths, "Trace CSV files");
  sweep_cmd->add_option("--dir", sweep_args.dir, "Directory of trace CSVs");
  sweep_cmd->add_flag("--enumerate", sweep_args.enumerate, "Sweep an enumerated box instead");
  sweep_cmd->add_option("--max-packets", sweep_args.max_packets, "Enumerate: packet cap");
  sweep_cmd->add_option("--max-slots", sweep_args.max_slots, "Enumerate: slot cap");
  sweep_cmd->add_option("--policies", sweep_args.policies, "Comma-separated policy list");
  sweep_cmd->add_option("--alpha", sweep_args.params.alpha, "DT threshold factor");
  sweep_cmd->add_option("--theta", sweep_args.params.theta, "SMXQ static cap");
  sweep_cmd->add_option("--oracle-max-packets", sweep_args.oracle_max_packets,
                        "Oracle size limit");
  sweep_cmd->add_option("--node-budget", sweep_args.node_budget, "Oracle node cap");
  sweep_cmd->add_option("--opt-source", sweep_args.opt_source,
                        "auto, oracle, or sigma (= all arrivals, an upper bound)");
  sweep_cmd->add_option("--out", sweep_args.out_path, "CSV (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (simulate_cmd->parsed()) return cmd_simulate(simulate_args);
    if (opt_cmd->parsed()) return cmd_opt(opt_args);
    if (gen_cmd->parsed()) return cmd_gen(gen_args);
    if (check_cmd->parsed()) return cmd_check_proof(check_args);
    if (diff_cmd->parsed()) return cmd_differential(diff_args);
    if (sweep_cmd->parsed()) return cmd_ratio_sweep(sweep_args);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const TraceIoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace bufsim::cli
