#include "skyway/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "skyway/bench.hpp"
#include "skyway/config.hpp"
#include "skyway/errors.hpp"
#include "skyway/exhaustive.hpp"
#include "skyway/network_io.hpp"
#include "skyway/replay.hpp"

namespace skyway {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitIo = 4;

/// SKYWAY_SEED is the fallback when no seed is given explicitly.
std::optional<std::uint64_t> env_seed() {
  const char* raw = std::getenv("SKYWAY_SEED");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  std::uint64_t v = 0;
  const char* end = raw;
  while (*end != '\0') ++end;
  const auto [ptr, ec] = std::from_chars(raw, end, v);
  if (ec != std::errc{} || ptr != end) {
    throw ValidationError(std::string("SKYWAY_SEED is not an integer: '") + raw + "'");
  }
  return v;
}

Rect parse_bounds(const std::string& text) {
  const std::size_t x = text.find('x');
  if (x == std::string::npos || x == 0 || x + 1 == text.size()) {
    throw ValidationError("bounds must look like WxH, e.g. 100x100");
  }
  const auto parse = [&text](std::size_t from, std::size_t to) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data() + from, text.data() + to, v);
    if (ec != std::errc{} || ptr != text.data() + to) {
      throw ValidationError("bounds must look like WxH, e.g. 100x100");
    }
    return v;
  };
  return Rect{parse(0, x), parse(x + 1, text.size())};
}

struct GenNetArgs {
  std::uint32_t nodes = 0;
  std::string bounds;
  std::optional<std::uint64_t> seed;
  double max_seg_km = 20.0;
  std::uint32_t pads = 4;
  std::string out_path;
};

struct GenSchedArgs {
  std::string net_path;
  double horizon_h = 48.0;
  double load = 0.5;
  double busy_len_h = 2.15;
  std::optional<std::uint64_t> seed;
  std::string out_path;
};

struct ComposeArgs {
  std::string net_path, sched_path, drone_path, out_path = "plan.json";
  NodeId src = 0;
  std::vector<NodeId> dsts;
  std::string algo = "heuristic";
  double depart_h = 0.0;
  double weight_kg = 1.0;
};

struct BenchArgs {
  std::string config_path;
  std::string out_dir;
};

struct ValidateArgs {
  std::string plan_path, net_path, sched_path, drone_path;
};

std::uint64_t pick_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const auto env = env_seed()) return *env;
  return 1;
}

int cmd_gen_net(const GenNetArgs& args, std::ostream& out) {
  const SkywayNetwork net = generate_network(args.nodes, parse_bounds(args.bounds),
                                             args.max_seg_km, args.pads, pick_seed(args.seed));
  save_network(net, args.out_path);
  out << "wrote " << args.out_path << ": " << net.nodes.size() << " nodes, "
      << net.segments.size() << " segments\n";
  return kExitOk;
}

int cmd_gen_sched(const GenSchedArgs& args, std::ostream& out, std::ostream& err) {
  SkywayNetwork net;
  try {
    net = load_network(args.net_path);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  const OccupancySchedule sched = generate_schedule(net, args.horizon_h, args.load,
                                                    args.busy_len_h, pick_seed(args.seed));
  save_schedule(sched, args.out_path);
  std::size_t intervals = 0;
  for (const auto& [station, pads] : sched.stations) {
    for (const PadTimetable& pad : pads) intervals += pad.size();
  }
  out << "wrote " << args.out_path << ": " << sched.stations.size() << " stations, "
      << intervals << " busy intervals\n";
  return kExitOk;
}

int cmd_compose(const ComposeArgs& args, std::ostream& out, std::ostream& err) {
  SkywayNetwork net;
  OccupancySchedule sched;
  AppConfig cfg;
  try {
    net = load_network(args.net_path);
    sched = load_schedule(args.sched_path);
    if (!args.drone_path.empty()) cfg = load_config(args.drone_path);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  DeliveryRequest request;
  request.src = args.src;
  request.depart_clock_h = args.depart_h;
  for (const NodeId d : args.dsts) request.packages.push_back({args.weight_kg, d});
  request.validate(net, cfg.drone);

  const ComposeResult result =
      args.algo == "exhaustive"
          ? compose_exhaustive(net, sched, cfg.drone, request)
          : compose_heuristic(net, sched, cfg.drone, request, cfg.margins);

  if (!result.feasible()) {
    err << "infeasible: " << result.diagnostics.infeasible_reason << "\n";
    return kExitInfeasible;
  }
  const CompositionPlan& plan = *result.plan;
  save_plan(plan, args.out_path);
  out << "wrote " << args.out_path << "\n"
      << "delivery time: " << plan.delivery_time_h << " h\n"
      << "recharges: " << plan.recharge_count() << " (total wait " << plan.total_wait_h()
      << " h)\n"
      << "segments flown: " << plan.itinerary.invocations.size() << ", subgraph nodes: "
      << result.diagnostics.subgraph_nodes << "\n";
  return kExitOk;
}

int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
  AppConfig cfg;
  try {
    if (!args.config_path.empty()) {
      cfg = load_config(args.config_path);
    } else if (const auto env = env_seed()) {
      cfg.experiment.seed = *env;
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  const BenchResult result = run_benchmark(cfg.to_experiment());
  emit_csv(result.trials, result.report, args.out_dir);

  out << "wrote " << args.out_dir << "/trials.csv and " << args.out_dir << "/summary.csv\n";
  out << std::left << std::setw(8) << "n_nodes" << std::setw(12) << "algo" << std::setw(6)
      << "runs" << std::setw(10) << "feasible" << std::setw(16) << "mean_delivery_h"
      << std::setw(14) << "mean_exec_s" << "gap_pct\n";
  for (const SizeSummary& s : result.report.sizes) {
    out << std::left << std::setw(8) << s.n_nodes << std::setw(12) << s.algo << std::setw(6)
        << s.runs << std::setw(10) << s.feasible_rate << std::setw(16) << s.mean_delivery_h
        << std::setw(14) << s.mean_exec_s << s.mean_gap_pct << "\n";
  }
  return kExitOk;
}

int cmd_validate(const ValidateArgs& args, std::ostream& out, std::ostream& err) {
  CompositionPlan plan;
  SkywayNetwork net;
  OccupancySchedule sched;
  AppConfig cfg;
  try {
    plan = load_plan(args.plan_path);
    net = load_network(args.net_path);
    sched = load_schedule(args.sched_path);
    if (!args.drone_path.empty()) cfg = load_config(args.drone_path);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  const ReplayReport report = replay(plan, net, sched, cfg.drone);
  if (!report.ok()) {
    for (const std::string& issue : report.issues) err << "violation: " << issue << "\n";
    return kExitUsage;
  }
  out << "plan replays exactly: " << report.timeline.size() << " stops, delivery time "
      << report.delivery_time_h << " h\n";
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"skyway: drone delivery composition over a skyway network"};
  app.require_subcommand(1);

  GenNetArgs gen_net;
  CLI::App* c_gen_net = app.add_subcommand("gen-net", "Generate a random connected network");
  c_gen_net->add_option("--nodes", gen_net.nodes, "Node count (>= 2)")->required();
  c_gen_net->add_option("--bounds", gen_net.bounds, "Area as WxH in km, e.g. 100x100")
      ->required();
  c_gen_net->add_option("--seed", gen_net.seed, "RNG seed (falls back to SKYWAY_SEED)");
  c_gen_net->add_option("--max-seg-km", gen_net.max_seg_km, "Max segment length (km)");
  c_gen_net->add_option("--pads", gen_net.pads, "Recharging pads per station");
  c_gen_net->add_option("--out", gen_net.out_path, "Output network file")->required();

  GenSchedArgs gen_sched;
  CLI::App* c_gen_sched =
      app.add_subcommand("gen-sched", "Generate a pad occupancy schedule for a network");
  c_gen_sched->add_option("--net", gen_sched.net_path, "Network file")->required();
  c_gen_sched->add_option("--horizon", gen_sched.horizon_h, "Schedule horizon (h)");
  c_gen_sched->add_option("--load", gen_sched.load, "Target pad busy fraction in [0,1]");
  c_gen_sched->add_option("--busy-len", gen_sched.busy_len_h, "Busy interval length (h)");
  c_gen_sched->add_option("--seed", gen_sched.seed, "RNG seed (falls back to SKYWAY_SEED)");
  c_gen_sched->add_option("--out", gen_sched.out_path, "Output schedule file")->required();

  ComposeArgs compose;
  CLI::App* c_compose = app.add_subcommand("compose", "Plan a multi-drop delivery");
  c_compose->add_option("--net", compose.net_path, "Network file")->required();
  c_compose->add_option("--sched", compose.sched_path, "Schedule file")->required();
  c_compose->add_option("--drone", compose.drone_path, "Config file for drone/margins");
  c_compose->add_option("--src", compose.src, "Source node id")->required();
  c_compose->add_option("--dst", compose.dsts, "Destination node ids")
      ->required()
      ->delimiter(',');
  c_compose->add_option("--algo", compose.algo, "heuristic (default) or exhaustive")
      ->check(CLI::IsMember({"heuristic", "exhaustive"}));
  c_compose->add_option("--depart", compose.depart_h, "Departure clock (h)");
  c_compose->add_option("--weight", compose.weight_kg, "Per-package weight (kg)");
  c_compose->add_option("--out", compose.out_path, "Output plan file");

  BenchArgs bench;
  CLI::App* c_bench = app.add_subcommand("bench", "Run the benchmark sweep, emit CSV");
  c_bench->add_option("--config", bench.config_path, "Config file (defaults when omitted)");
  c_bench->add_option("--out", bench.out_dir, "Output directory for CSV files")->required();

  ValidateArgs validate;
  CLI::App* c_validate = app.add_subcommand("validate", "Replay-check a plan file");
  c_validate->add_option("--plan", validate.plan_path, "Plan file")->required();
  c_validate->add_option("--net", validate.net_path, "Network file")->required();
  c_validate->add_option("--sched", validate.sched_path, "Schedule file")->required();
  c_validate->add_option("--drone", validate.drone_path, "Config file for drone spec");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (c_gen_net->parsed()) return cmd_gen_net(gen_net, out);
    if (c_gen_sched->parsed()) return cmd_gen_sched(gen_sched, out, err);
    if (c_compose->parsed()) return cmd_compose(compose, out, err);
    if (c_bench->parsed()) return cmd_bench(bench, out, err);
    if (c_validate->parsed()) return cmd_validate(validate, out, err);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const SkywayError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;  // unreachable: a subcommand is required
}

}  // namespace skyway
