#include "trollscope/cli.hpp"

#include <chrono>
#include <ctime>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <fmt/ranges.h>

#include "CLI11.hpp"
#include "trollscope/conflict.hpp"
#include "trollscope/error.hpp"
#include "trollscope/json_io.hpp"
#include "trollscope/pipeline.hpp"
#include "trollscope/simulator.hpp"

namespace trollscope::cli {

namespace {

constexpr std::uint64_t kDefaultScenarioSeed = 42;

int exit_code_for(const Error& e) {
  return e.code() == ErrorCode::kDegenerate ? kExitDegenerate : kExitInvalid;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string join(const std::vector<UserId>& ids) {
  return ids.empty() ? std::string("-") : fmt::format("{}", fmt::join(ids, " "));
}

void print_report(const ConflictReport& report, std::ostream& out) {
  fmt::print(out, "{:<12} {:>8} {:>12}  {}\n", "user", "messages", "conf_user", "class");
  for (const auto& uc : report.per_user) {
    fmt::print(out, "{:<12} {:>8} {:>12.6f}  {}\n", uc.user, uc.message_count, uc.conflict,
               report.is_troll(uc.user) ? "troll" : "other");
  }
  fmt::print(out, "\ntrolls: {}\nothers: {}\n", join(report.trolls), join(report.others));
  fmt::print(out, "centers: troll={:.6f} other={:.6f}\n", report.troll_center, report.other_center);
}

std::string describe(const MassFunction& bba) {
  std::vector<std::string> parts;
  for (const auto& f : bba.focal_elements()) {
    parts.push_back(fmt::format("m({})={:.6f}", bba.frame().to_string(f.set), f.mass));
  }
  return fmt::format("{}", fmt::join(parts, " "));
}

}  // namespace

int simulate(const SimulateOptions& options, std::ostream& out, std::ostream& err) {
  ScenarioSpec spec;
  try {
    if (options.scenario && options.spec_path) {
      err << "simulate: give either --scenario or --spec, not both\n";
      return kExitInvalid;
    }
    if (options.scenario) {
      const std::uint64_t seed = options.seed.value_or(kDefaultScenarioSeed);
      if (*options.scenario == "example1") {
        spec = example1_scenario(seed);
      } else if (*options.scenario == "example2") {
        spec = example2_scenario(seed);
      } else {
        err << "simulate: unknown scenario '" << *options.scenario << "' (expected example1 or example2)\n";
        return kExitInvalid;
      }
    } else if (options.spec_path) {
      spec = scenario_from_json(read_json_file(*options.spec_path));
      if (options.seed) spec.seed = *options.seed;
    } else {
      err << "simulate: one of --scenario or --spec is required\n";
      return kExitInvalid;
    }
    Thread thread = generate(spec);
    const auto doc = thread_to_json(thread, GeneratorInfo{std::string(kGeneratorId), spec.seed});
    write_text_file_atomic(options.out_path, doc.dump(2) + "\n");
    fmt::print(out, "wrote {} messages from {} users to {}\n", thread.message_count(),
               thread.users().size(), options.out_path);
    return kExitOk;
  } catch (const IoError& e) {
    err << "simulate: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    err << "simulate: invalid spec: " << e.what() << "\n";
    return kExitInvalid;
  }
}

int detect(const DetectOptions& options, std::ostream& out, std::ostream& err) {
  try {
    const auto start = std::chrono::steady_clock::now();
    Thread thread = thread_from_json(read_json_file(options.thread_path));
    ConflictReport report;
    try {
      report = analyze(thread);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDegenerate) throw;
      err << "detect: cannot separate trolls from other users: every user has the same conflict "
             "score, so there is no two-cluster structure ("
          << e.what() << ")\n";
      return kExitDegenerate;
    }
    print_report(report, out);
    if (options.json_path) {
      ReportDocument doc{std::move(report), {}};
      doc.run.input = options.thread_path;
      doc.run.generated_at = utc_timestamp();
      doc.run.elapsed_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      write_text_file_atomic(*options.json_path, report_to_json(doc).dump(2) + "\n");
    }
    return kExitOk;
  } catch (const IoError& e) {
    err << "detect: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    err << "detect: invalid thread: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

int conflict(const ConflictOptions& options, std::ostream& out, std::ostream& err) {
  try {
    Thread thread = thread_from_json(read_json_file(options.thread_path));
    const Message& a = thread.message(options.rank_a);
    const Message& b = thread.message(options.rank_b);
    const ConflictBreakdown c = explain_conflict(a.bba, b.bba);
    fmt::print(out, "a: rank {} by {}: {}\n", a.rank, a.author, describe(a.bba));
    fmt::print(out, "b: rank {} by {}: {}\n", b.rank, b.author, describe(b.bba));
    fmt::print(out, "d_inc(a,b)  = {:.6f}\n", c.inclusion_12);
    fmt::print(out, "d_inc(b,a)  = {:.6f}\n", c.inclusion_21);
    fmt::print(out, "sigma_inc   = {:.6f}\n", c.sigma);
    fmt::print(out, "jousselme d = {:.6f}\n", c.distance);
    fmt::print(out, "conf        = {:.6f}\n", c.conflict);
    return kExitOk;
  } catch (const IoError& e) {
    err << "conflict: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    err << "conflict: " << e.what() << "\n";
    return kExitInvalid;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Belief-function conflict scoring of discussion threads and troll detection",
               "trollscope"};
  app.require_subcommand(1);

  SimulateOptions sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Generate a synthetic thread file");
  auto* scenario_opt = sim_cmd->add_option("--scenario", sim.scenario, "Built-in scenario: example1|example2");
  sim_cmd->add_option("--spec", sim.spec_path, "Scenario JSON file")->excludes(scenario_opt);
  sim_cmd->add_option("--seed", sim.seed, "Random seed (overrides the spec)");
  sim_cmd->add_option("--out", sim.out_path, "Output thread JSON")->required();

  DetectOptions det;
  auto* det_cmd = app.add_subcommand("detect", "Score users and split trolls from other users");
  det_cmd->add_option("--thread", det.thread_path, "Thread JSON file")->required();
  det_cmd->add_option("--json", det.json_path, "Write the report as JSON");

  ConflictOptions con;
  auto* con_cmd = app.add_subcommand("conflict", "Inspect the conflict between two messages");
  con_cmd->add_option("--thread", con.thread_path, "Thread JSON file")->required();
  con_cmd->add_option("--a", con.rank_a, "Rank of the first message")->required();
  con_cmd->add_option("--b", con.rank_b, "Rank of the second message")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  if (*sim_cmd) return simulate(sim, out, err);
  if (*det_cmd) return detect(det, out, err);
  return conflict(con, out, err);
}

}  // namespace trollscope::cli
