// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "trollscope/conflict.hpp"
#include "trollscope/error.hpp"
#include "trollscope/json_io.hpp"
#include "trollscope/kmeans.hpp"
#include "trollscope/pipeline.hpp"
#include "trollscope/simulator.hpp"

#ifndef TROLLSCOPE_BIN
#error "TROLLSCOPE_BIN must point at the CLI executable"
#endif

namespace fs = std::filesystem;
using namespace trollscope;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "FAILED: ";
      else detail << "; ";
      detail << what;
      pass = false;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// ---------------------------------------------------------------------------

void combination_oracle(Outcome& out) {
  const auto start = Clock::now();
  std::mt19937_64 rng(1001);
  double worst = 0.0;
  int total_conflict_pairs = 0;
  int mismatches = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    Frame frame = oracle::letters_frame(2 + trial % 3);
    auto m1 = oracle::random_mass(frame, rng, 6, trial % 4 == 0);
    auto m2 = oracle::random_mass(frame, rng, 6, trial % 7 == 0);
    auto dense = oracle::combine_dense(m1.to_dense(), m2.to_dense());
    worst = std::max(worst, oracle::max_abs_diff(combine_conjunctive(m1, m2).to_dense(), dense.conjunctive));
    worst = std::max(worst, oracle::max_abs_diff(combine_disjunctive(m1, m2).to_dense(), dense.disjunctive));
    if (dense.dempster.empty()) {
      ++total_conflict_pairs;
      try {
        combine_dempster(m1, m2);
        ++mismatches;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kTotalConflict) ++mismatches;
      }
    } else {
      worst = std::max(worst, oracle::max_abs_diff(combine_dempster(m1, m2).to_dense(), dense.dempster));
    }
  }
  const double elapsed = seconds_since(start);
  out.require(worst <= 1e-12, "max deviation above 1e-12");
  out.require(mismatches == 0, "total-conflict handling differs from the oracle");
  out.require(elapsed < 5.0, "runtime not under 5 s");
  out.detail << "1000 pairs, max |diff| " << worst << ", " << total_conflict_pairs
             << " total-conflict pairs, " << elapsed << " s";
}

void conflict_properties(Outcome& out) {
  std::mt19937_64 rng(2002);
  int violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    Frame frame = oracle::letters_frame(2 + trial % 3);
    auto m1 = oracle::random_mass(frame, rng);
    auto m2 = oracle::random_mass(frame, rng);
    const double c = conflict(m1, m2);
    const bool ok = c >= 0.0 && c <= 1.0 && std::abs(c - conflict(m2, m1)) <= 1e-12 &&
                    conflict(m1, m1).value() == 0.0 && c <= jousselme_distance(m1, m2);
    violations += !ok;
  }
  out.require(violations == 0, std::to_string(violations) + " random pairs violate a property");

  Frame ab({"a", "b"});
  auto a = make_mass(ab, {{ab.subset_of({"a"}), 1.0}});
  auto b = make_mass(ab, {{ab.subset_of({"b"}), 1.0}});
  const double disjoint = conflict(a, b);
  out.require(disjoint == 1.0, "disjoint certain singletons do not give exactly 1");
  Frame abc({"a", "b", "c"});
  auto nested = make_mass(abc, {{abc.subset_of({"a"}), 0.5}, {abc.subset_of({"a", "b"}), 0.5}});
  auto wide = make_mass(abc, {{abc.subset_of({"a", "b"}), 1.0}});
  const double nested_conf = conflict(nested, wide);
  out.require(nested_conf == 0.0, "nested focal structure does not give exactly 0");
  out.detail << "1000 pairs, Conf(disjoint)=" << disjoint << ", Conf(nested)=" << nested_conf;
}

void jousselme_metric(Outcome& out) {
  std::mt19937_64 rng(3003);
  int asymmetric = 0, identity = 0, triangle = 0;
  double worst_slack = 0.0;
  for (int trial = 0; trial < 10000; ++trial) {
    Frame frame = oracle::letters_frame(1 + trial % 4);
    auto m1 = oracle::random_mass(frame, rng);
    auto m2 = oracle::random_mass(frame, rng);
    auto m3 = oracle::random_mass(frame, rng);
    const double d12 = jousselme_distance(m1, m2);
    if (std::abs(d12 - jousselme_distance(m2, m1)) > 1e-12) ++asymmetric;
    if (jousselme_distance(m1, m1) > 1e-12) ++identity;
    if (!(m1 == m2) && oracle::max_abs_diff(m1.to_dense(), m2.to_dense()) > 1e-9 && d12 <= 1e-12) ++identity;
    const double slack = jousselme_distance(m1, m3) - d12 - jousselme_distance(m2, m3);
    worst_slack = std::max(worst_slack, slack);
    if (slack > 1e-9) ++triangle;
  }
  out.require(asymmetric == 0, std::to_string(asymmetric) + " asymmetric pairs");
  out.require(identity == 0, std::to_string(identity) + " identity-of-indiscernibles failures");
  out.require(triangle == 0, std::to_string(triangle) + " triangle violations");
  out.detail << "10000 triples, worst triangle slack " << worst_slack;
}

void example1(Outcome& out) {
  const auto start = Clock::now();
  ConflictReport report = analyze(generate(example1_scenario(42)));
  const double elapsed = seconds_since(start);
  out.require(report.trolls == std::vector<UserId>{"U4"}, "trolls != {U4}");
  const double u4 = report.user_conflict("U4");
  const double u3 = report.user_conflict("U3");
  for (const auto& uc : report.per_user) {
    if (uc.user != "U4") out.require(u4 > uc.conflict, "U4 not strictly maximal");
    if (uc.user != "U3") out.require(u3 < uc.conflict, "U3 not minimal");
  }
  out.require(elapsed < 1.0, "runtime not under 1 s");
  for (const auto& uc : report.per_user) out.detail << uc.user << "=" << uc.conflict << " ";
  out.detail << "trolls={U4}, " << elapsed << " s";
}

void example2(Outcome& out) {
  const auto start = Clock::now();
  ConflictReport report = analyze(generate(example2_scenario(42)));
  const double elapsed = seconds_since(start);
  out.require(report.trolls == std::vector<UserId>{"U4", "U8"}, "trolls != {U4, U8}");
  out.require(report.user_conflict("U4") > report.user_conflict("U8"), "Conf(U4) <= Conf(U8)");
  for (const char* victim : {"U1", "U2", "U3"}) {
    out.require(!report.is_troll(victim), std::string(victim) + " classified as troll");
  }
  out.require(elapsed < 1.0, "runtime not under 1 s");
  for (const auto& uc : report.per_user) out.detail << uc.user << "=" << uc.conflict << " ";
  out.detail << elapsed << " s";
}

void pipeline_oracle(Outcome& out) {
  std::mt19937_64 rng(6006);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    Thread thread = oracle::random_thread(rng, 5, 8);
    auto naive = oracle::naive_scores(thread);
    auto scores = score_thread(thread);
    for (std::size_t k = 0; k < thread.message_count(); ++k) {
      worst = std::max(worst, std::abs(scores.per_message[k].conflict - naive.per_message[k]));
    }
    for (const auto& uc : scores.per_user) {
      worst = std::max(worst, std::abs(uc.conflict - naive.per_user.at(uc.user)));
    }
  }
  out.require(worst <= 1e-12, "deviation above 1e-12");
  out.detail << "100 threads, max |diff| " << worst;
}

void clustering_optimality(Outcome& out) {
  std::mt19937_64 rng(7007);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int mismatches = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + rng() % 19;
    std::vector<std::pair<std::string, double>> values;
    for (std::size_t i = 0; i < n; ++i) values.emplace_back("v" + std::to_string(i), unit(rng));
    auto p = kmeans2(values);
    if (std::set<std::string>(p.high.begin(), p.high.end()) != oracle::best_split_high(values)) ++mismatches;
  }
  out.require(mismatches == 0, std::to_string(mismatches) + " of 500 sets differ from the optimum");
  std::vector<std::pair<std::string, double>> table{{"U1", 0.0610}, {"U2", 0.0639}, {"U3", 0.0489}, {"U4", 0.2030}};
  auto p = kmeans2(table);
  out.require(p.high == std::vector<std::string>{"U4"}, "published totals do not isolate U4");
  out.detail << "500 sets, " << mismatches << " mismatches; published totals -> high={U4}, centers "
             << p.center_high << "/" << p.center_low;
}

void robustness(Outcome& out) {
  int correct = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto spec = example1_scenario(seed, /*pin_published=*/false);
    try {
      if (analyze(generate(spec)).trolls == std::vector<UserId>{"U4"}) ++correct;
    } catch (const Error&) {
    }
  }
  const double rate = correct / 100.0;
  out.require(rate >= 0.95, "identification rate below 95%");
  out.detail << "troll identified in " << correct << "/100 seeds";
}

// -- CLI ---------------------------------------------------------------------

int shell(const std::string& command) {
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string quoted(const fs::path& p) { return "'" + p.string() + "'"; }

void cli_golden(Outcome& out) {
  const fs::path dir = fs::temp_directory_path() / ("trollscope_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string bin = quoted(TROLLSCOPE_BIN);

  std::string threads[2], stdouts[2], reports[2];
  for (int run = 0; run < 2; ++run) {
    const fs::path thread = dir / ("thread" + std::to_string(run) + ".json");
    const fs::path report = dir / ("report" + std::to_string(run) + ".json");
    const fs::path stdout_file = dir / ("stdout" + std::to_string(run) + ".txt");
    out.require(shell(bin + " simulate --scenario example1 --seed 42 --out " + quoted(thread) + " > /dev/null") == 0,
                "simulate failed");
    out.require(shell(bin + " detect --thread " + quoted(thread) + " --json " + quoted(report) + " > " +
                      quoted(stdout_file)) == 0,
                "detect failed");
    threads[run] = slurp(thread);
    stdouts[run] = slurp(stdout_file);
    auto doc = nlohmann::json::parse(slurp(report));
    doc.erase("run");  // timing and timestamp
    reports[run] = doc.dump(2);
  }
  out.require(!threads[0].empty() && threads[0] == threads[1], "thread files differ between runs");
  out.require(!stdouts[0].empty() && stdouts[0] == stdouts[1], "detect output differs between runs");
  out.require(reports[0] == reports[1], "report JSON differs between runs");
  out.require(stdouts[0].find("trolls: U4\n") != std::string::npos, "detect does not list U4 as sole troll");

  auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream(dir / name) << text;
    return quoted(dir / name);
  };
  const std::string malformed = write("malformed.json", "{\"topic_count\": 2, \"users\": [");
  const std::string bad_mass = write("bad_mass.json", R"({"topic_count": 2, "relevant_topic": 1,
    "users": ["A", "B"], "messages": [
      {"rank": 1, "author": "A", "bba": [{"set": ["Topic_1"], "mass": 0.6}]},
      {"rank": 2, "author": "B", "bba": [{"set": ["Topic_1"], "mass": 1.0}]}]})");
  const std::string gap = write("gap.json", R"({"topic_count": 2, "relevant_topic": 1,
    "users": ["A", "B"], "messages": [
      {"rank": 1, "author": "A", "bba": [{"set": ["Topic_1"], "mass": 1.0}]},
      {"rank": 4, "author": "B", "bba": [{"set": ["Topic_1"], "mass": 1.0}]}]})");
  const std::string same = write("same.json", R"({"topic_count": 2, "relevant_topic": 1,
    "users": ["A", "B"], "messages": [
      {"rank": 1, "author": "A", "bba": [{"set": ["Topic_1"], "mass": 1.0}]},
      {"rank": 2, "author": "B", "bba": [{"set": ["Topic_1"], "mass": 1.0}]}]})");
  const std::string quiet = " > /dev/null 2>&1";

  struct Case {
    const char* name;
    std::string command;
    int expected;
  };
  const Case cases[] = {
      {"missing thread", bin + " detect --thread " + quoted(dir / "nope.json"), 1},
      {"malformed JSON", bin + " detect --thread " + malformed, 2},
      {"bad masses", bin + " detect --thread " + bad_mass, 2},
      {"rank gap", bin + " detect --thread " + gap, 2},
      {"identical bbas", bin + " detect --thread " + same, 3},
      {"bad rank", bin + " conflict --thread " + same + " --a 1 --b 7", 2},
      {"unknown scenario", bin + " simulate --scenario example9 --out " + quoted(dir / "x.json"), 2},
      {"missing spec", bin + " simulate --spec " + quoted(dir / "nope.json") + " --out " + quoted(dir / "x.json"), 1},
      {"usage error", bin + " detect", 2},
  };
  int matched = 0;
  for (const auto& c : cases) {
    const int code = shell(c.command + quiet);
    if (code == c.expected) {
      ++matched;
    } else {
      out.require(false, std::string(c.name) + " exited " + std::to_string(code) + ", expected " +
                             std::to_string(c.expected));
    }
  }
  out.require(!fs::exists(dir / "x.json"), "failed simulate left an output file");
  out.detail << "byte-identical thread/stdout/report across runs; " << matched << "/" << std::size(cases)
             << " exit codes as documented";
  fs::remove_all(dir);
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    const char* title;
    std::function<void(Outcome&)> check;
  };
  const Criterion criteria[] = {
      {"AC1", "combination rules match dense oracle", combination_oracle},
      {"AC2", "conflict measure properties", conflict_properties},
      {"AC3", "Jousselme distance metric suite", jousselme_metric},
      {"AC4", "example 1 reproduction", example1},
      {"AC5", "example 2 reproduction", example2},
      {"AC6", "pipeline matches naive transcription", pipeline_oracle},
      {"AC7", "clustering optimality", clustering_optimality},
      {"AC8", "robustness sweep", robustness},
      {"AC9", "CLI golden run and exit codes", cli_golden},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome outcome;
    try {
      c.check(outcome);
    } catch (const std::exception& e) {
      outcome.require(false, std::string("exception: ") + e.what());
    }
    failures += !outcome.pass;
    std::cout << (outcome.pass ? "[PASS] " : "[FAIL] ") << c.id << " " << c.title << ": "
              << outcome.detail.str() << "\n";
  }
  std::cout << (failures == 0 ? "all acceptance criteria passed" : "some acceptance criteria FAILED") << "\n";
  return failures == 0 ? 0 : 1;
}
