// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance suite: one line of output per criterion, nonzero exit if any
// fails. The CLI binary used by the determinism criterion is taken from
// --cli PATH (default: ../tools/fpsel next to this binary).

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "fpsel/analysis.hpp"
#include "fpsel/general.hpp"
#include "fpsel/io.hpp"
#include "fpsel/oracle.hpp"
#include "fpsel/targeted.hpp"
#include "test_util.hpp"

using namespace fpsel;
using namespace fpsel::testutil;

namespace {

using Clock = std::chrono::steady_clock;

double MsSince(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string Fmt(double value, int precision = 2) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(precision);
  out << value;
  return out.str();
}

long VmHwmKb() {
  std::ifstream status("/proc/self/status");
  std::string line;
  while (std::getline(status, line)) {
    if (line.rfind("VmHWM:", 0) == 0) {
      return std::strtol(line.c_str() + 6, nullptr, 10);
    }
  }
  return -1;
}

// --- criterion 1: targeted golden examples ---------------------------------

Outcome Criterion1() {
  const Dataset d = ToyDataset();
  auto q = [&](const std::string& label, bool value) {
    return Query{Item(d, label), value};
  };

  double worst_ms = 0.0;
  auto timed = [&](ProfileId p, std::size_t s) {
    double best = 1e9;
    Fingerprint fp;
    for (int rep = 0; rep < 3; ++rep) {
      const auto start = Clock::now();
      fp = TargetedFingerprint(d, TargetFromProfile(d, p), s);
      best = std::min(best, MsSince(start));
    }
    worst_ms = std::max(worst_ms, best);
    return fp;
  };

  const Fingerprint u1 = timed(Pid(d, "U1"), 2);
  if (u1.queries != std::vector<Query>{q("A2", false), q("A4", true)} ||
      u1.anonymity_set != Pids(d, {"U1"})) {
    return {false, "U1 run diverged"};
  }

  const Fingerprint u5 = timed(Pid(d, "U5"), 3);
  if (u5.queries !=
          std::vector<Query>{q("A4", false), q("A2", true), q("A3", true)} ||
      u5.anonymity_set != Pids(d, {"U5"})) {
    return {false, "U5 run diverged"};
  }

  const Fingerprint u2 = timed(Pid(d, "U2"), 2);
  if (u2.anonymity_set.size() != 2) {
    return {false, "U2 set size " + std::to_string(u2.anonymity_set.size())};
  }

  if (worst_ms >= 1.0) {
    return {false, "slowest golden run took " + Fmt(worst_ms, 3) + " ms"};
  }
  return {true, "slowest run " + Fmt(worst_ms, 3) + " ms"};
}

// --- criterion 2: general golden examples ----------------------------------

Outcome Criterion2() {
  const Dataset d = ToyDataset();
  std::vector<ProfileId> all(6);
  std::iota(all.begin(), all.end(), 0);
  const Partitioning trivial{{all}};

  const std::vector<std::pair<std::string, std::uint64_t>> expected{
      {"A1", 5}, {"A2", 8}, {"A3", 8}, {"A4", 9}};
  for (const auto& [label, want] : expected) {
    if (SeparationOf(d, trivial, Item(d, label)) != want) {
      return {false, "iteration-1 separation of " + label + " differs"};
    }
  }

  const GeneralResult s3 = GeneralFingerprint(d, 3);
  const std::vector<ItemId> want_queries{Item(d, "A4"), Item(d, "A2"),
                                         Item(d, "A3")};
  if (s3.queries != want_queries) return {false, "s=3 selection differs"};
  if (s3.partitioning.blocks.size() != 6) {
    return {false, "s=3 did not reach six singletons"};
  }
  for (const auto& block : s3.partitioning.blocks) {
    if (block.size() != 1) return {false, "non-singleton block at s=3"};
  }

  const GeneralResult key = MinimumKey(d);
  if (key.queries.size() != 3 || key.queries != want_queries) {
    return {false, "minimum key is not the expected 3 items"};
  }
  return {true, "separations (5,8,8,9); key {A4,A2,A3}"};
}

// --- criterion 3: oracle self-consistency over a fixed corpus --------------

Outcome Criterion3() {
  const auto start = Clock::now();
  std::mt19937_64 rng(101);
  std::size_t checked = 0;

  auto check_instance = [&](const Dataset& d, std::size_t s) -> bool {
    const ProfileId p = static_cast<ProfileId>(rng() % d.num_profiles());
    const TargetProfile target = TargetFromProfile(d, p);
    const OracleResult t = ExactTargeted(d, target, s);
    if (t.best_objective != BruteAgreementCount(d, target.items, t.best_subset))
      return false;
    const OracleResult g = ExactGeneral(d, s);
    if (g.best_objective != BruteSeparatedPairs(d, g.best_subset))
      return false;
    ++checked;
    return true;
  };

  if (!check_instance(ToyDataset(), 3)) return {false, "toy dataset diverged"};
  for (int round = 0; round < 200; ++round) {
    const Dataset d =
        RandomDataset(rng, 2 + rng() % 11, 2 + rng() % 11,
                      0.2 + 0.6 * static_cast<double>(rng() % 100) / 100.0);
    const std::size_t s = 1 + rng() % 4;
    if (!check_instance(d, s)) {
      return {false, "instance " + std::to_string(round) + " diverged"};
    }
  }

  const double elapsed_ms = MsSince(start);
  if (elapsed_ms > 60'000.0) {
    return {false, "corpus took " + Fmt(elapsed_ms / 1000.0) + " s"};
  }
  return {true, std::to_string(checked) + " instances in " +
                    Fmt(elapsed_ms / 1000.0) + " s"};
}

// --- criterion 4: (1 - 1/e) approximation bound ----------------------------

Outcome Criterion4() {
  std::mt19937_64 rng(211);
  const double bound = 1.0 - 1.0 / std::exp(1.0);
  std::size_t instances = 0;

  for (int round = 0; round < 500; ++round) {
    const Dataset d =
        RandomDataset(rng, 2 + rng() % 19, 2 + rng() % 14,
                      0.15 + 0.7 * static_cast<double>(rng() % 100) / 100.0);
    const std::size_t s = 1 + rng() % 4;

    const TargetProfile target = TargetFromProfile(
        d, static_cast<ProfileId>(rng() % d.num_profiles()));
    const Fingerprint greedy_t = TargetedFingerprint(d, target, s);
    const OracleResult opt_t = ExactTargeted(d, target, s);
    const double cov_greedy =
        static_cast<double>(d.num_profiles() - greedy_t.anonymity_set.size());
    const double cov_opt =
        static_cast<double>(d.num_profiles() - opt_t.best_objective);
    if (cov_greedy + 1e-9 < bound * cov_opt) {
      return {false, "targeted bound violated at round " +
                         std::to_string(round) + ": " + Fmt(cov_greedy) +
                         " < 0.632 * " + Fmt(cov_opt)};
    }

    const GeneralResult greedy_g = GeneralFingerprint(d, s);
    const OracleResult opt_g = ExactGeneral(d, s);
    const double pairs_greedy = static_cast<double>(
        SeparatedPairs(greedy_g.partitioning, d.num_profiles()));
    if (pairs_greedy + 1e-9 <
        bound * static_cast<double>(opt_g.best_objective)) {
      return {false, "general bound violated at round " +
                         std::to_string(round)};
    }
    ++instances;
  }

  // For targets outside the dataset the loop stops once the set has at most
  // one member, so the guarantee is: the ratio holds, or the set already hit
  // that floor (coverage >= |B| - 1, one short of the unconstrained optimum).
  for (int round = 0; round < 100; ++round) {
    const Dataset d =
        RandomDataset(rng, 2 + rng() % 19, 2 + rng() % 14,
                      0.15 + 0.7 * static_cast<double>(rng() % 100) / 100.0);
    const std::size_t s = 1 + rng() % 4;
    TargetProfile target;
    for (ItemId i = 0; i < d.universe_size(); ++i) {
      if (rng() & 1) target.items.push_back(i);
    }
    const Fingerprint greedy_t = TargetedFingerprint(d, target, s);
    const OracleResult opt_t = ExactTargeted(d, target, s);
    const double cov_greedy =
        static_cast<double>(d.num_profiles() - greedy_t.anonymity_set.size());
    const double cov_opt =
        static_cast<double>(d.num_profiles() - opt_t.best_objective);
    if (cov_greedy + 1e-9 < bound * cov_opt &&
        greedy_t.anonymity_set.size() > 1) {
      return {false, "external-target bound violated at round " +
                         std::to_string(round)};
    }
  }
  return {true, std::to_string(instances) +
                    " member-target instances, both problems, zero "
                    "violations; 100 external targets within the stop-rule "
                    "guarantee"};
}

// --- criterion 5: structural invariants ------------------------------------

Outcome Criterion5() {
  std::mt19937_64 rng(307);
  const int kCases = 1000;

  // inverted-index duality
  for (int c = 0; c < kCases; ++c) {
    const Dataset d = RandomDataset(rng, 1 + rng() % 12, 1 + rng() % 8);
    std::vector<std::vector<ItemId>> rebuilt(d.num_profiles());
    for (ItemId i = 0; i < d.universe_size(); ++i) {
      for (ProfileId p : d.posting(i)) rebuilt[p].push_back(i);
    }
    for (ProfileId p = 0; p < d.num_profiles(); ++p) {
      if (rebuilt[p] != d.profile(p).items) {
        return {false, "duality broken at case " + std::to_string(c)};
      }
    }
  }

  // monotone shrinkage + membership soundness (targeted)
  for (int c = 0; c < kCases; ++c) {
    const Dataset d = RandomDataset(rng, 2 + rng() % 12, 2 + rng() % 8);
    const ProfileId p = static_cast<ProfileId>(rng() % d.num_profiles());
    const Fingerprint fp =
        TargetedFingerprint(d, TargetFromProfile(d, p), 1 + rng() % 5);
    if (fp.anonymity_set != BruteAgreementSet(d, fp.queries)) {
      return {false, "membership soundness broken at case " +
                         std::to_string(c)};
    }
    std::size_t prev = d.num_profiles();
    std::vector<Query> prefix;
    for (const Query& q : fp.queries) {
      prefix.push_back(q);
      const std::size_t size = BruteAgreementSet(d, prefix).size();
      if (size >= prev) {
        return {false, "shrinkage broken at case " + std::to_string(c)};
      }
      prev = size;
    }
  }

  // refinement + block correctness (general)
  for (int c = 0; c < kCases; ++c) {
    const Dataset d = RandomDataset(rng, 2 + rng() % 12, 2 + rng() % 8);
    const GeneralResult result = GeneralFingerprint(d, 1 + rng() % 5);
    if (result.partitioning.blocks != BruteClasses(d, result.queries)) {
      return {false, "block correctness broken at case " + std::to_string(c)};
    }
    for (std::size_t t = 1; t <= result.queries.size(); ++t) {
      const auto finer = BruteClasses(
          d, {result.queries.begin(), result.queries.begin() + t});
      const auto coarser = BruteClasses(
          d, {result.queries.begin(), result.queries.begin() + t - 1});
      for (const auto& block : finer) {
        bool nested = false;
        for (const auto& super : coarser) {
          nested |= std::includes(super.begin(), super.end(), block.begin(),
                                  block.end());
        }
        if (!nested) {
          return {false, "refinement broken at case " + std::to_string(c)};
        }
      }
    }
  }

  // histogram mass conservation, both modes
  for (int c = 0; c < kCases; ++c) {
    const Dataset d = RandomDataset(rng, 2 + rng() % 12, 2 + rng() % 8);
    AnalysisParams params;
    params.max_queries = 3;
    const AnalysisReport general_report =
        AnalyzeGeneral(GeneralFingerprint(d, 3), d.num_profiles(), params);
    const AnalysisReport targeted_report = AnalyzeTargetedBatch(
        TargetedFingerprintBatch(d, 3), d.num_profiles(), params);
    for (const AnalysisReport* report : {&general_report, &targeted_report}) {
      std::uint64_t mass = 0;
      for (const auto& [size, count] : report->set_size_histogram) {
        mass += count;
      }
      if (mass != d.num_profiles()) {
        return {false, "histogram mass broken at case " + std::to_string(c)};
      }
    }
  }

  return {true, "5 invariant families x 1000 cases, zero violations"};
}

// --- criterion 6: CLI determinism -------------------------------------------

struct CliRunner {
  std::string binary;
  std::filesystem::path dir;
  int next_id = 0;

  // Runs the CLI with --output into a fresh file; returns the bytes.
  std::string Output(const std::string& args) {
    const std::string path =
        (dir / ("out_" + std::to_string(next_id++))).string();
    const std::string command = "'" + binary + "' " + args + " --output '" +
                                path + "' 2>/dev/null";
    if (std::system(command.c_str()) != 0) {
      throw std::runtime_error("command failed: " + command);
    }
    std::ifstream in(path, std::ios::binary);
    std::ostringstream content;
    content << in.rdbuf();
    return content.str();
  }
};

Outcome Criterion6(const std::string& cli_binary) {
  if (!std::filesystem::exists(cli_binary)) {
    return {false, "CLI binary not found at " + cli_binary};
  }
  const std::filesystem::path dir =
      std::filesystem::temp_directory_path() /
      ("fpsel_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  CliRunner cli{cli_binary, dir, 0};

  const std::string toy = (dir / "toy.tsv").string();
  WriteTextFile(toy,
                "U1\tA1,A3,A4\nU2\tA1,A2,A3,A4\nU3\tA2,A4\nU4\tA1,A3\n"
                "U5\tA1,A2,A3\nU6\tA1,A2\n");
  const std::string synth = (dir / "synth.tsv").string();
  if (std::system(("'" + cli_binary + "' gen --profiles 300 --universe 400 " +
                   "--mean-size 8 --seed 11 --output '" + synth + "'")
                      .c_str()) != 0) {
    return {false, "synthetic generation through the CLI failed"};
  }

  std::vector<std::string> configs;
  for (const std::string& dataset : {toy, synth}) {
    const std::string ds = " --dataset '" + dataset + "'";
    configs.push_back("target" + ds + " --target-id U1 -s 2");
    configs.push_back("target" + ds + " --all -s 3");
    configs.push_back("target" + ds + " --all -s 5");
    configs.push_back("general" + ds + " -s 1");
    configs.push_back("general" + ds + " -s 3");
    configs.push_back("general" + ds + " --sweep 1,2,4");
    configs.push_back("minkey" + ds);
    configs.push_back("stats" + ds + " --mode targeted -s 3");
    configs.push_back("stats" + ds + " --mode general -s 3");
    configs.push_back("oracle" + ds + " --mode general -s 2");
    configs.push_back("oracle" + ds + " --mode targeted -s 2 --target-id U1");
  }
  configs.push_back("gen --profiles 150 --universe 200 --mean-size 6 --seed 3");
  configs.push_back("gen --profiles 150 --universe 200 --mean-size 6 --seed 4");

  // the synthetic dataset has ids u000..u299; patch the toy-specific ids
  for (std::string& config : configs) {
    if (config.find(synth) != std::string::npos) {
      const std::size_t at = config.find("--target-id U1");
      if (at != std::string::npos) {
        config.replace(at, 14, "--target-id u000");
      }
    }
  }

  std::size_t verified = 0;
  try {
    for (const std::string& config : configs) {
      const std::string first = cli.Output(config);
      const std::string second = cli.Output(config);
      if (first.empty() || first != second) {
        std::filesystem::remove_all(dir);
        return {false, "re-run differs for: " + config};
      }
      if (config.find("--all") != std::string::npos ||
          config.find("stats") == 0) {
        for (const std::string& threads : {" --threads 2", " --threads 4"}) {
          if (cli.Output(config + threads) != first) {
            std::filesystem::remove_all(dir);
            return {false, "thread count changes bytes for: " + config};
          }
        }
      }
      ++verified;
    }
  } catch (const std::exception& e) {
    std::filesystem::remove_all(dir);
    return {false, e.what()};
  }
  std::filesystem::remove_all(dir);
  return {true, std::to_string(verified) + " configurations byte-stable"};
}

// --- criterion 7: scale and curve shapes ------------------------------------

Outcome Criterion7() {
  SynthConfig config;
  config.num_profiles = 50'000;
  config.universe_size = 90'000;
  config.popularity_exponent = 1.0;
  config.mean_profile_size = 42;
  config.seed = 7;

  auto start = Clock::now();
  const Dataset d = GenerateSynthetic(config);
  const double gen_s = MsSince(start) / 1000.0;

  double mean_size = 0.0;
  for (const Profile& profile : d.profiles()) {
    mean_size += static_cast<double>(profile.items.size());
  }
  mean_size /= static_cast<double>(d.num_profiles());

  const unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  start = Clock::now();
  const std::vector<Fingerprint> batch =
      TargetedFingerprintBatch(d, 50, threads);
  const double targeted_s = MsSince(start) / 1000.0;

  start = Clock::now();
  const GeneralResult general = GeneralFingerprint(d, 50);
  const double general_s = MsSince(start) / 1000.0;

  // informational runtime trend in |B| (linear-ish is the expectation; the
  // stated O(s|B|n) is an upper envelope)
  std::string trend = "trend";
  for (const std::uint32_t size : {12'500u, 25'000u, 50'000u}) {
    SynthConfig scaled = config;
    scaled.num_profiles = size;
    const Dataset sd = GenerateSynthetic(scaled);
    const auto t0 = Clock::now();
    TargetedFingerprintBatch(sd, 50, threads);
    trend += " " + std::to_string(size) + ":" + Fmt(MsSince(t0) / 1000.0, 1) +
             "s";
  }

  if (targeted_s > 600.0 || general_s > 600.0) {
    return {false, "runs exceeded minutes-scale: targeted " +
                       Fmt(targeted_s) + " s, general " + Fmt(general_s) +
                       " s"};
  }
  AnalysisParams params;
  params.max_queries = 50;
  const AnalysisReport batch_report =
      AnalyzeTargetedBatch(batch, d.num_profiles(), params);
  const AnalysisReport general_report =
      AnalyzeGeneral(general, d.num_profiles(), params);

  // qualitative curve shapes on a smaller sweep
  SynthConfig small = config;
  small.num_profiles = 2'000;
  small.universe_size = 3'000;
  small.mean_profile_size = 20;
  const Dataset ds = GenerateSynthetic(small);
  const auto entries = SweepGeneral(ds, {1, 2, 4, 8, 16, 32}, {});
  double prev_avg = static_cast<double>(ds.num_profiles()) + 1;
  double prev_unique = -1.0;
  for (const auto& [s, report] : entries) {
    if (report.average_set_size > prev_avg + 1e-9) {
      return {false, "average set size increased along the sweep"};
    }
    if (report.unique_fraction < prev_unique - 1e-9) {
      return {false, "unique fraction decreased along the sweep"};
    }
    prev_avg = report.average_set_size;
    prev_unique = report.unique_fraction;
  }

  const long hwm = VmHwmKb();
  return {true,
          "gen " + Fmt(gen_s) + " s (mean size " + Fmt(mean_size, 1) +
              "), targeted batch " + Fmt(targeted_s) + " s (unique " +
              Fmt(100.0 * batch_report.unique_fraction, 1) + "%), general " +
              Fmt(general_s) + " s (avg set " +
              Fmt(general_report.average_set_size, 2) + "), " +
              std::to_string(threads) + " thread(s), peak RSS " +
              std::to_string(hwm / 1024) + " MiB, " + trend};
}

// --- criterion 8: minimum-key optimality at desk scale ----------------------

Outcome Criterion8() {
  std::mt19937_64 rng(401);
  int instances = 0;
  double ratio_sum = 0.0;
  double ratio_worst = 1.0;

  while (instances < 100) {
    const Dataset d =
        RandomDataset(rng, 3 + rng() % 12, 3 + rng() % 12,
                      0.2 + 0.6 * static_cast<double>(rng() % 100) / 100.0);
    bool distinct = true;
    for (ProfileId a = 0; a < d.num_profiles() && distinct; ++a) {
      for (ProfileId b = a + 1; b < d.num_profiles(); ++b) {
        if (d.profile(a).items == d.profile(b).items) {
          distinct = false;
          break;
        }
      }
    }
    if (!distinct) continue;

    const GeneralResult greedy = MinimumKey(d);
    if (greedy.partitioning.blocks.size() != d.num_profiles()) {
      return {false, "greedy key failed to separate distinct rows"};
    }
    const std::size_t exact = BruteMinimumKeyLength(d);
    if (greedy.queries.size() < exact) {
      return {false, "greedy key shorter than the exact minimum"};
    }
    const std::size_t pigeonhole = static_cast<std::size_t>(
        std::ceil(std::log2(static_cast<double>(d.num_profiles()))));
    if (greedy.queries.size() < pigeonhole) {
      return {false, "pigeonhole lower bound violated"};
    }
    const double ratio = static_cast<double>(greedy.queries.size()) /
                         static_cast<double>(std::max<std::size_t>(1, exact));
    ratio_sum += ratio;
    ratio_worst = std::max(ratio_worst, ratio);
    ++instances;
  }
  return {true, "100 instances; greedy/exact length ratio mean " +
                    Fmt(ratio_sum / 100.0) + ", worst " + Fmt(ratio_worst)};
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli_binary =
      (std::filesystem::path(argv[0]).parent_path() / ".." / "tools" / "fpsel")
          .string();
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--cli") cli_binary = argv[i + 1];
  }

  struct Entry {
    int id;
    const char* name;
    Outcome outcome;
  };
  std::vector<Entry> entries;
  entries.push_back({1, "targeted golden examples", Criterion1()});
  entries.push_back({2, "general golden examples", Criterion2()});
  entries.push_back({3, "oracle agreement corpus", Criterion3()});
  entries.push_back({4, "(1-1/e) approximation bound", Criterion4()});
  entries.push_back({5, "structural invariants", Criterion5()});
  entries.push_back({6, "CLI determinism", Criterion6(cli_binary)});
  entries.push_back({7, "scale and curve shapes", Criterion7()});
  entries.push_back({8, "minimum-key optimality", Criterion8()});

  bool all_passed = true;
  for (const Entry& entry : entries) {
    all_passed &= entry.outcome.passed;
    std::cout << (entry.outcome.passed ? "[PASS]" : "[FAIL]") << " criterion "
              << entry.id << ": " << entry.name;
    if (!entry.outcome.detail.empty()) {
      std::cout << " - " << entry.outcome.detail;
    }
    std::cout << "\n";
  }
  std::cout << (all_passed ? "acceptance: all criteria passed"
                           : "acceptance: FAILURES present")
            << std::endl;
  return all_passed ? 0 : 1;
}
