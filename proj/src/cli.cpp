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

#include "fpsel/cli.hpp"

#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fpsel/analysis.hpp"
#include "fpsel/core.hpp"
#include "fpsel/general.hpp"
#include "fpsel/io.hpp"
#include "fpsel/oracle.hpp"
#include "fpsel/report.hpp"
#include "fpsel/targeted.hpp"

namespace fpsel::cli {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitBudget = 3;

struct CommonFlags {
  std::string dataset;
  std::string output = "-";
  unsigned threads = 1;
};

void AddCommonFlags(CLI::App* cmd, CommonFlags* flags,
                    bool dataset_required = true) {
  auto* dataset =
      cmd->add_option("--dataset", flags->dataset, "dataset file to load");
  if (dataset_required) dataset->required();
  cmd->add_option("--output,-o", flags->output,
                  "report destination, '-' for standard output");
  cmd->add_option("--threads", flags->threads, "worker threads (default 1)")
      ->check(CLI::PositiveNumber);
}

void Write(const Json& doc, const CommonFlags& flags, std::ostream& out) {
  if (flags.output == "-") {
    out << RenderReport(doc);
    if (!out) throw DataError("failed while writing to standard output");
  } else {
    EmitReport(doc, flags.output);
  }
}

ProfileId ResolveTargetId(const Dataset& dataset, const std::string& id) {
  std::optional<ProfileId> p = dataset.FindProfile(id);
  if (!p) {
    throw DataError("no profile with external id '" + id + "'");
  }
  return *p;
}

int RunChecked(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"near-optimal fingerprint selection over sparse binary "
               "profile datasets"};
  app.name("fpsel");
  app.require_subcommand(1);

  // target
  CommonFlags target_flags;
  std::size_t target_s = 0;
  std::string target_id, target_path;
  bool target_all = false;
  CLI::App* target = app.add_subcommand(
      "target", "fingerprint one target profile, or every profile");
  AddCommonFlags(target, &target_flags);
  target->add_option("--max-size,-s", target_s, "maximum fingerprint size")
      ->required()
      ->check(CLI::PositiveNumber);
  auto* opt_id = target->add_option("--target-id", target_id,
                                    "external id of a dataset member");
  auto* opt_profile = target->add_option(
      "--profile", target_path, "file with one record: the target's profile");
  auto* opt_all =
      target->add_flag("--all", target_all, "fingerprint every profile");
  opt_id->excludes(opt_profile)->excludes(opt_all);
  opt_profile->excludes(opt_all);

  // general
  CommonFlags general_flags;
  std::size_t general_s = 0;
  std::vector<std::size_t> general_sweep;
  std::uint32_t general_k = 3;
  CLI::App* general = app.add_subcommand(
      "general", "select one fingerprint separating all profiles");
  AddCommonFlags(general, &general_flags);
  auto* general_s_opt =
      general
          ->add_option("--max-size,-s", general_s, "maximum fingerprint size")
          ->check(CLI::PositiveNumber);
  auto* general_sweep_opt =
      general
          ->add_option("--sweep", general_sweep,
                       "comma-separated sizes; emits per-size statistics")
          ->delimiter(',');
  general_s_opt->excludes(general_sweep_opt);
  general->add_option("--k-threshold", general_k,
                      "almost-unique cutoff for sweep statistics")
      ->check(CLI::PositiveNumber);
  std::string general_tsv;
  general->add_option("--tsv", general_tsv,
                      "also write the sweep as a flat table for plotting")
      ->needs(general_sweep_opt);

  // minkey
  CommonFlags minkey_flags;
  CLI::App* minkey = app.add_subcommand(
      "minkey", "smallest greedy item set separating all distinguishable "
                "profiles");
  AddCommonFlags(minkey, &minkey_flags);

  // stats
  CommonFlags stats_flags;
  std::string stats_mode;
  std::size_t stats_s = 0;
  std::vector<std::size_t> stats_sweep;
  std::uint32_t stats_k = 3;
  CLI::App* stats = app.add_subcommand(
      "stats", "anonymity-set statistics for a fingerprinting run");
  AddCommonFlags(stats, &stats_flags);
  stats->add_option("--mode", stats_mode, "targeted or general")
      ->required()
      ->check(CLI::IsMember({"targeted", "general"}));
  auto* stats_s_opt =
      stats->add_option("--max-size,-s", stats_s, "maximum fingerprint size")
          ->check(CLI::PositiveNumber);
  auto* stats_sweep_opt =
      stats
          ->add_option("--sweep", stats_sweep,
                       "comma-separated sizes (general mode only)")
          ->delimiter(',');
  stats_s_opt->excludes(stats_sweep_opt);
  stats->add_option("--k-threshold", stats_k, "almost-unique cutoff")
      ->check(CLI::PositiveNumber);
  std::string stats_tsv;
  stats->add_option("--tsv", stats_tsv,
                    "also write the sweep as a flat table for plotting")
      ->needs(stats_sweep_opt);

  // oracle
  CommonFlags oracle_flags;
  std::string oracle_mode, oracle_id, oracle_path;
  std::size_t oracle_s = 0;
  std::uint64_t oracle_budget = OracleOptions{}.max_subsets;
  CLI::App* oracle = app.add_subcommand(
      "oracle", "exact optimum by exhaustive search (small instances)");
  AddCommonFlags(oracle, &oracle_flags);
  oracle->add_option("--mode", oracle_mode, "targeted or general")
      ->required()
      ->check(CLI::IsMember({"targeted", "general"}));
  oracle->add_option("--max-size,-s", oracle_s, "maximum subset size")
      ->required()
      ->check(CLI::PositiveNumber);
  auto* oracle_id_opt = oracle->add_option("--target-id", oracle_id,
                                           "external id of a dataset member");
  auto* oracle_profile_opt = oracle->add_option(
      "--profile", oracle_path, "file with one record: the target's profile");
  oracle_id_opt->excludes(oracle_profile_opt);
  oracle->add_option("--budget", oracle_budget,
                     "maximum subsets to enumerate")
      ->check(CLI::PositiveNumber);

  // gen
  CommonFlags gen_flags;
  SynthConfig synth;
  std::string gen_universe_out;
  CLI::App* gen = app.add_subcommand("gen", "generate a synthetic dataset");
  AddCommonFlags(gen, &gen_flags, /*dataset_required=*/false);
  gen->add_option("--profiles", synth.num_profiles, "number of profiles")
      ->required()
      ->check(CLI::PositiveNumber);
  gen->add_option("--universe", synth.universe_size, "number of items")
      ->required()
      ->check(CLI::PositiveNumber);
  gen->add_option("--mean-size", synth.mean_profile_size,
                  "mean items per profile")
      ->required();
  gen->add_option("--exponent", synth.popularity_exponent,
                  "item popularity power-law exponent (0 = uniform)");
  gen->add_option("--seed", synth.seed, "generator seed");
  gen->add_option("--emit-universe", gen_universe_out,
                  "also write the universe, one label per line");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (*target) {
    const Dataset dataset = LoadDataset(target_flags.dataset);
    if (target_all) {
      const std::vector<Fingerprint> results =
          TargetedFingerprintBatch(dataset, target_s, target_flags.threads);
      Write(BatchReport(results, dataset, target_s), target_flags, out);
    } else if (!target_id.empty()) {
      const ProfileId p = ResolveTargetId(dataset, target_id);
      const Fingerprint fp = TargetedFingerprint(
          dataset, TargetFromProfile(dataset, p), target_s);
      Write(FingerprintReport(fp, dataset, target_s, target_id), target_flags,
            out);
    } else if (!target_path.empty()) {
      const LoadedTarget loaded = LoadTargetProfile(dataset, target_path);
      const Fingerprint fp =
          TargetedFingerprint(dataset, loaded.profile, target_s);
      Write(FingerprintReport(fp, dataset, target_s, loaded.external_id),
            target_flags, out);
    } else {
      throw UsageError("target requires --target-id, --profile or --all");
    }
    return kExitOk;
  }

  if (*general) {
    const Dataset dataset = LoadDataset(general_flags.dataset);
    AnalysisParams params;
    params.dataset = general_flags.dataset;
    params.k_threshold = general_k;
    if (!general_sweep.empty()) {
      const auto entries = SweepGeneral(dataset, general_sweep, params);
      if (!general_tsv.empty()) {
        WriteTextFile(general_tsv, RenderSweepTable(entries));
      }
      Write(SweepReport(entries), general_flags, out);
    } else if (general_s_opt->count() > 0) {
      const GeneralResult result = GeneralFingerprint(dataset, general_s);
      Write(GeneralReport(result, dataset, general_s), general_flags, out);
    } else {
      throw UsageError("general requires --max-size or --sweep");
    }
    return kExitOk;
  }

  if (*minkey) {
    const Dataset dataset = LoadDataset(minkey_flags.dataset);
    const GeneralResult result = MinimumKey(dataset);
    Write(GeneralReport(result, dataset, dataset.universe_size()),
          minkey_flags, out);
    return kExitOk;
  }

  if (*stats) {
    const Dataset dataset = LoadDataset(stats_flags.dataset);
    AnalysisParams params;
    params.dataset = stats_flags.dataset;
    params.k_threshold = stats_k;
    if (stats_mode == "targeted") {
      if (stats_s_opt->count() == 0) {
        throw UsageError("stats --mode targeted requires --max-size");
      }
      const std::vector<Fingerprint> results =
          TargetedFingerprintBatch(dataset, stats_s, stats_flags.threads);
      params.max_queries = stats_s;
      Write(AnalysisReportJson(
                AnalyzeTargetedBatch(results, dataset.num_profiles(), params)),
            stats_flags, out);
    } else if (!stats_sweep.empty()) {
      const auto entries = SweepGeneral(dataset, stats_sweep, params);
      if (!stats_tsv.empty()) {
        WriteTextFile(stats_tsv, RenderSweepTable(entries));
      }
      Write(SweepReport(entries), stats_flags, out);
    } else if (stats_s_opt->count() > 0) {
      const GeneralResult result = GeneralFingerprint(dataset, stats_s);
      params.max_queries = stats_s;
      Write(AnalysisReportJson(
                AnalyzeGeneral(result, dataset.num_profiles(), params)),
            stats_flags, out);
    } else {
      throw UsageError("stats --mode general requires --max-size or --sweep");
    }
    return kExitOk;
  }

  if (*oracle) {
    const Dataset dataset = LoadDataset(oracle_flags.dataset);
    OracleOptions options;
    options.max_subsets = oracle_budget;
    if (oracle_mode == "targeted") {
      TargetProfile profile;
      if (!oracle_id.empty()) {
        profile =
            TargetFromProfile(dataset, ResolveTargetId(dataset, oracle_id));
      } else if (!oracle_path.empty()) {
        profile = LoadTargetProfile(dataset, oracle_path).profile;
      } else {
        throw UsageError(
            "oracle --mode targeted requires --target-id or --profile");
      }
      const OracleResult result =
          ExactTargeted(dataset, profile, oracle_s, options);
      Write(OracleReport(result, dataset, "targeted", oracle_s), oracle_flags,
            out);
    } else {
      if (!oracle_id.empty() || !oracle_path.empty()) {
        throw UsageError(
            "oracle --mode general does not take a target");
      }
      const OracleResult result = ExactGeneral(dataset, oracle_s, options);
      Write(OracleReport(result, dataset, "general", oracle_s), oracle_flags,
            out);
    }
    return kExitOk;
  }

  if (*gen) {
    const Dataset dataset = GenerateSynthetic(synth);
    if (!gen_universe_out.empty()) SaveUniverse(dataset, gen_universe_out);
    if (gen_flags.output == "-") {
      out << RenderDataset(dataset);
      if (!out) throw DataError("failed while writing to standard output");
    } else {
      SaveDataset(dataset, gen_flags.output);
    }
    return kExitOk;
  }

  throw UsageError("no subcommand given");
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  try {
    return RunChecked(args, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const BudgetError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
}

}  // namespace fpsel::cli
