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

#include "fpsel/report.hpp"

#include <iostream>

#include "fpsel/io.hpp"

namespace fpsel {
namespace {

void CheckDocument(const Json& doc, const std::string& kind) {
  if (!doc.is_object() || !doc.contains("schema_version") ||
      !doc.contains("kind")) {
    throw DataError("report document lacks schema_version/kind");
  }
  if (doc["schema_version"].get<int>() != kReportSchemaVersion) {
    throw DataError("unsupported report schema version");
  }
  if (doc["kind"].get<std::string>() != kind) {
    throw DataError("expected report kind '" + kind + "', found '" +
                    doc["kind"].get<std::string>() + "'");
  }
}

ItemId ResolveItem(const Dataset& dataset, const std::string& label) {
  std::optional<ItemId> item = dataset.FindItem(label);
  if (!item) {
    throw DataError("report references unknown item label '" + label + "'");
  }
  return *item;
}

ProfileId ResolveProfile(const Dataset& dataset, const std::string& id) {
  std::optional<ProfileId> p = dataset.FindProfile(id);
  if (!p) {
    throw DataError("report references unknown external id '" + id + "'");
  }
  return *p;
}

Json HistogramJson(const std::map<std::uint32_t, std::uint64_t>& histogram) {
  Json out = Json::object();
  for (const auto& [key, count] : histogram) {
    out[std::to_string(key)] = count;
  }
  return out;
}

std::map<std::uint32_t, std::uint64_t> HistogramFromJson(const Json& doc) {
  std::map<std::uint32_t, std::uint64_t> histogram;
  for (const auto& [key, count] : doc.items()) {
    histogram[static_cast<std::uint32_t>(std::stoul(key))] =
        count.get<std::uint64_t>();
  }
  return histogram;
}

Json QueriesJson(const std::vector<Query>& queries, const Dataset& dataset) {
  Json out = Json::array();
  for (const Query& q : queries) {
    out.push_back(Json{{"item", dataset.item_label(q.item)},
                       {"value", q.value ? 1 : 0}});
  }
  return out;
}

}  // namespace

Json FingerprintReport(const Fingerprint& fp, const Dataset& dataset,
                       std::size_t max_queries, const std::string& target_id) {
  Json doc;
  doc["schema_version"] = kReportSchemaVersion;
  doc["kind"] = "fingerprint";
  doc["target"] = target_id;
  doc["max_size"] = max_queries;
  doc["queries"] = QueriesJson(fp.queries, dataset);
  doc["terminated_early"] = fp.terminated_early;
  doc["anonymity_set_size"] = fp.anonymity_set.size();
  Json members = Json::array();
  for (ProfileId p : fp.anonymity_set) {
    members.push_back(dataset.profile(p).external_id);
  }
  doc["anonymity_set"] = std::move(members);
  return doc;
}

Json BatchReport(const std::vector<Fingerprint>& results,
                 const Dataset& dataset, std::size_t max_queries) {
  Json doc;
  doc["schema_version"] = kReportSchemaVersion;
  doc["kind"] = "fingerprint_batch";
  doc["max_size"] = max_queries;
  doc["num_profiles"] = dataset.num_profiles();
  Json rows = Json::array();
  for (std::size_t p = 0; p < results.size(); ++p) {
    const Fingerprint& fp = results[p];
    Json row;
    row["target"] = dataset.profile(static_cast<ProfileId>(p)).external_id;
    row["queries"] = QueriesJson(fp.queries, dataset);
    row["terminated_early"] = fp.terminated_early;
    row["anonymity_set_size"] = fp.anonymity_set.size();
    rows.push_back(std::move(row));
  }
  doc["results"] = std::move(rows);
  return doc;
}

Json GeneralReport(const GeneralResult& result, const Dataset& dataset,
                   std::size_t max_queries) {
  Json doc;
  doc["schema_version"] = kReportSchemaVersion;
  doc["kind"] = "general_result";
  doc["max_size"] = max_queries;
  Json queries = Json::array();
  for (ItemId i : result.queries) queries.push_back(dataset.item_label(i));
  doc["queries"] = std::move(queries);
  doc["terminated_early"] = result.terminated_early;
  doc["num_blocks"] = result.partitioning.blocks.size();
  Json tree = Json::array();
  for (const SplitStep& step : result.split_tree) {
    Json splits = Json::array();
    for (const BlockSplit& split : step.splits) {
      splits.push_back(Json::array({split.with_item, split.without_item}));
    }
    tree.push_back(Json{{"item", dataset.item_label(step.item)},
                        {"splits", std::move(splits)}});
  }
  doc["split_tree"] = std::move(tree);
  Json blocks = Json::array();
  for (const std::vector<ProfileId>& block : result.partitioning.blocks) {
    Json members = Json::array();
    for (ProfileId p : block) members.push_back(dataset.profile(p).external_id);
    blocks.push_back(std::move(members));
  }
  doc["blocks"] = std::move(blocks);
  return doc;
}

Json OracleReport(const OracleResult& result, const Dataset& dataset,
                  const std::string& mode, std::size_t max_queries) {
  Json doc;
  doc["schema_version"] = kReportSchemaVersion;
  doc["kind"] = "oracle_result";
  doc["mode"] = mode;
  doc["max_size"] = max_queries;
  Json subset = Json::array();
  for (ItemId i : result.best_subset) subset.push_back(dataset.item_label(i));
  doc["best_subset"] = std::move(subset);
  doc["best_objective"] = result.best_objective;
  doc["subsets_examined"] = result.subsets_examined;
  return doc;
}

Json AnalysisReportJson(const AnalysisReport& report) {
  Json doc;
  doc["schema_version"] = kReportSchemaVersion;
  doc["kind"] = "analysis_report";
  doc["parameters"] = Json{{"mode", report.params.mode},
                           {"max_size", report.params.max_queries},
                           {"dataset", report.params.dataset},
                           {"k_threshold", report.params.k_threshold}};
  doc["num_profiles"] = report.num_profiles;
  doc["set_size_histogram"] = HistogramJson(report.set_size_histogram);
  if (report.params.mode == "targeted") {
    doc["fingerprint_length_histogram"] =
        HistogramJson(report.fingerprint_length_histogram);
  }
  doc["unique_fraction"] = report.unique_fraction;
  doc["almost_unique_fraction"] = report.almost_unique_fraction;
  doc["average_set_size"] = report.average_set_size;
  if (report.params.mode == "general") {
    doc["num_blocks"] = report.num_blocks;
    doc["average_block_size"] = report.average_block_size;
  }
  return doc;
}

Json SweepReport(
    const std::vector<std::pair<std::size_t, AnalysisReport>>& entries) {
  Json doc;
  doc["schema_version"] = kReportSchemaVersion;
  doc["kind"] = "sweep";
  Json rows = Json::array();
  for (const auto& [s, report] : entries) {
    rows.push_back(Json{{"s", s}, {"report", AnalysisReportJson(report)}});
  }
  doc["entries"] = std::move(rows);
  return doc;
}

Fingerprint FingerprintFromReport(const Json& doc, const Dataset& dataset) {
  CheckDocument(doc, "fingerprint");
  Fingerprint fp;
  for (const Json& q : doc["queries"]) {
    fp.queries.push_back({ResolveItem(dataset, q["item"].get<std::string>()),
                          q["value"].get<int>() != 0});
  }
  fp.terminated_early = doc["terminated_early"].get<bool>();
  for (const Json& member : doc["anonymity_set"]) {
    fp.anonymity_set.push_back(
        ResolveProfile(dataset, member.get<std::string>()));
  }
  return fp;
}

GeneralResult GeneralResultFromReport(const Json& doc,
                                      const Dataset& dataset) {
  CheckDocument(doc, "general_result");
  GeneralResult result;
  for (const Json& label : doc["queries"]) {
    result.queries.push_back(ResolveItem(dataset, label.get<std::string>()));
  }
  result.terminated_early = doc["terminated_early"].get<bool>();
  for (const Json& step : doc["split_tree"]) {
    SplitStep s{ResolveItem(dataset, step["item"].get<std::string>()), {}};
    for (const Json& split : step["splits"]) {
      s.splits.push_back(
          {split[0].get<std::uint32_t>(), split[1].get<std::uint32_t>()});
    }
    result.split_tree.push_back(std::move(s));
  }
  for (const Json& block : doc["blocks"]) {
    std::vector<ProfileId> members;
    for (const Json& member : block) {
      members.push_back(ResolveProfile(dataset, member.get<std::string>()));
    }
    result.partitioning.blocks.push_back(std::move(members));
  }
  return result;
}

OracleResult OracleResultFromReport(const Json& doc, const Dataset& dataset) {
  CheckDocument(doc, "oracle_result");
  OracleResult result;
  for (const Json& label : doc["best_subset"]) {
    result.best_subset.push_back(
        ResolveItem(dataset, label.get<std::string>()));
  }
  result.best_objective = doc["best_objective"].get<std::uint64_t>();
  result.subsets_examined = doc["subsets_examined"].get<std::uint64_t>();
  return result;
}

AnalysisReport AnalysisReportFromJson(const Json& doc) {
  CheckDocument(doc, "analysis_report");
  AnalysisReport report;
  const Json& params = doc["parameters"];
  report.params.mode = params["mode"].get<std::string>();
  report.params.max_queries = params["max_size"].get<std::size_t>();
  report.params.dataset = params["dataset"].get<std::string>();
  report.params.k_threshold = params["k_threshold"].get<std::uint32_t>();
  report.num_profiles = doc["num_profiles"].get<std::uint64_t>();
  report.set_size_histogram = HistogramFromJson(doc["set_size_histogram"]);
  if (doc.contains("fingerprint_length_histogram")) {
    report.fingerprint_length_histogram =
        HistogramFromJson(doc["fingerprint_length_histogram"]);
  }
  report.unique_fraction = doc["unique_fraction"].get<double>();
  report.almost_unique_fraction = doc["almost_unique_fraction"].get<double>();
  report.average_set_size = doc["average_set_size"].get<double>();
  if (doc.contains("num_blocks")) {
    report.num_blocks = doc["num_blocks"].get<std::uint64_t>();
    report.average_block_size = doc["average_block_size"].get<double>();
  }
  return report;
}

std::string RenderReport(const Json& doc) { return doc.dump(2) + "\n"; }

std::string RenderSweepTable(
    const std::vector<std::pair<std::size_t, AnalysisReport>>& entries) {
  std::string out =
      "s\tnum_profiles\tnum_blocks\tunique_fraction\t"
      "almost_unique_fraction\taverage_set_size\taverage_block_size\n";
  auto num = [](double value) { return Json(value).dump(); };
  for (const auto& [s, report] : entries) {
    out += std::to_string(s) + "\t" + std::to_string(report.num_profiles) +
           "\t" + std::to_string(report.num_blocks) + "\t" +
           num(report.unique_fraction) + "\t" +
           num(report.almost_unique_fraction) + "\t" +
           num(report.average_set_size) + "\t" +
           num(report.average_block_size) + "\n";
  }
  return out;
}

void EmitReport(const Json& doc, const std::string& path) {
  const std::string rendered = RenderReport(doc);
  if (path == "-") {
    std::cout << rendered;
    if (!std::cout) throw DataError("failed while writing to standard output");
    return;
  }
  WriteTextFile(path, rendered);
}

}  // namespace fpsel
