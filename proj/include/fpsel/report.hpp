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

#ifndef FPSEL_REPORT_HPP_
#define FPSEL_REPORT_HPP_

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fpsel/analysis.hpp"
#include "fpsel/core.hpp"
#include "fpsel/general.hpp"
#include "fpsel/oracle.hpp"

namespace fpsel {

// All report documents are JSON with a fixed key order and a schema_version
// field, so identical inputs serialize to identical bytes.
using Json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;

// Items and profiles appear in reports by label / external id, never by
// dense index, so documents survive dataset reordering of the source files.
Json FingerprintReport(const Fingerprint& fp, const Dataset& dataset,
                       std::size_t max_queries, const std::string& target_id);
Json BatchReport(const std::vector<Fingerprint>& results,
                 const Dataset& dataset, std::size_t max_queries);
Json GeneralReport(const GeneralResult& result, const Dataset& dataset,
                   std::size_t max_queries);
Json OracleReport(const OracleResult& result, const Dataset& dataset,
                  const std::string& mode, std::size_t max_queries);
Json AnalysisReportJson(const AnalysisReport& report);
Json SweepReport(
    const std::vector<std::pair<std::size_t, AnalysisReport>>& entries);

// Inverse mappings for the single-result kinds; labels resolve against the
// same dataset the report was produced from.
Fingerprint FingerprintFromReport(const Json& doc, const Dataset& dataset);
GeneralResult GeneralResultFromReport(const Json& doc, const Dataset& dataset);
OracleResult OracleResultFromReport(const Json& doc, const Dataset& dataset);
AnalysisReport AnalysisReportFromJson(const Json& doc);

// Serialized document: pretty-printed JSON plus trailing newline.
std::string RenderReport(const Json& doc);

// Flat tab-separated table of a sweep, one row per budget, for plotting.
std::string RenderSweepTable(
    const std::vector<std::pair<std::size_t, AnalysisReport>>& entries);

// Writes the rendered document to `path`, "-" meaning standard output. On a
// write failure the partial file is removed before the error surfaces.
void EmitReport(const Json& doc, const std::string& path);

}  // namespace fpsel

#endif  // FPSEL_REPORT_HPP_
