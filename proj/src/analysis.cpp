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

#include "fpsel/analysis.hpp"

#include <string>

namespace fpsel {
namespace {

void FinalizeFractions(AnalysisReport& report) {
  const double denom = static_cast<double>(report.num_profiles);
  std::uint64_t unique = 0;
  std::uint64_t almost = 0;
  std::uint64_t weighted = 0;
  for (const auto& [size, count] : report.set_size_histogram) {
    if (size == 1) unique += count;
    if (size <= report.params.k_threshold) almost += count;
    weighted += static_cast<std::uint64_t>(size) * count;
  }
  report.unique_fraction = unique / denom;
  report.almost_unique_fraction = almost / denom;
  report.average_set_size = weighted / denom;
}

}  // namespace

AnalysisReport AnalyzeTargetedBatch(const std::vector<Fingerprint>& results,
                                    std::size_t num_profiles,
                                    AnalysisParams params) {
  if (results.size() != num_profiles) {
    throw DataError("expected one fingerprint per profile: got " +
                    std::to_string(results.size()) + " for " +
                    std::to_string(num_profiles) + " profiles");
  }
  AnalysisReport report;
  params.mode = "targeted";
  report.params = std::move(params);
  report.num_profiles = num_profiles;
  for (const Fingerprint& fp : results) {
    ++report.set_size_histogram[static_cast<std::uint32_t>(
        fp.anonymity_set.size())];
    ++report.fingerprint_length_histogram[static_cast<std::uint32_t>(
        fp.queries.size())];
  }
  FinalizeFractions(report);
  return report;
}

AnalysisReport AnalyzeGeneral(const GeneralResult& result,
                              std::size_t num_profiles,
                              AnalysisParams params) {
  ValidatePartitioning(result.partitioning, num_profiles);
  AnalysisReport report;
  params.mode = "general";
  report.params = std::move(params);
  report.num_profiles = num_profiles;
  for (const std::vector<ProfileId>& block : result.partitioning.blocks) {
    // per-profile accounting: a block of size k holds k profiles
    report.set_size_histogram[static_cast<std::uint32_t>(block.size())] +=
        block.size();
  }
  report.num_blocks = result.partitioning.blocks.size();
  report.average_block_size =
      static_cast<double>(num_profiles) / static_cast<double>(report.num_blocks);
  FinalizeFractions(report);
  return report;
}

std::vector<std::pair<std::size_t, AnalysisReport>> SweepGeneral(
    const Dataset& dataset, const std::vector<std::size_t>& s_values,
    AnalysisParams base_params) {
  if (s_values.empty()) {
    throw DataError("sweep requires at least one fingerprint size");
  }
  for (std::size_t j = 0; j < s_values.size(); ++j) {
    if (s_values[j] < 1) {
      throw DataError("sweep sizes must be positive");
    }
    if (j > 0 && s_values[j] < s_values[j - 1]) {
      throw DataError("sweep sizes must be sorted ascending");
    }
  }

  std::vector<std::pair<std::size_t, AnalysisReport>> entries;
  entries.reserve(s_values.size());
  for (std::size_t s : s_values) {
    const GeneralResult result = GeneralFingerprint(dataset, s);
    AnalysisParams params = base_params;
    params.max_queries = s;
    entries.emplace_back(
        s, AnalyzeGeneral(result, dataset.num_profiles(), std::move(params)));
  }
  return entries;
}

}  // namespace fpsel
