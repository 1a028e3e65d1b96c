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

#ifndef FPSEL_ANALYSIS_HPP_
#define FPSEL_ANALYSIS_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fpsel/core.hpp"
#include "fpsel/general.hpp"

namespace fpsel {

struct AnalysisParams {
  std::size_t max_queries = 0;    // the s the run used
  std::string mode;               // "targeted" or "general"
  std::string dataset;            // free-form dataset descriptor
  std::uint32_t k_threshold = 3;  // "almost unique" = set size <= this
};

// Anonymity-set statistics over one fingerprinting run. All counts are per
// profile: a block of size k contributes k to set_size_histogram[k].
struct AnalysisReport {
  AnalysisParams params;
  std::uint64_t num_profiles = 0;
  std::map<std::uint32_t, std::uint64_t> set_size_histogram;
  // Queries issued per profile; populated in targeted mode only (in general
  // mode every profile shares one query list).
  std::map<std::uint32_t, std::uint64_t> fingerprint_length_histogram;
  double unique_fraction = 0.0;         // set size == 1
  double almost_unique_fraction = 0.0;  // set size <= k_threshold
  // Mean set size as experienced per profile; in general mode this is
  // sum(|block|^2) / |B|.
  double average_set_size = 0.0;
  // General mode only: block count and the block-weighted mean |B| / #blocks.
  // Targeted sets overlap, so neither quantity is defined there.
  std::uint64_t num_blocks = 0;
  double average_block_size = 0.0;
};

// Statistics over one fingerprint per dataset profile. Targeted anonymity
// sets are not disjoint; every count is per profile. Rejects a result count
// different from num_profiles.
AnalysisReport AnalyzeTargetedBatch(const std::vector<Fingerprint>& results,
                                    std::size_t num_profiles,
                                    AnalysisParams params);

// Statistics over a general fingerprinting partitioning. Rejects a malformed
// partitioning.
AnalysisReport AnalyzeGeneral(const GeneralResult& result,
                              std::size_t num_profiles, AnalysisParams params);

// Independent GeneralFingerprint runs for each budget in `s_values`
// (positive, ascending), reported per budget; rows plot the set-size and
// uniqueness curves as functions of s.
std::vector<std::pair<std::size_t, AnalysisReport>> SweepGeneral(
    const Dataset& dataset, const std::vector<std::size_t>& s_values,
    AnalysisParams base_params);

}  // namespace fpsel

#endif  // FPSEL_ANALYSIS_HPP_
