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

#ifndef FPSEL_IO_HPP_
#define FPSEL_IO_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fpsel/core.hpp"
#include "fpsel/targeted.hpp"

namespace fpsel {

// Dataset text format: one record per line, `external_id<TAB>l1,l2,...`,
// UTF-8, LF or CRLF. Lines starting with '#' and blank lines are skipped.
// Ids must be nonempty; labels must be nonempty and free of tabs and commas.
// Malformed lines are rejected with their line number.
std::vector<Record> ParseDatasetText(std::istream& in,
                                     const std::string& path_for_errors);

Dataset LoadDataset(const std::string& path);

// Universe file: one item label per line, same comment/blank rules. Must be
// a superset of every label observed in the dataset; labels observed nowhere
// are kept in the universe with empty posting lists.
Dataset LoadDataset(const std::string& path, const std::string& universe_path);

// Dataset rendered in the text format, LF line endings, profiles in id order
// and labels in item-id order. Byte-deterministic. Labels containing tabs,
// commas or newlines cannot be serialized and are rejected.
std::string RenderDataset(const Dataset& dataset);
void SaveDataset(const Dataset& dataset, const std::string& path);

// The universe as one label per line. Together with SaveDataset this
// round-trips datasets whose universe exceeds the observed labels.
std::string RenderUniverse(const Dataset& dataset);
void SaveUniverse(const Dataset& dataset, const std::string& path);

// Writes `content` to `path`; a failed write removes the partial file before
// the error surfaces.
void WriteTextFile(const std::string& path, const std::string& content);

struct LoadedTarget {
  std::string external_id;
  TargetProfile profile;
};

// Reads a target profile as a one-record dataset file. Every label must be
// part of the dataset universe.
LoadedTarget LoadTargetProfile(const Dataset& dataset,
                               const std::string& path);

struct SynthConfig {
  std::uint32_t num_profiles = 0;
  std::uint32_t universe_size = 0;
  double popularity_exponent = 1.0;  // 0 = uniform item popularity
  double mean_profile_size = 0.0;
  std::uint64_t seed = 1;
};

// Synthetic sparse dataset: item popularity follows a truncated power law
// with the given exponent; each profile draws a geometric-distributed number
// of distinct items (mean mean_profile_size) proportionally to popularity.
// Output is a pure function of the config; the generator is pinned to
// mt19937_64 with explicit value mappings, so identical across platforms.
Dataset GenerateSynthetic(const SynthConfig& config);

}  // namespace fpsel

#endif  // FPSEL_IO_HPP_
