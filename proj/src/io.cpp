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

#include "fpsel/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

namespace fpsel {
namespace {

bool IsBlank(const std::string& line) {
  return line.find_first_not_of(" \t") == std::string::npos;
}

std::string At(const std::string& path, std::size_t line) {
  return path + ":" + std::to_string(line) + ": ";
}

std::vector<std::string> SplitLabels(const std::string& text,
                                     const std::string& context) {
  std::vector<std::string> labels;
  if (text.empty()) return labels;  // record with no items
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = text.find(',', start);
    const std::string label = text.substr(start, comma - start);
    if (label.empty()) {
      throw DataError(context + "empty item label");
    }
    if (label.find('\t') != std::string::npos) {
      throw DataError(context + "item label contains a tab");
    }
    labels.push_back(label);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return labels;
}

void StripCarriageReturn(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

std::ifstream OpenForRead(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "' for reading");
  return in;
}

void CheckSerializableLabel(const std::string& label) {
  if (label.empty() || label.find_first_of("\t,\r\n") != std::string::npos) {
    throw DataError("item label '" + label +
                    "' cannot be serialized (empty or contains tab, comma or "
                    "newline)");
  }
}

// Fixed-width decimal so lexicographic label order equals numeric order.
std::string PaddedId(char prefix, std::uint32_t value, std::uint32_t limit) {
  int width = 1;
  for (std::uint32_t max = limit - 1; max >= 10; max /= 10) ++width;
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%0*u", width, value);
  return std::string(1, prefix) + buf;
}

// Uniform doubles from raw mt19937_64 output; the standard distributions are
// implementation-defined, these mappings are not.
double UnitOpen(std::mt19937_64& rng) {
  // (0, 1]
  return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

double UnitHalfOpen(std::mt19937_64& rng) {
  // [0, 1)
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::vector<Record> ParseDatasetText(std::istream& in,
                                     const std::string& path_for_errors) {
  std::vector<Record> records;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    StripCarriageReturn(line);
    if (IsBlank(line) || line[0] == '#') continue;

    const std::string context = At(path_for_errors, lineno);
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw DataError(context + "missing tab between id and item list");
    }
    Record record;
    record.external_id = line.substr(0, tab);
    if (record.external_id.empty()) {
      throw DataError(context + "empty external id");
    }
    record.labels = SplitLabels(line.substr(tab + 1), context);
    records.push_back(std::move(record));
  }
  if (in.bad()) {
    throw DataError("I/O error while reading '" + path_for_errors + "'");
  }
  return records;
}

Dataset LoadDataset(const std::string& path) {
  std::ifstream in = OpenForRead(path);
  const std::vector<Record> records = ParseDatasetText(in, path);
  if (records.empty()) {
    throw DataError("'" + path + "' contains no records");
  }
  return BuildDataset(records);
}

Dataset LoadDataset(const std::string& path,
                    const std::string& universe_path) {
  std::ifstream in = OpenForRead(path);
  const std::vector<Record> records = ParseDatasetText(in, path);
  if (records.empty()) {
    throw DataError("'" + path + "' contains no records");
  }

  std::ifstream uin = OpenForRead(universe_path);
  std::vector<std::string> universe;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(uin, line)) {
    ++lineno;
    StripCarriageReturn(line);
    if (IsBlank(line) || line[0] == '#') continue;
    if (line.find_first_of("\t,") != std::string::npos) {
      throw DataError(At(universe_path, lineno) +
                      "item label contains a tab or comma");
    }
    universe.push_back(line);
  }
  if (uin.bad()) {
    throw DataError("I/O error while reading '" + universe_path + "'");
  }
  if (universe.empty()) {
    throw DataError("'" + universe_path + "' contains no item labels");
  }
  return BuildDataset(records, universe);
}

std::string RenderDataset(const Dataset& dataset) {
  for (const std::string& label : dataset.item_labels()) {
    CheckSerializableLabel(label);
  }
  std::string out;
  for (const Profile& profile : dataset.profiles()) {
    if (profile.external_id.find_first_of("\t\r\n") != std::string::npos) {
      throw DataError("external id '" + profile.external_id +
                      "' cannot be serialized (contains tab or newline)");
    }
    out += profile.external_id;
    out += '\t';
    for (std::size_t j = 0; j < profile.items.size(); ++j) {
      if (j > 0) out += ',';
      out += dataset.item_label(profile.items[j]);
    }
    out += '\n';
  }
  return out;
}

std::string RenderUniverse(const Dataset& dataset) {
  std::string out;
  for (const std::string& label : dataset.item_labels()) {
    CheckSerializableLabel(label);
    out += label;
    out += '\n';
  }
  return out;
}

void WriteTextFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) {
    out.close();
    std::error_code ec;
    std::filesystem::remove(path, ec);
    throw DataError("failed while writing '" + path + "'");
  }
}

void SaveDataset(const Dataset& dataset, const std::string& path) {
  WriteTextFile(path, RenderDataset(dataset));
}

void SaveUniverse(const Dataset& dataset, const std::string& path) {
  WriteTextFile(path, RenderUniverse(dataset));
}

LoadedTarget LoadTargetProfile(const Dataset& dataset,
                               const std::string& path) {
  std::ifstream in = OpenForRead(path);
  const std::vector<Record> records = ParseDatasetText(in, path);
  if (records.size() != 1) {
    throw DataError("'" + path + "' must contain exactly one record, found " +
                    std::to_string(records.size()));
  }
  LoadedTarget target;
  target.external_id = records[0].external_id;
  target.profile = TargetFromLabels(dataset, records[0].labels);
  return target;
}

Dataset GenerateSynthetic(const SynthConfig& config) {
  if (config.num_profiles < 1 || config.universe_size < 1) {
    throw DataError("profile and universe counts must be positive");
  }
  if (config.popularity_exponent < 0.0) {
    throw DataError("popularity exponent must be >= 0");
  }
  if (config.mean_profile_size < 1.0) {
    throw DataError("mean profile size must be >= 1");
  }
  if (config.mean_profile_size >= config.universe_size) {
    throw DataError("mean profile size must be smaller than the universe");
  }

  const std::uint32_t n = config.universe_size;
  std::vector<double> cumulative(n);
  double total = 0.0;
  for (std::uint32_t r = 0; r < n; ++r) {
    total += std::pow(static_cast<double>(r) + 1.0,
                      -config.popularity_exponent);
    cumulative[r] = total;
  }

  std::mt19937_64 rng(config.seed);
  const double geometric_p = 1.0 / config.mean_profile_size;
  const double log_q =
      geometric_p < 1.0 ? std::log1p(-geometric_p) : 0.0;

  std::vector<char> taken(n, 0);
  std::vector<Record> records;
  records.reserve(config.num_profiles);
  std::vector<std::uint32_t> drawn;

  for (std::uint32_t p = 0; p < config.num_profiles; ++p) {
    std::uint32_t size = 1;
    if (geometric_p < 1.0) {
      const double u = UnitOpen(rng);
      size = 1 + static_cast<std::uint32_t>(std::min(
                     std::floor(std::log(u) / log_q),
                     static_cast<double>(n - 1)));
    }

    drawn.clear();
    while (drawn.size() < size) {
      const double pos = UnitHalfOpen(rng) * total;
      auto it = std::upper_bound(cumulative.begin(), cumulative.end(), pos);
      std::uint32_t item = static_cast<std::uint32_t>(
          std::min<std::ptrdiff_t>(it - cumulative.begin(), n - 1));
      if (taken[item]) continue;
      taken[item] = 1;
      drawn.push_back(item);
    }
    for (std::uint32_t item : drawn) taken[item] = 0;

    Record record;
    record.external_id = PaddedId('u', p, config.num_profiles);
    record.labels.reserve(drawn.size());
    for (std::uint32_t item : drawn) {
      record.labels.push_back(PaddedId('i', item, n));
    }
    records.push_back(std::move(record));
  }

  std::vector<std::string> universe;
  universe.reserve(n);
  for (std::uint32_t item = 0; item < n; ++item) {
    universe.push_back(PaddedId('i', item, n));
  }
  return BuildDataset(records, universe);
}

}  // namespace fpsel
