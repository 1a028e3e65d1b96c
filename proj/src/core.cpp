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

#include "fpsel/core.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace fpsel {

const std::vector<ProfileId>& Dataset::posting(ItemId item) const {
  if (item >= postings_.size()) {
    throw DataError("item id " + std::to_string(item) +
                    " out of range (universe size " +
                    std::to_string(postings_.size()) + ")");
  }
  return postings_[item];
}

std::optional<ItemId> Dataset::FindItem(std::string_view label) const {
  auto it = std::lower_bound(item_labels_.begin(), item_labels_.end(), label);
  if (it == item_labels_.end() || *it != label) return std::nullopt;
  return static_cast<ItemId>(it - item_labels_.begin());
}

std::optional<ProfileId> Dataset::FindProfile(
    std::string_view external_id) const {
  auto it = profile_ids_.find(std::string(external_id));
  if (it == profile_ids_.end()) return std::nullopt;
  return it->second;
}

Dataset BuildDataset(const std::vector<Record>& records,
                     const std::vector<std::string>* universe_labels) {
  if (records.empty()) {
    throw DataError("dataset is empty: at least one record is required");
  }

  std::set<std::string> labels;
  for (const Record& record : records) {
    for (const std::string& label : record.labels) {
      if (label.empty()) {
        throw DataError("record '" + record.external_id +
                        "' contains an empty item label");
      }
      labels.insert(label);
    }
  }
  if (universe_labels != nullptr) {
    std::set<std::string> declared(universe_labels->begin(),
                                   universe_labels->end());
    for (const std::string& label : labels) {
      if (declared.count(label) == 0) {
        throw DataError("universe does not contain observed item label '" +
                        label + "'");
      }
    }
    labels = std::move(declared);
    if (labels.count("") != 0) {
      throw DataError("universe contains an empty item label");
    }
  }

  Dataset dataset;
  dataset.item_labels_.assign(labels.begin(), labels.end());
  dataset.postings_.resize(dataset.item_labels_.size());
  dataset.profiles_.reserve(records.size());

  for (const Record& record : records) {
    if (record.external_id.empty()) {
      throw DataError("record with empty external id");
    }
    ProfileId p = static_cast<ProfileId>(dataset.profiles_.size());
    auto [it, inserted] = dataset.profile_ids_.emplace(record.external_id, p);
    if (!inserted) {
      throw DataError("duplicate external id '" + record.external_id + "'");
    }

    Profile profile;
    profile.external_id = record.external_id;
    profile.items.reserve(record.labels.size());
    for (const std::string& label : record.labels) {
      profile.items.push_back(*dataset.FindItem(label));
    }
    std::sort(profile.items.begin(), profile.items.end());
    profile.items.erase(
        std::unique(profile.items.begin(), profile.items.end()),
        profile.items.end());
    for (ItemId item : profile.items) dataset.postings_[item].push_back(p);
    dataset.profiles_.push_back(std::move(profile));
  }
  return dataset;
}

Dataset BuildDataset(const std::vector<Record>& records) {
  return BuildDataset(records, nullptr);
}

Dataset BuildDataset(const std::vector<Record>& records,
                     const std::vector<std::string>& universe_labels) {
  return BuildDataset(records, &universe_labels);
}

std::vector<ProfileId> MatchingProfiles(const Dataset& dataset, ItemId item,
                                        bool value) {
  const std::vector<ProfileId>& with_item = dataset.posting(item);
  if (value) return with_item;

  std::vector<ProfileId> complement;
  complement.reserve(dataset.num_profiles() - with_item.size());
  std::size_t next = 0;
  for (ProfileId p = 0; p < dataset.num_profiles(); ++p) {
    if (next < with_item.size() && with_item[next] == p) {
      ++next;
    } else {
      complement.push_back(p);
    }
  }
  return complement;
}

void ValidatePartitioning(const Partitioning& partitioning,
                          std::size_t num_profiles) {
  std::vector<char> seen(num_profiles, 0);
  std::size_t total = 0;
  for (const std::vector<ProfileId>& block : partitioning.blocks) {
    if (block.empty()) throw DataError("partitioning contains an empty block");
    ProfileId prev = 0;
    bool first = true;
    for (ProfileId p : block) {
      if (p >= num_profiles) {
        throw DataError("partitioning references profile id " +
                        std::to_string(p) + " outside the dataset");
      }
      if (!first && p <= prev) {
        throw DataError("partitioning block is not strictly ascending");
      }
      if (seen[p]) {
        throw DataError("partitioning blocks overlap at profile id " +
                        std::to_string(p));
      }
      seen[p] = 1;
      prev = p;
      first = false;
    }
    total += block.size();
  }
  if (total != num_profiles) {
    throw DataError("partitioning covers " + std::to_string(total) + " of " +
                    std::to_string(num_profiles) + " profiles");
  }
}

std::uint64_t SeparatedPairs(const Partitioning& partitioning,
                             std::size_t num_profiles) {
  auto pairs = [](std::uint64_t k) { return k * (k - 1) / 2; };
  std::uint64_t together = 0;
  for (const std::vector<ProfileId>& block : partitioning.blocks) {
    together += pairs(block.size());
  }
  return pairs(num_profiles) - together;
}

}  // namespace fpsel
