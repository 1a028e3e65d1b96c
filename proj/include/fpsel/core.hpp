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

#ifndef FPSEL_CORE_HPP_
#define FPSEL_CORE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fpsel/errors.hpp"

namespace fpsel {

// Dense index into the item universe. Item ids are assigned by lexicographic
// label order, so they are a pure function of the observed label set.
using ItemId = std::uint32_t;

// Dense index into the profile table, in input record order.
using ProfileId = std::uint32_t;

// One row of the binary matrix: the strictly ascending set of items whose
// value is 1 for this profile.
struct Profile {
  std::string external_id;
  std::vector<ItemId> items;

  bool operator==(const Profile&) const = default;
};

// Raw input record before labels are interned.
struct Record {
  std::string external_id;
  std::vector<std::string> labels;
};

// Immutable profile collection plus the item -> profiles inverted index.
// Safe to share across threads after construction.
class Dataset {
 public:
  std::size_t universe_size() const { return item_labels_.size(); }
  std::size_t num_profiles() const { return profiles_.size(); }

  const std::vector<std::string>& item_labels() const { return item_labels_; }
  const std::string& item_label(ItemId item) const {
    return item_labels_.at(item);
  }

  const std::vector<Profile>& profiles() const { return profiles_; }
  const Profile& profile(ProfileId p) const { return profiles_.at(p); }

  // Sorted list of profiles containing `item`. Throws DataError when the item
  // is outside the universe.
  const std::vector<ProfileId>& posting(ItemId item) const;

  std::optional<ItemId> FindItem(std::string_view label) const;
  std::optional<ProfileId> FindProfile(std::string_view external_id) const;

  bool operator==(const Dataset& other) const {
    return item_labels_ == other.item_labels_ && profiles_ == other.profiles_;
  }

 private:
  friend Dataset BuildDataset(const std::vector<Record>& records,
                              const std::vector<std::string>* universe_labels);

  std::vector<std::string> item_labels_;  // sorted; position defines ItemId
  std::vector<Profile> profiles_;
  std::vector<std::vector<ProfileId>> postings_;
  std::unordered_map<std::string, ProfileId> profile_ids_;
};

// Builds a dataset whose universe is the sorted, deduplicated union of all
// labels in `records`. Duplicate labels within one record collapse; duplicate
// external ids are rejected, as is an empty record list.
Dataset BuildDataset(const std::vector<Record>& records);

// Same, but over an explicitly declared universe. The declared labels must be
// a superset of every observed label; items observed nowhere are retained in
// the universe with empty posting lists.
Dataset BuildDataset(const std::vector<Record>& records,
                     const std::vector<std::string>& universe_labels);

// Profiles whose value at `item` equals `value`, sorted. value=1 is the
// posting list itself; value=0 is its complement, materialized on demand.
std::vector<ProfileId> MatchingProfiles(const Dataset& dataset, ItemId item,
                                        bool value);

// One attribute query of a fingerprint: item and the value asserted for it.
struct Query {
  ItemId item;
  bool value;

  bool operator==(const Query&) const = default;
};

// Result of targeted fingerprinting: the ordered queries, the profiles that
// agree with the target on all of them, and whether the loop stopped because
// no item could shrink the set any further.
struct Fingerprint {
  std::vector<Query> queries;
  std::vector<ProfileId> anonymity_set;  // sorted
  bool terminated_early = false;

  bool operator==(const Fingerprint&) const = default;
};

// Disjoint, collectively exhaustive anonymity sets. Each block is sorted;
// blocks are ordered by their smallest member.
struct Partitioning {
  std::vector<std::vector<ProfileId>> blocks;

  bool operator==(const Partitioning&) const = default;
};

// Throws DataError unless `partitioning` is a valid partition of
// {0..num_profiles-1}: nonempty sorted blocks, no overlap, no gap.
void ValidatePartitioning(const Partitioning& partitioning,
                          std::size_t num_profiles);

// Number of profile pairs split apart by the partitioning:
// C(num_profiles, 2) - sum over blocks of C(|block|, 2).
std::uint64_t SeparatedPairs(const Partitioning& partitioning,
                             std::size_t num_profiles);

}  // namespace fpsel

#endif  // FPSEL_CORE_HPP_
