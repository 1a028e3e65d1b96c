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

#ifndef FPSEL_TARGETED_HPP_
#define FPSEL_TARGETED_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "fpsel/core.hpp"

namespace fpsel {

// The victim's profile: ascending ids of the items it has; every other
// universe item is implicitly 0. The target need not be a dataset member.
struct TargetProfile {
  std::vector<ItemId> items;
};

// Maps labels to a target profile. Unknown labels are rejected.
TargetProfile TargetFromLabels(const Dataset& dataset,
                               const std::vector<std::string>& labels);

// The profile of a dataset member, viewed as a target.
TargetProfile TargetFromProfile(const Dataset& dataset, ProfileId p);

// Greedy selection of at most `max_queries` items that make `target` as
// unique as possible in `dataset`. Each round picks the item whose queried
// value agrees with the fewest profiles still in the anonymity set (ties to
// the smallest item id), then intersects the set with the matching profiles.
// Stops once the set has at most one member, the budget is spent, or no item
// shrinks the set (the last sets terminated_early).
Fingerprint TargetedFingerprint(const Dataset& dataset,
                                const TargetProfile& target,
                                std::size_t max_queries);

// TargetedFingerprint for every dataset profile as its own target. Targets
// are independent; `num_threads` workers process them concurrently without
// affecting the result.
std::vector<Fingerprint> TargetedFingerprintBatch(const Dataset& dataset,
                                                  std::size_t max_queries,
                                                  unsigned num_threads = 1);

}  // namespace fpsel

#endif  // FPSEL_TARGETED_HPP_
