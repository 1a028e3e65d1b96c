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

#ifndef FPSEL_GENERAL_HPP_
#define FPSEL_GENERAL_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fpsel/core.hpp"

namespace fpsel {

// Sizes of the two halves a block was split into: members that have the
// selected item and members that do not. Only real splits (both halves
// nonempty) are recorded, so a full run stores at most |B|-1 of these.
struct BlockSplit {
  std::uint32_t with_item;
  std::uint32_t without_item;

  bool operator==(const BlockSplit&) const = default;
};

// One iteration of the splitting tree: the selected item and the blocks it
// actually split.
struct SplitStep {
  ItemId item;
  std::vector<BlockSplit> splits;

  bool operator==(const SplitStep&) const = default;
};

// Output of general fingerprinting: the selected items in order, the final
// anonymity sets, and the per-iteration split record for explainability.
struct GeneralResult {
  std::vector<ItemId> queries;
  Partitioning partitioning;
  std::vector<SplitStep> split_tree;
  bool terminated_early = false;
};

// Greedy selection of at most `max_queries` items that shatter the whole
// dataset into the smallest anonymity sets. Each round scores every item by
// the number of still-together profile pairs it would separate, summed over
// the current blocks (t * (|S| - t) per block), picks the maximum (ties to
// the smallest item id) and splits every block by it. Stops when the budget
// is spent or no item separates anything (sets terminated_early).
GeneralResult GeneralFingerprint(const Dataset& dataset,
                                 std::size_t max_queries);

// GeneralFingerprint with the budget lifted to the universe size: selects
// items until every distinguishable pair is separated. Blocks of size > 1 in
// the result are exact duplicate-row classes.
GeneralResult MinimumKey(const Dataset& dataset);

// Pairs of still-together profiles that `item` would separate, summed over
// blocks: sum of t * (|S| - t) with t the members of S containing the item.
// Pure; used to cross-check the greedy scoring pass.
std::uint64_t SeparationOf(const Dataset& dataset,
                           const Partitioning& partitioning, ItemId item);

}  // namespace fpsel

#endif  // FPSEL_GENERAL_HPP_
