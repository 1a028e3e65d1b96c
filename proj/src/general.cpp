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

#include "fpsel/general.hpp"

#include <algorithm>
#include <numeric>

namespace fpsel {
namespace {

// Blocks live as ranges over one shared permutation of profile ids, so the
// working state beyond the dataset stays O(n + |B|) no matter how many
// iterations run. Splits rewrite ranges in place and keep both halves in
// ascending profile order.
struct Range {
  std::uint32_t begin;
  std::uint32_t end;

  std::uint32_t size() const { return end - begin; }
};

}  // namespace

GeneralResult GeneralFingerprint(const Dataset& dataset,
                                 std::size_t max_queries) {
  if (max_queries < 1) {
    throw DataError("fingerprint size must be at least 1");
  }
  const std::size_t num_profiles = dataset.num_profiles();
  const std::size_t universe = dataset.universe_size();

  std::vector<ProfileId> order(num_profiles);
  std::iota(order.begin(), order.end(), 0);
  std::vector<Range> blocks{{0, static_cast<std::uint32_t>(num_profiles)}};
  std::vector<Range> next_blocks;

  std::vector<std::uint32_t> presence(universe, 0);  // t within one block
  std::vector<ItemId> block_items;
  std::vector<std::uint64_t> separation(universe, 0);
  std::vector<char> scored_mark(universe, 0);
  std::vector<ItemId> scored;
  std::vector<char> selected(universe, 0);
  std::vector<char> flagged(num_profiles, 0);
  std::vector<ProfileId> with_buf, without_buf;

  GeneralResult result;
  while (result.queries.size() < max_queries) {
    // Score pass: separation[i] += t * (|S| - t) per block. Singleton blocks
    // contribute nothing and are skipped.
    scored.clear();
    for (const Range& block : blocks) {
      if (block.size() < 2) continue;
      block_items.clear();
      for (std::uint32_t idx = block.begin; idx < block.end; ++idx) {
        for (ItemId i : dataset.profile(order[idx]).items) {
          if (presence[i]++ == 0) block_items.push_back(i);
        }
      }
      for (ItemId i : block_items) {
        const std::uint64_t t = presence[i];
        separation[i] += t * (block.size() - t);
        presence[i] = 0;
        if (!scored_mark[i]) {
          scored_mark[i] = 1;
          scored.push_back(i);
        }
      }
    }

    std::uint64_t best_sep = 0;
    ItemId best_item = 0;
    bool have = false;
    for (ItemId i : scored) {
      if (!selected[i] && separation[i] > 0 &&
          (!have || separation[i] > best_sep ||
           (separation[i] == best_sep && i < best_item))) {
        best_sep = separation[i];
        best_item = i;
        have = true;
      }
    }
    for (ItemId i : scored) {
      separation[i] = 0;
      scored_mark[i] = 0;
    }
    if (!have) {
      result.terminated_early = true;
      break;
    }

    // Split every block by the selected item; members having it go first.
    const std::vector<ProfileId>& posting = dataset.posting(best_item);
    for (ProfileId p : posting) flagged[p] = 1;
    SplitStep step{best_item, {}};
    next_blocks.clear();
    for (const Range& block : blocks) {
      if (block.size() < 2) {
        next_blocks.push_back(block);
        continue;
      }
      with_buf.clear();
      without_buf.clear();
      for (std::uint32_t idx = block.begin; idx < block.end; ++idx) {
        const ProfileId p = order[idx];
        (flagged[p] ? with_buf : without_buf).push_back(p);
      }
      if (with_buf.empty() || without_buf.empty()) {
        next_blocks.push_back(block);
        continue;
      }
      std::copy(with_buf.begin(), with_buf.end(), order.begin() + block.begin);
      const std::uint32_t mid =
          block.begin + static_cast<std::uint32_t>(with_buf.size());
      std::copy(without_buf.begin(), without_buf.end(), order.begin() + mid);
      next_blocks.push_back({block.begin, mid});
      next_blocks.push_back({mid, block.end});
      step.splits.push_back({static_cast<std::uint32_t>(with_buf.size()),
                             static_cast<std::uint32_t>(without_buf.size())});
    }
    for (ProfileId p : posting) flagged[p] = 0;
    blocks.swap(next_blocks);
    result.queries.push_back(best_item);
    result.split_tree.push_back(std::move(step));
  }

  result.partitioning.blocks.reserve(blocks.size());
  for (const Range& block : blocks) {
    result.partitioning.blocks.emplace_back(order.begin() + block.begin,
                                            order.begin() + block.end);
  }
  std::sort(result.partitioning.blocks.begin(),
            result.partitioning.blocks.end(),
            [](const std::vector<ProfileId>& a,
               const std::vector<ProfileId>& b) { return a[0] < b[0]; });
  return result;
}

GeneralResult MinimumKey(const Dataset& dataset) {
  return GeneralFingerprint(dataset,
                            std::max<std::size_t>(1, dataset.universe_size()));
}

std::uint64_t SeparationOf(const Dataset& dataset,
                           const Partitioning& partitioning, ItemId item) {
  ValidatePartitioning(partitioning, dataset.num_profiles());
  dataset.posting(item);  // range check
  std::uint64_t total = 0;
  for (const std::vector<ProfileId>& block : partitioning.blocks) {
    std::uint64_t t = 0;
    for (ProfileId p : block) {
      const Profile& profile = dataset.profile(p);
      t += std::binary_search(profile.items.begin(), profile.items.end(),
                              item);
    }
    total += t * (block.size() - t);
  }
  return total;
}

}  // namespace fpsel
