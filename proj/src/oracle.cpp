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

#include "fpsel/oracle.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace fpsel {
namespace {

// Sum of C(n, k) for k = 0..max_k, saturating at cap.
std::uint64_t SubsetsUpTo(std::uint64_t n, std::uint64_t max_k,
                          std::uint64_t cap) {
  unsigned __int128 total = 0;
  unsigned __int128 binom = 1;
  for (std::uint64_t k = 0; k <= max_k; ++k) {
    total += binom;
    if (total >= cap) return cap;
    binom = binom * (n - k) / (k + 1);
  }
  return static_cast<std::uint64_t>(total);
}

void CheckBudget(std::size_t universe, std::size_t max_k,
                 const OracleOptions& options) {
  constexpr std::uint64_t kCountCap = 1'000'000'000'000'000'000ULL;
  const std::uint64_t required = SubsetsUpTo(universe, max_k, kCountCap);
  if (required > options.max_subsets) {
    std::string count = required >= kCountCap
                            ? "more than " + std::to_string(kCountCap)
                            : std::to_string(required);
    throw BudgetError("exhaustive search over subsets of size <= " +
                      std::to_string(max_k) + " of " +
                      std::to_string(universe) + " items requires " + count +
                      " subsets; budget is " +
                      std::to_string(options.max_subsets));
  }
}

// Visits every ascending index combination of size k in lexicographic order.
// Returns false if the visitor stopped the enumeration.
template <typename Visitor>
bool ForEachCombination(std::size_t n, std::size_t k, Visitor&& visit) {
  std::vector<ItemId> subset(k);
  for (std::size_t j = 0; j < k; ++j) subset[j] = static_cast<ItemId>(j);
  for (;;) {
    if (!visit(subset)) return false;
    // advance to the next combination
    std::size_t j = k;
    while (j > 0 && subset[j - 1] == n - k + (j - 1)) --j;
    if (j == 0) return true;
    ++subset[j - 1];
    for (std::size_t m = j; m < k; ++m) subset[m] = subset[m - 1] + 1;
  }
}

bool HasItem(const Profile& profile, ItemId item) {
  return std::binary_search(profile.items.begin(), profile.items.end(), item);
}

std::vector<ItemId> NormalizedTarget(const Dataset& dataset,
                                     const TargetProfile& target) {
  std::vector<ItemId> items = target.items;
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  if (!items.empty() && items.back() >= dataset.universe_size()) {
    throw DataError("target references item id " +
                    std::to_string(items.back()) + " outside the universe");
  }
  return items;
}

}  // namespace

OracleResult ExactTargeted(const Dataset& dataset, const TargetProfile& target,
                           std::size_t max_queries,
                           const OracleOptions& options) {
  if (max_queries < 1) {
    throw DataError("fingerprint size must be at least 1");
  }
  const std::vector<ItemId> target_items = NormalizedTarget(dataset, target);
  const std::size_t universe = dataset.universe_size();
  const std::size_t max_k = std::min(max_queries, universe);
  CheckBudget(universe, max_k, options);

  std::vector<char> target_has(universe, 0);
  for (ItemId i : target_items) target_has[i] = 1;

  // No subset can push the agreement set below the profiles identical to the
  // target; reaching that count ends the search.
  std::uint64_t floor = 0;
  for (const Profile& profile : dataset.profiles()) {
    floor += profile.items == target_items;
  }

  auto agreement = [&](const std::vector<ItemId>& subset) {
    std::uint64_t agree = 0;
    for (const Profile& profile : dataset.profiles()) {
      bool all = true;
      for (ItemId i : subset) {
        if (HasItem(profile, i) != static_cast<bool>(target_has[i])) {
          all = false;
          break;
        }
      }
      agree += all;
    }
    return agree;
  };

  OracleResult result;
  result.best_objective = dataset.num_profiles();  // empty subset
  result.subsets_examined = 1;
  for (std::size_t k = 1; k <= max_k; ++k) {
    if (result.best_objective == floor) break;
    ForEachCombination(universe, k, [&](const std::vector<ItemId>& subset) {
      ++result.subsets_examined;
      const std::uint64_t objective = agreement(subset);
      if (objective < result.best_objective) {
        result.best_objective = objective;
        result.best_subset = subset;
      }
      return result.best_objective != floor;
    });
  }
  return result;
}

OracleResult ExactGeneral(const Dataset& dataset, std::size_t max_queries,
                          const OracleOptions& options) {
  if (max_queries < 1) {
    throw DataError("fingerprint size must be at least 1");
  }
  const std::size_t universe = dataset.universe_size();
  const std::size_t num_profiles = dataset.num_profiles();
  const std::size_t max_k = std::min(max_queries, universe);
  CheckBudget(universe, max_k, options);
  if (max_k > 63) {
    throw BudgetError("subset size " + std::to_string(max_k) +
                      " exceeds the 63-item signature limit");
  }

  auto pairs = [](std::uint64_t c) { return c * (c - 1) / 2; };
  const std::uint64_t all_pairs = pairs(num_profiles);

  // Upper bound: duplicate rows can never be separated, so the best any
  // subset can do is the separation of the full-universe partition.
  std::uint64_t ceiling = all_pairs;
  {
    std::map<std::vector<ItemId>, std::uint64_t> classes;
    for (const Profile& profile : dataset.profiles()) ++classes[profile.items];
    for (const auto& [items, count] : classes) ceiling -= pairs(count);
  }

  auto separated = [&](const std::vector<ItemId>& subset) {
    std::map<std::uint64_t, std::uint64_t> groups;
    for (const Profile& profile : dataset.profiles()) {
      std::uint64_t signature = 0;
      for (std::size_t j = 0; j < subset.size(); ++j) {
        signature |= static_cast<std::uint64_t>(HasItem(profile, subset[j]))
                     << j;
      }
      ++groups[signature];
    }
    std::uint64_t together = 0;
    for (const auto& [signature, count] : groups) together += pairs(count);
    return all_pairs - together;
  };

  OracleResult result;
  result.best_objective = 0;  // empty subset: one block, nothing separated
  result.subsets_examined = 1;
  for (std::size_t k = 1; k <= max_k; ++k) {
    if (result.best_objective == ceiling) break;
    ForEachCombination(universe, k, [&](const std::vector<ItemId>& subset) {
      ++result.subsets_examined;
      const std::uint64_t objective = separated(subset);
      if (objective > result.best_objective) {
        result.best_objective = objective;
        result.best_subset = subset;
      }
      return result.best_objective != ceiling;
    });
  }
  return result;
}

}  // namespace fpsel
