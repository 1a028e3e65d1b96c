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

#include "fpsel/targeted.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <thread>

namespace fpsel {
namespace {

// Per-worker reusable buffers, all indexed by ItemId and reset through the
// touch lists so a round costs O(items actually seen), not O(n).
struct Scratch {
  explicit Scratch(std::size_t universe_size)
      : count(universe_size, 0),
        in_target(universe_size, 0),
        selected(universe_size, 0) {}

  std::vector<std::uint32_t> count;  // profiles in the anon set having item i
  std::vector<ItemId> touched;       // items with count > 0
  std::vector<char> in_target;
  std::vector<char> selected;
};

// Items ordered by (posting size descending, id ascending). In the first
// round the agreement count of every value-0 query is |B| - |posting|, the
// same for all targets, so the best value-0 candidate is the first entry of
// this order that is not a target item.
std::vector<ItemId> ItemsByPopularity(const Dataset& dataset) {
  std::vector<ItemId> order(dataset.universe_size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](ItemId a, ItemId b) {
    const std::size_t da = dataset.posting(a).size();
    const std::size_t db = dataset.posting(b).size();
    return da != db ? da > db : a < b;
  });
  return order;
}

struct Candidate {
  std::uint64_t agreement = 0;
  ItemId item = 0;
  bool value = false;
  bool valid = false;

  void Offer(std::uint64_t a, ItemId i, bool v) {
    if (!valid || a < agreement || (a == agreement && i < item)) {
      agreement = a;
      item = i;
      value = v;
      valid = true;
    }
  }
};

bool HasItem(const Profile& profile, ItemId item) {
  return std::binary_search(profile.items.begin(), profile.items.end(), item);
}

Fingerprint RunTargeted(const Dataset& dataset,
                        const std::vector<ItemId>& by_popularity,
                        const std::vector<ItemId>& target_items,
                        std::size_t max_queries, Scratch& scratch) {
  const std::size_t num_profiles = dataset.num_profiles();
  Fingerprint fp;

  for (ItemId i : target_items) scratch.in_target[i] = 1;

  // Round 1 over the full dataset: agreement counts are posting sizes, so no
  // accumulation pass is needed.
  Candidate best;
  for (ItemId i : target_items) {
    best.Offer(dataset.posting(i).size(), i, true);
  }
  for (ItemId i : by_popularity) {
    if (scratch.in_target[i]) continue;
    best.Offer(num_profiles - dataset.posting(i).size(), i, false);
    break;  // later entries only agree with more profiles
  }

  std::vector<ProfileId> anon;
  if (!best.valid || best.agreement == num_profiles) {
    // Nothing separates the target from anyone.
    fp.terminated_early = true;
    fp.anonymity_set.resize(num_profiles);
    std::iota(fp.anonymity_set.begin(), fp.anonymity_set.end(), 0);
    for (ItemId i : target_items) scratch.in_target[i] = 0;
    return fp;
  }
  fp.queries.push_back({best.item, best.value});
  scratch.selected[best.item] = 1;
  anon = MatchingProfiles(dataset, best.item, best.value);

  while (fp.queries.size() < max_queries && anon.size() > 1) {
    for (ProfileId p : anon) {
      for (ItemId i : dataset.profile(p).items) {
        if (scratch.count[i]++ == 0) scratch.touched.push_back(i);
      }
    }

    // Candidates that can shrink the set: target items (agreement = count,
    // possibly 0) and non-target items present in the set (agreement =
    // |anon| - count). Unselected items absent from the set and outside the
    // target agree with everyone and never help.
    Candidate pick;
    for (ItemId i : target_items) {
      if (!scratch.selected[i]) pick.Offer(scratch.count[i], i, true);
    }
    for (ItemId i : scratch.touched) {
      if (!scratch.selected[i] && !scratch.in_target[i]) {
        pick.Offer(anon.size() - scratch.count[i], i, false);
      }
    }

    for (ItemId i : scratch.touched) scratch.count[i] = 0;
    scratch.touched.clear();

    if (!pick.valid || pick.agreement == anon.size()) {
      fp.terminated_early = true;
      break;
    }

    std::vector<ProfileId> next;
    next.reserve(pick.agreement);
    for (ProfileId p : anon) {
      if (HasItem(dataset.profile(p), pick.item) == pick.value) {
        next.push_back(p);
      }
    }
    anon = std::move(next);
    fp.queries.push_back({pick.item, pick.value});
    scratch.selected[pick.item] = 1;
  }

  fp.anonymity_set = std::move(anon);
  for (ItemId i : target_items) scratch.in_target[i] = 0;
  for (const Query& q : fp.queries) scratch.selected[q.item] = 0;
  return fp;
}

std::vector<ItemId> NormalizedTargetItems(const Dataset& dataset,
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

TargetProfile TargetFromLabels(const Dataset& dataset,
                               const std::vector<std::string>& labels) {
  TargetProfile target;
  target.items.reserve(labels.size());
  for (const std::string& label : labels) {
    std::optional<ItemId> item = dataset.FindItem(label);
    if (!item) {
      throw DataError("target item label '" + label +
                      "' is not in the dataset universe");
    }
    target.items.push_back(*item);
  }
  std::sort(target.items.begin(), target.items.end());
  target.items.erase(std::unique(target.items.begin(), target.items.end()),
                     target.items.end());
  return target;
}

TargetProfile TargetFromProfile(const Dataset& dataset, ProfileId p) {
  if (p >= dataset.num_profiles()) {
    throw DataError("profile id " + std::to_string(p) + " out of range");
  }
  return TargetProfile{dataset.profile(p).items};
}

Fingerprint TargetedFingerprint(const Dataset& dataset,
                                const TargetProfile& target,
                                std::size_t max_queries) {
  if (max_queries < 1) {
    throw DataError("fingerprint size must be at least 1");
  }
  const std::vector<ItemId> items = NormalizedTargetItems(dataset, target);
  const std::vector<ItemId> by_popularity = ItemsByPopularity(dataset);
  Scratch scratch(dataset.universe_size());
  return RunTargeted(dataset, by_popularity, items, max_queries, scratch);
}

std::vector<Fingerprint> TargetedFingerprintBatch(const Dataset& dataset,
                                                  std::size_t max_queries,
                                                  unsigned num_threads) {
  if (max_queries < 1) {
    throw DataError("fingerprint size must be at least 1");
  }
  const std::vector<ItemId> by_popularity = ItemsByPopularity(dataset);
  const std::size_t num_profiles = dataset.num_profiles();
  std::vector<Fingerprint> results(num_profiles);

  num_threads = std::max(1u, num_threads);
  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    Scratch scratch(dataset.universe_size());
    for (;;) {
      const std::size_t p = cursor.fetch_add(1);
      if (p >= num_profiles) break;
      results[p] =
          RunTargeted(dataset, by_popularity,
                      dataset.profile(static_cast<ProfileId>(p)).items,
                      max_queries, scratch);
    }
  };

  if (num_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(num_threads);
    for (unsigned t = 0; t < num_threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  return results;
}

}  // namespace fpsel
