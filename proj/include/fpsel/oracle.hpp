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

#ifndef FPSEL_ORACLE_HPP_
#define FPSEL_ORACLE_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fpsel/core.hpp"
#include "fpsel/targeted.hpp"

namespace fpsel {

struct OracleOptions {
  // Upper bound on the number of subsets the solver may enumerate. The
  // required count is checked up front and the call rejected if it exceeds
  // this.
  std::uint64_t max_subsets = 10'000'000;
};

// Exact optimum found by exhaustive enumeration. Subsets are visited in
// size-then-lexicographic order and only strict improvements replace the
// incumbent, so best_subset is the canonical optimum of that order.
struct OracleResult {
  std::vector<ItemId> best_subset;  // ascending
  // Targeted: minimum achievable anonymity-set size. General: maximum
  // separated profile pairs.
  std::uint64_t best_objective = 0;
  std::uint64_t subsets_examined = 0;
};

// Minimizes |{p in B : p agrees with target on all items of the subset}|
// over every item subset of size <= max_queries.
OracleResult ExactTargeted(const Dataset& dataset, const TargetProfile& target,
                           std::size_t max_queries,
                           const OracleOptions& options = {});

// Maximizes the number of separated profile pairs over every item subset of
// size <= max_queries.
OracleResult ExactGeneral(const Dataset& dataset, std::size_t max_queries,
                          const OracleOptions& options = {});

}  // namespace fpsel

#endif  // FPSEL_ORACLE_HPP_
