// Copyright 2026 The mrcuts Authors
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

#ifndef MRCUTS_SEPARATION_HPP
#define MRCUTS_SEPARATION_HPP

#include <array>
#include <span>
#include <vector>

#include "mrcuts/instance.hpp"
#include "mrcuts/lifted_cuts.hpp"
#include "mrcuts/polymatroid.hpp"

namespace mrcuts {

struct SeparationConfig {
  int budget_primary = 5000;   ///< invocations with the x-descending order
  int budget_secondary = 200;  ///< invocations for each of the other orders
  int max_depth = 10;          ///< separate only at nodes shallower than this
  double tol_violation = kViolationTol;
};

/// The three orderings tried, in order.
enum class OrderRule {
  kByX = 0,            ///< x_i non-increasing
  kByWeightedX = 1,    ///< a_i x_i non-increasing
  kByWeightOverX = 2,  ///< a_i / x_i non-increasing, x_i = 0 first
};

Permutation order_by_rule(OrderRule rule, std::span<const double> x,
                          std::span<const double> a);

/// Invocation counters, one per OrderRule. Owned by a single solve.
struct SeparationState {
  std::array<int, 3> used = {0, 0, 0};
};

struct SeparationOutcome {
  std::vector<LinearCutRow> rows;
  std::vector<CutClass> classes;  ///< parallel to rows
  std::array<int, 3> counts = {0, 0, 0};  ///< indexed by CutClass
};

/// Heuristic separation of the three lifted classes at p. For each ordering
/// with budget left: emit the lifted linear cut if violated; otherwise shrink
/// S from the back, keeping moves that give a violated subset cut, then move
/// elements of S to T from the front, keeping moves that give a violated mixed
/// cut. Nonlinear cuts are emitted as their supporting hyperplane at p.
SeparationOutcome separate(const Point& p, std::span<const double> a,
                           double sigma0, const SeparationConfig& cfg,
                           SeparationState& state);

}  // namespace mrcuts

#endif  // MRCUTS_SEPARATION_HPP
