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

#include "mrcuts/separation.hpp"

#include <algorithm>
#include <numeric>

namespace mrcuts {

namespace {

// x_i - y_i below this counts as zero when choosing which indices to move.
constexpr double kGapTol = 1e-9;

std::vector<int> restrict_order(const Permutation& perm,
                                const std::vector<char>& in_set) {
  std::vector<int> out;
  for (int i : perm.order()) {
    if (in_set[i]) out.push_back(i);
  }
  return out;
}

void emit(SeparationOutcome& out, LinearCutRow row, CutClass cls) {
  out.rows.push_back(std::move(row));
  out.classes.push_back(cls);
  ++out.counts[static_cast<int>(cls)];
}

int budget_for(OrderRule rule, const SeparationConfig& cfg) {
  return rule == OrderRule::kByX ? cfg.budget_primary : cfg.budget_secondary;
}

}  // namespace

Permutation order_by_rule(OrderRule rule, std::span<const double> x,
                          std::span<const double> a) {
  std::vector<int> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  switch (rule) {
    case OrderRule::kByX:
      std::stable_sort(order.begin(), order.end(),
                       [&](int i, int j) { return x[i] > x[j]; });
      break;
    case OrderRule::kByWeightedX:
      std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
        return a[i] * x[i] > a[j] * x[j];
      });
      break;
    case OrderRule::kByWeightOverX:
      // a_i / 0 is +infinity; those come first, larger a_i first.
      std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
        const bool zi = x[i] <= 0.0;
        const bool zj = x[j] <= 0.0;
        if (zi != zj) return zi;
        if (zi) return a[i] > a[j];
        return a[i] / x[i] > a[j] / x[j];
      });
      break;
  }
  return Permutation(std::move(order));
}

SeparationOutcome separate(const Point& p, std::span<const double> a,
                           double sigma0, const SeparationConfig& cfg,
                           SeparationState& state) {
  SeparationOutcome out;
  const int n = static_cast<int>(a.size());
  const double tol = cfg.tol_violation;

  for (OrderRule rule :
       {OrderRule::kByX, OrderRule::kByWeightedX, OrderRule::kByWeightOverX}) {
    int& used = state.used[static_cast<int>(rule)];
    if (used >= budget_for(rule, cfg)) continue;
    ++used;

    const Permutation perm = order_by_rule(rule, p.x, a);
    const auto linear = build_lifted_linear(a, sigma0, perm);
    if (violation(linear, p) > tol) {
      emit(out, to_row(linear), CutClass::kLiftedLinear);
      continue;
    }

    // Shrink S from the back of the ordering.
    std::vector<char> in_s(n, 1);
    int s_size = n;
    for (int k = n - 1; k >= 0; --k) {
      const int i = perm[k];
      if (p.x[i] - p.y[i] <= kGapTol || s_size == 1) continue;
      in_s[i] = 0;
      const auto s_order = restrict_order(perm, in_s);
      const Cut cut = build_subset_cone(a, s_order, Permutation(s_order));
      if (violation(cut, p) > tol) {
        emit(out, gradient_linearize(cut, p), CutClass::kSubsetCone);
        --s_size;
      } else {
        in_s[i] = 1;
      }
    }

    // Grow T from the front of what remains in S.
    const auto s_scan = restrict_order(perm, in_s);
    std::vector<int> t_set;
    for (int i : s_scan) {
      if (p.x[i] - p.y[i] <= kGapTol || s_size == 1) continue;
      in_s[i] = 0;
      t_set.push_back(i);
      const auto s_order = restrict_order(perm, in_s);
      const Cut cut = build_mixed_cone(a, s_order, t_set, Permutation(s_order));
      if (violation(cut, p) > tol) {
        emit(out, gradient_linearize(cut, p), CutClass::kMixedCone);
        --s_size;
      } else {
        in_s[i] = 1;
        t_set.pop_back();
      }
    }
  }
  return out;
}

}  // namespace mrcuts
