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

#include "mrcuts/polymatroid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mrcuts {

Permutation::Permutation(std::vector<int> order) : order_(std::move(order)) {
  std::vector<int> sorted = order_;
  std::sort(sorted.begin(), sorted.end());
  if (!sorted.empty() && sorted.front() < 0) {
    throw std::invalid_argument("permutation has a negative index");
  }
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("permutation repeats an index");
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  return Permutation(std::move(order));
}

Permutation Permutation::from_one_based(const std::vector<int>& order) {
  std::vector<int> zero_based;
  zero_based.reserve(order.size());
  for (int i : order) zero_based.push_back(i - 1);
  return Permutation(std::move(zero_based));
}

bool Permutation::is_full(int n) const {
  if (size() != n) return false;
  return std::all_of(order_.begin(), order_.end(),
                     [n](int i) { return i < n; });
}

double PolymatroidCut::violation(std::span<const double> x, double z) const {
  double lhs = 0.0;
  for (std::size_t i = 0; i < pi.size(); ++i) lhs += pi[i] * x[i];
  return lhs - z + std::sqrt(sigma0);
}

std::vector<double> partial_sums(std::span<const double> a, double sigma0,
                                 const Permutation& perm) {
  for (int i : perm.order()) {
    if (i >= static_cast<int>(a.size())) {
      throw std::invalid_argument("permutation index out of range");
    }
  }
  std::vector<double> sums(perm.size() + 1);
  sums[0] = sigma0;
  for (int k = 0; k < perm.size(); ++k) sums[k + 1] = sums[k] + a[perm[k]];
  return sums;
}

PolymatroidCut compute_pi(std::span<const double> a, double sigma0,
                          const Permutation& perm) {
  if (!perm.is_full(static_cast<int>(a.size()))) {
    throw std::invalid_argument("permutation length does not match a");
  }
  const auto sums = partial_sums(a, sigma0, perm);
  PolymatroidCut cut;
  cut.pi.assign(a.size(), 0.0);
  cut.sigma0 = sigma0;
  cut.perm = perm;
  for (int k = 0; k < perm.size(); ++k) {
    cut.pi[perm[k]] = std::sqrt(sums[k + 1]) - std::sqrt(sums[k]);
  }
  return cut;
}

Permutation descending_order(std::span<const double> x) {
  std::vector<int> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return x[i] > x[j]; });
  return Permutation(std::move(order));
}

std::optional<PolymatroidCut> greedy_separate_binary(
    std::span<const double> a, double sigma0, std::span<const double> x,
    double z, double tol) {
  if (x.size() != a.size()) {
    throw std::invalid_argument("point dimension does not match a");
  }
  auto cut = compute_pi(a, sigma0, descending_order(x));
  if (cut.violation(x, z) > tol) return cut;
  return std::nullopt;
}

}  // namespace mrcuts
