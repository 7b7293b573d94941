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

#ifndef MRCUTS_POLYMATROID_HPP
#define MRCUTS_POLYMATROID_HPP

#include <optional>
#include <span>
#include <vector>

namespace mrcuts {

/// Default minimum violation for a cut to be reported.
inline constexpr double kViolationTol = 1e-6;

/// An ordering of a subset of variable indices (0-based). Over the full index
/// set it is a permutation of {0, ..., n-1}; cut classes restricted to a
/// subset S use an ordering of S.
class Permutation {
 public:
  Permutation() = default;
  /// Throws std::invalid_argument on negative or repeated indices.
  explicit Permutation(std::vector<int> order);

  static Permutation identity(int n);
  /// Builds from 1-based indices, as orders are usually written by hand.
  static Permutation from_one_based(const std::vector<int>& order);

  /// True if this orders exactly {0, ..., n-1}.
  bool is_full(int n) const;

  const std::vector<int>& order() const { return order_; }
  int size() const { return static_cast<int>(order_.size()); }
  int operator[](int k) const { return order_[k]; }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> order_;
};

/// Coefficients of pi'x <= z - sqrt(sigma0), stored by original index.
struct PolymatroidCut {
  std::vector<double> pi;
  double sigma0 = 0.0;
  Permutation perm;

  /// pi'x - z + sqrt(sigma0); positive when (x, z) is cut off.
  double violation(std::span<const double> x, double z) const;
};

/// sigma_(0) = sigma0, sigma_(k) = sigma_(k-1) + a_(k), read along `perm`.
/// `perm` may order a subset of the indices of `a`; the result has
/// perm.size() + 1 entries.
std::vector<double> partial_sums(std::span<const double> a, double sigma0,
                                 const Permutation& perm);

/// pi_(k) = sqrt(sigma_(k)) - sqrt(sigma_(k-1)) for the full permutation.
PolymatroidCut compute_pi(std::span<const double> a, double sigma0,
                          const Permutation& perm);

/// Permutation sorting `x` non-increasing, ties by ascending index.
Permutation descending_order(std::span<const double> x);

/// Most violated polymatroid inequality at (x, z), returned only when its
/// violation exceeds `tol`.
std::optional<PolymatroidCut> greedy_separate_binary(
    std::span<const double> a, double sigma0, std::span<const double> x,
    double z, double tol = kViolationTol);

}  // namespace mrcuts

#endif  // MRCUTS_POLYMATROID_HPP
