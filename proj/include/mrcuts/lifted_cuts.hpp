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

#ifndef MRCUTS_LIFTED_CUTS_HPP
#define MRCUTS_LIFTED_CUTS_HPP

#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "mrcuts/instance.hpp"
#include "mrcuts/polymatroid.hpp"

namespace mrcuts {

// All cut coefficients are stored densely by original index, zero off the
// cut's support.

/// pi'x <= z + alpha'(x - y) - sqrt(sigma0), with alpha_(i) = a_(i)/sqrt(sigma_(i)).
struct LiftedLinearCut {
  std::vector<double> pi;
  std::vector<double> alpha;
  double sigma0 = 0.0;
  Permutation perm;
};

/// sqrt(max(tau, 0)^2 + sum_{i not in S} a_i y_i^2) <= z,
/// tau = pi_S'x_S - alpha_S'(x_S - y_S), partial sums starting at zero.
struct SubsetConeCut {
  std::vector<int> S;
  Permutation perm;             ///< ordering of S
  std::vector<double> pi;
  std::vector<double> alpha;
  std::vector<double> rest;     ///< a_i for i not in S, else 0
};

/// sqrt(max(tau, 0)^2 + sum_{i not in S u T} a_i y_i^2) <= z,
/// tau = pi_S'x_S + sqrt(sum_T a_i y_i^2) - alpha_S'(x_S - y_S), partial sums
/// starting at a(T).
struct MixedConeCut {
  std::vector<int> S;
  std::vector<int> T;
  Permutation perm;             ///< ordering of S
  std::vector<double> pi;
  std::vector<double> alpha;
  std::vector<double> t_weight; ///< a_i for i in T, else 0
  std::vector<double> rest;     ///< a_i for i not in S u T, else 0
};

using Cut = std::variant<LiftedLinearCut, SubsetConeCut, MixedConeCut>;

enum class CutClass { kLiftedLinear = 0, kSubsetCone = 1, kMixedCone = 2 };

CutClass cut_class(const Cut& cut);

/// coef_x'x + coef_y'y - coef_z*z <= rhs.
struct LinearCutRow {
  std::vector<double> coef_x;
  std::vector<double> coef_y;
  double coef_z = 1.0;
  double rhs = 0.0;

  /// coef_x'x + coef_y'y - rhs: the lower bound the row places on z.
  double bound_on_z(std::span<const double> x, std::span<const double> y) const;
  /// Row activity minus rhs; positive when violated.
  double violation(const Point& p) const;
};

/// Thrown when a supporting hyperplane cannot be formed at a point where the
/// cut's left-hand side vanishes.
class DegeneratePointError : public std::domain_error {
 public:
  DegeneratePointError()
      : std::domain_error(
            "no supporting hyperplane; use cut at perturbed point") {}
};

LiftedLinearCut build_lifted_linear(std::span<const double> a, double sigma0,
                                    const Permutation& perm);

/// Throws std::invalid_argument if S is empty or perm does not order S.
SubsetConeCut build_subset_cone(std::span<const double> a,
                                const std::vector<int>& S,
                                const Permutation& perm);

/// Throws std::invalid_argument if S and T overlap, both are empty, or perm
/// does not order S. S may be empty when T is not (the cone itself for T = N).
MixedConeCut build_mixed_cone(std::span<const double> a,
                              const std::vector<int>& S,
                              const std::vector<int>& T,
                              const Permutation& perm);

/// The quantity the cut bounds z from below, evaluated at (x, y).
double cut_lhs(const Cut& cut, std::span<const double> x,
               std::span<const double> y);

/// cut_lhs(p) - p.z; positive means violated.
double violation(const Cut& cut, const Point& p);

/// The linear cut as an LP row.
LinearCutRow to_row(const LiftedLinearCut& cut);

/// Supporting hyperplane of the cut's convex left-hand side at p. The row is
/// exact at p and dominated by the nonlinear cut everywhere. Throws
/// DegeneratePointError when the left-hand side is (numerically) zero at p.
LinearCutRow gradient_linearize(const Cut& cut, const Point& p);

}  // namespace mrcuts

#endif  // MRCUTS_LIFTED_CUTS_HPP
