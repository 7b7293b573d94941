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

#ifndef MRCUTS_ORACLES_HPP
#define MRCUTS_ORACLES_HPP

#include <span>
#include <vector>

#include "mrcuts/instance.hpp"
#include "mrcuts/lifted_cuts.hpp"

namespace mrcuts {

/// KKT point of  min c~'y + sqrt(offset + sum_i a_i y_i^2)  over [0,1]^n.
struct RelaxationSolution {
  std::vector<double> y_tilde;
  /// Value under the square root at y_tilde, offset included.
  double sigma_tilde = 0.0;
  std::vector<int> fractional;  ///< 0 < y < 1
  std::vector<int> at_one;      ///< y = 1
  double objective = 0.0;
};

/// Builds the KKT point by the sorted sweep: start with every variable at one
/// and move the variable with the largest c~_i/a_i to the fractional set while
/// -c~_p/a_p < 1/sqrt(sigma). O(n) after sorting by c~_i/a_i (ties by index).
/// Requires every c~_i < 0; throws std::invalid_argument otherwise.
RelaxationSolution solve_continuous_relaxation(std::span<const double> c_tilde,
                                               std::span<const double> a,
                                               double sigma_offset = 0.0);

/// Independent exact solver for  min c'y + sqrt(offset + sum a_i y_i^2)  over
/// [0,1]^n with arbitrary signs of c. Parametrizes the optimum by
/// t = sqrt(sigma): y_i(t) = min(1, -c_i t / a_i), and minimizes the
/// resulting piecewise function of t exactly over each breakpoint segment.
/// O(n^2). Returns the minimizer; `objective` holds the optimal value.
RelaxationSolution solve_box_conic_by_breakpoints(std::span<const double> c,
                                                  std::span<const double> a,
                                                  double sigma_offset = 0.0);

/// Optimum of  min c'x + d'y + sqrt(sigma0 + sum a_i y_i^2)
///             s.t. 0 <= y <= x, x binary.
struct OptSolution {
  std::vector<int> x_star;
  std::vector<double> y_star;
  double value = 0.0;
  /// Number of free (not pre-fixed) indices switched on; they form a prefix
  /// of the (c_i + d_i)/a_i ordering.
  int prefix_len = 0;
};

/// Pre-fixes variables by the signs of c, d and c + d, sorts the rest by
/// (c_i + d_i)/a_i and evaluates the n + 1 prefix supports with the sweep
/// solver. O(n^2 log n).
OptSolution solve_opt(std::span<const double> c, std::span<const double> d,
                      std::span<const double> a, double sigma0);

/// Order of the free indices used by solve_opt (ties by index).
std::vector<int> consecutive_ones_order(std::span<const double> c,
                                        std::span<const double> d,
                                        std::span<const double> a);

inline constexpr int kMaxEnumeration = 20;

/// Exhaustive enumeration over x in {0,1}^n with the breakpoint inner solver.
/// Throws std::invalid_argument for n > 20.
OptSolution brute_force_opt(std::span<const double> c,
                            std::span<const double> d,
                            std::span<const double> a, double sigma0);

/// Exhaustive optimum of a diagonal Instance (cardinality and omega honored).
/// Returns the optimal objective c'x + d'y + omega*z. Throws for n > 20 or a
/// correlated instance.
OptSolution brute_force_instance(const Instance& inst);

/// Maximum over the feasible set (binary x, 0 <= y <= x,
/// z = sqrt(sigma0 + sum a_i y_i^2)) of the cut's reduced violation
///
///   tau(x, y) - sqrt(sigma0 + sum_{i in S u T} a_i y_i^2)
///
/// (tau includes sqrt(sigma0) for the linear class). This is the exact
/// maximum violation for the linear class and has the same sign as the
/// maximum violation for the nonlinear classes, so the cut is valid iff the
/// result is <= 0. Throws std::invalid_argument for |S| > 20.
double max_cut_violation(const Cut& cut, std::span<const double> a,
                         double sigma0);

}  // namespace mrcuts

#endif  // MRCUTS_ORACLES_HPP
