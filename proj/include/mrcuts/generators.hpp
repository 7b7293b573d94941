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


#ifndef MRCUTS_GENERATORS_HPP
#define MRCUTS_GENERATORS_HPP

#include <cstdint>
#include <string>
#include <string_view>

#include "mrcuts/instance.hpp"

namespace mrcuts {

/// Standard normal quantile. Throws std::domain_error unless 0 < p < 1.
double inv_norm_cdf(double p);

enum class Family { kFixedCharge, kCardinality, kCorrelated };

std::string to_string(Family family);
/// Accepts "fixed-charge", "cardinality", "correlated".
Family parse_family(std::string_view name);

/// a_i integer uniform on [ceil(0.9n), floor(1.2n)], c_i on [5, 20],
/// d_i = -c_i - h_i with h_i on [1, 4], omega = inv_norm_cdf(1 - epsilon).
Instance gen_fixed_charge(int n, double epsilon, std::uint64_t seed);

/// Same draws as gen_fixed_charge; c is zeroed and the cardinality is
/// floor(kappa * n).
Instance gen_cardinality(int n, double kappa, double epsilon, std::uint64_t seed);

/// gen_cardinality plus covariance rho * E F E' with m = n / 10 factors,
/// F = G G', G_ij uniform on [-1, 1] and E_ij uniform on [0, 0.1] with
/// probability 0.2, else 0. Requires n divisible by 10.
Instance gen_correlated(int n, double kappa, double rho, double epsilon,
                        std::uint64_t seed);

/// "{family}_{n}_{param}_{seed}.json".
std::string instance_file_name(Family family, int n, double param,
                               std::uint64_t seed);

}  // namespace mrcuts

#endif  // MRCUTS_GENERATORS_HPP
