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

#ifndef MRCUTS_INSTANCE_HPP
#define MRCUTS_INSTANCE_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace mrcuts {

/// Mean-risk problem with indicator variables:
///
///   min  c'x + d'y + omega * z
///   s.t. sqrt(sigma0 + sum_i a_i y_i^2 [+ y'Vy]) <= z
///        0 <= y <= x <= 1,  x binary,  [sum_i x_i <= cardinality]
///
/// Bounds on y are normalized to one; see `normalize_bounds`.
struct Instance {
  int n = 0;
  std::vector<double> a;
  std::vector<double> c;
  std::vector<double> d;
  double sigma0 = 0.0;
  double omega = 1.0;
  std::optional<int> cardinality;
  std::optional<Eigen::MatrixXd> covariance;

  bool correlated() const { return covariance.has_value(); }
};

bool operator==(const Instance& lhs, const Instance& rhs);

/// A (possibly fractional) point (x, y, z[, s]). Feasibility is not checked
/// on construction; separation routinely receives infeasible points.
struct Point {
  std::vector<double> x;
  std::vector<double> y;
  double z = 0.0;
  std::optional<double> s;
};

/// Returns one human-readable entry per violated invariant; empty iff valid.
std::vector<std::string> validate(const Instance& inst);

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown by read_instance when the document parses but the instance fails
/// `validate`. The message joins all violations.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// Parses the JSON instance format. Keys: n, a, c, d, sigma0, omega and the
/// optional cardinality, covariance, bounds. Unknown keys are rejected. When
/// `bounds` is present the instance is rescaled to unit bounds.
Instance read_instance(std::string_view text);
std::string write_instance(const Instance& inst);

Instance read_instance_file(const std::string& path);
void write_instance_file(const Instance& inst, const std::string& path);

/// Rescales y_i = u_i * y'_i so that y' has unit upper bounds: a_i *= u_i^2,
/// d_i *= u_i, V_ij *= u_i u_j.
Instance normalize_bounds(Instance inst, const std::vector<double>& upper);

}  // namespace mrcuts

#endif  // MRCUTS_INSTANCE_HPP
