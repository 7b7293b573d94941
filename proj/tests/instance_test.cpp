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


#include "mrcuts/instance.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <random>

#include "mrcuts/generators.hpp"
#include "support.hpp"

namespace mrcuts {
namespace {

using testing::weights_instance;

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

TEST(Validate, WeightsInstanceIsValid) {
  EXPECT_TRUE(validate(weights_instance()).empty());
}

TEST(Validate, ZeroWeightIsReported) {
  Instance inst = weights_instance();
  inst.a[2] = 0.0;
  EXPECT_EQ(validate(inst), std::vector<std::string>{"a[2] must be positive"});
}

TEST(Validate, CardinalityAboveNIsReported) {
  Instance inst = weights_instance();
  inst.cardinality = 6;
  EXPECT_EQ(validate(inst), std::vector<std::string>{"cardinality out of range"});
  inst.cardinality = 0;
  EXPECT_TRUE(contains(validate(inst), "cardinality out of range"));
  inst.cardinality = 5;
  EXPECT_TRUE(validate(inst).empty());
}

TEST(Validate, ScalarsAndLengths) {
  Instance inst = weights_instance();
  inst.sigma0 = -1.0;
  inst.omega = 0.0;
  inst.d.pop_back();
  const auto v = validate(inst);
  EXPECT_TRUE(contains(v, "sigma0 must be nonnegative"));
  EXPECT_TRUE(contains(v, "omega must be positive"));
  EXPECT_TRUE(contains(v, "d must have n entries"));
}

TEST(Validate, CovarianceChecks) {
  Instance inst = weights_instance();
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(5, 5);
  v(0, 1) = 0.5;
  inst.covariance = v;
  EXPECT_TRUE(contains(validate(inst), "covariance must be symmetric"));
  v(1, 0) = 0.5;
  inst.covariance = v;
  EXPECT_TRUE(validate(inst).empty());
  v = Eigen::MatrixXd::Identity(5, 5);
  v(3, 3) = -1e-3;
  inst.covariance = v;
  EXPECT_TRUE(contains(validate(inst), "covariance must be positive semidefinite"));
  v(3, 3) = 0.0;
  inst.covariance = v;
  EXPECT_TRUE(validate(inst).empty());
}

TEST(Validate, IsPure) {
  Instance inst = weights_instance();
  inst.a[0] = -3.0;
  EXPECT_EQ(validate(inst), validate(inst));
}

TEST(ReadInstance, SampleDocument) {
  const Instance inst = read_instance(R"({
    "n": 5, "a": [22, 18, 21, 19, 17], "c": [0, 0, 0, 0, 0],
    "d": [0, 0, 0, 0, 0], "sigma0": 0, "omega": 1
  })");
  EXPECT_EQ(inst, weights_instance());
  EXPECT_FALSE(inst.cardinality);
  EXPECT_FALSE(inst.correlated());
}

TEST(ReadInstance, EmptyDocumentIsParseError) {
  EXPECT_THROW(read_instance(""), ParseError);
}

TEST(ReadInstance, ErrorsCarryContext) {
  try {
    read_instance("{\n  \"n\": 1,\n  \"a\": [1,\n}");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
  }
  try {
    read_instance(R"({"n": 1, "a": [1], "c": [0], "d": [0], "sigma0": 0})");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("omega"), std::string::npos);
  }
  try {
    read_instance(R"({"n": 1, "a": ["x"], "c": [0], "d": [0], "sigma0": 0, "omega": 1})");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("a[0]"), std::string::npos);
  }
}

TEST(ReadInstance, UnknownKeyRejected) {
  EXPECT_THROW(read_instance(R"({"n": 1, "a": [1], "c": [0], "d": [0], "sigma0": 0,
                                 "omega": 1, "extra": 2})"),
               ParseError);
}

TEST(ReadInstance, InvalidInstanceRaisesValidationError) {
  try {
    read_instance(R"({"n": 2, "a": [1, 0], "c": [0, 0], "d": [0, 0], "sigma0": 0,
                      "omega": 1, "cardinality": 3})");
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.violations().size(), 2u);
  }
}

TEST(ReadInstance, BoundsAreNormalized) {
  const Instance inst = read_instance(R"({"n": 2, "a": [4, 9], "c": [1, 1],
      "d": [-2, -3], "sigma0": 0, "omega": 1, "bounds": [0.5, 2],
      "covariance": [[1, 0.5], [0.5, 1]]})");
  EXPECT_DOUBLE_EQ(inst.a[0], 1.0);
  EXPECT_DOUBLE_EQ(inst.a[1], 36.0);
  EXPECT_DOUBLE_EQ(inst.d[0], -1.0);
  EXPECT_DOUBLE_EQ(inst.d[1], -6.0);
  EXPECT_DOUBLE_EQ((*inst.covariance)(0, 1), 0.5);
  EXPECT_DOUBLE_EQ((*inst.covariance)(1, 1), 4.0);
  EXPECT_DOUBLE_EQ(inst.c[1], 1.0);
}

TEST(NormalizeBounds, PreservesObjectiveUnderScaling) {
  std::mt19937_64 rng(7);
  Instance inst = testing::random_instance(rng, 4);
  const std::vector<double> u = {0.5, 2.0, 1.0, 3.0};
  const Instance scaled = normalize_bounds(inst, u);
  // y = u * y' gives the same risk and return.
  const std::vector<double> yp = {0.3, 0.9, 0.1, 0.6};
  double risk = 0.0, risk_s = 0.0, ret = 0.0, ret_s = 0.0;
  for (int i = 0; i < 4; ++i) {
    const double y = u[i] * yp[i];
    risk += inst.a[i] * y * y;
    ret += inst.d[i] * y;
    risk_s += scaled.a[i] * yp[i] * yp[i];
    ret_s += scaled.d[i] * yp[i];
  }
  EXPECT_NEAR(risk, risk_s, 1e-12);
  EXPECT_NEAR(ret, ret_s, 1e-12);
  EXPECT_THROW(normalize_bounds(inst, {1.0}), std::invalid_argument);
}

TEST(RoundTrip, GeneratedCardinalityInstanceIsBitIdentical) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Instance inst = gen_cardinality(40, 0.2, 0.05, seed);
    const Instance back = read_instance(write_instance(inst));
    EXPECT_EQ(inst, back);
    EXPECT_EQ(write_instance(back), write_instance(inst));
  }
}

TEST(RoundTrip, CorrelatedAndAwkwardReals) {
  Instance inst = gen_correlated(20, 0.4, 10.0, 0.025, 3);
  inst.sigma0 = 0.1 + 0.2;
  inst.d[0] = -1.0 / 3.0;
  inst.d[1] = 5e-324;
  inst.a[2] = 1.7976931348623157e308;
  const Instance back = read_instance(write_instance(inst));
  EXPECT_EQ(inst, back);
}

TEST(RoundTrip, Files) {
  const auto path = std::filesystem::temp_directory_path() / "mrcuts_instance_test.json";
  const Instance inst = gen_fixed_charge(12, 0.1, 9);
  write_instance_file(inst, path.string());
  EXPECT_EQ(read_instance_file(path.string()), inst);
  std::filesystem::remove(path);
  EXPECT_THROW(read_instance_file(path.string()), ParseError);
}

}  // namespace
}  // namespace mrcuts
