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


#include "mrcuts/generators.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace mrcuts {

namespace {

// mt19937_64 with explicit integer and real mappings.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % range;
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return lo + static_cast<std::int64_t>(v % range);
  }

  double real(double lo, double hi) {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

 private:
  std::mt19937_64 engine_;
};

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1)");
  }
}

}  // namespace

double inv_norm_cdf(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("inv_norm_cdf: p must lie in (0, 1)");
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00, 2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }

  // Halley refinement.
  for (int it = 0; it < 2; ++it) {
    const double e = 0.5 * std::erfc(-x / std::numbers::sqrt2) - p;
    const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
    x -= u / (1.0 + 0.5 * x * u);
  }
  return x;
}

std::string to_string(Family family) {
  switch (family) {
    case Family::kFixedCharge:
      return "fixed-charge";
    case Family::kCardinality:
      return "cardinality";
    case Family::kCorrelated:
      return "correlated";
  }
  return "unknown";
}

Family parse_family(std::string_view name) {
  if (name == "fixed-charge") return Family::kFixedCharge;
  if (name == "cardinality") return Family::kCardinality;
  if (name == "correlated") return Family::kCorrelated;
  throw std::invalid_argument("unknown family '" + std::string(name) + "'");
}

Instance gen_fixed_charge(int n, double epsilon, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  check_epsilon(epsilon);
  Rng rng(seed);
  Instance inst;
  inst.n = n;
  inst.a.resize(n);
  inst.c.resize(n);
  inst.d.resize(n);
  const auto a_lo = static_cast<std::int64_t>(std::ceil(0.9 * n - 1e-9));
  const auto a_hi = static_cast<std::int64_t>(std::floor(1.2 * n + 1e-9));
  for (int i = 0; i < n; ++i) inst.a[i] = static_cast<double>(rng.integer(a_lo, a_hi));
  for (int i = 0; i < n; ++i) inst.c[i] = static_cast<double>(rng.integer(5, 20));
  for (int i = 0; i < n; ++i) {
    inst.d[i] = -inst.c[i] - static_cast<double>(rng.integer(1, 4));
  }
  inst.sigma0 = 0.0;
  inst.omega = inv_norm_cdf(1.0 - epsilon);
  return inst;
}

Instance gen_cardinality(int n, double kappa, double epsilon, std::uint64_t seed) {
  if (!(kappa > 0.0 && kappa <= 1.0)) throw std::invalid_argument("kappa must lie in (0, 1]");
  Instance inst = gen_fixed_charge(n, epsilon, seed);
  inst.c.assign(n, 0.0);
  inst.cardinality = std::max(1, static_cast<int>(std::floor(kappa * n + 1e-9)));
  return inst;
}

Instance gen_correlated(int n, double kappa, double rho, double epsilon,
                        std::uint64_t seed) {
  if (n < 10 || n % 10 != 0) throw std::invalid_argument("n must be a positive multiple of 10");
  if (!(rho > 0.0)) throw std::invalid_argument("rho must be positive");
  Instance inst = gen_cardinality(n, kappa, epsilon, seed);
  const int m = n / 10;
  // Factor draws come from a second stream; the diagonal part equals
  // gen_cardinality(n, kappa, epsilon, seed).
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  Eigen::MatrixXd g(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) g(i, j) = rng.real(-1.0, 1.0);
  }
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(n, m);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      const double u = rng.real(0.0, 1.0);
      const double v = rng.real(0.0, 0.1);
      if (u < 0.2) e(i, j) = v;
    }
  }
  const Eigen::MatrixXd ef = e * g;
  Eigen::MatrixXd v = rho * (ef * ef.transpose());
  inst.covariance = 0.5 * (v + v.transpose());
  return inst;
}

std::string instance_file_name(Family family, int n, double param, std::uint64_t seed) {
  std::ostringstream out;
  out << to_string(family) << '_' << n << '_' << param << '_' << seed << ".json";
  return out.str();
}

}  // namespace mrcuts
