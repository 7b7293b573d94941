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


// Shared fixtures and reference computations for the test binaries. Nothing
// here calls into the library's solvers.

#ifndef MRCUTS_TESTS_SUPPORT_HPP
#define MRCUTS_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <span>
#include <vector>

#include "mrcuts/instance.hpp"

namespace mrcuts::testing {

inline const std::vector<double> kWeights = {22, 18, 21, 19, 17};

inline Instance weights_instance() {
  Instance inst;
  inst.n = 5;
  inst.a = kWeights;
  inst.c.assign(5, 0.0);
  inst.d.assign(5, 0.0);
  inst.sigma0 = 0.0;
  inst.omega = 1.0;
  return inst;
}

/// Small instances drawn like the fixed-charge family: a_i integer in
/// [ceil(0.9 * scale), floor(1.2 * scale)], c in [5, 20], d = -c - h.
inline Instance random_instance(std::mt19937_64& rng, int n, double sigma0 = 0.0,
                                int scale = 10) {
  std::uniform_int_distribution<int> da(static_cast<int>(std::ceil(0.9 * scale)),
                                        static_cast<int>(std::floor(1.2 * scale)));
  std::uniform_int_distribution<int> dc(5, 20);
  std::uniform_int_distribution<int> dh(1, 4);
  Instance inst;
  inst.n = n;
  for (int i = 0; i < n; ++i) {
    inst.a.push_back(da(rng));
    inst.c.push_back(dc(rng));
    inst.d.push_back(-inst.c.back() - dh(rng));
  }
  inst.sigma0 = sigma0;
  inst.omega = 1.0;
  return inst;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::vector<int> random_order(std::mt19937_64& rng, int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  std::shuffle(v.begin(), v.end(), rng);
  return v;
}

/// f(S) = sqrt(sigma0 + a(S)) marginal gains along `order`.
inline std::vector<double> reference_pi(std::span<const double> a, double sigma0,
                                        const std::vector<int>& order, double start = 0.0) {
  std::vector<double> pi(a.size(), 0.0);
  double before = sigma0 + start;
  for (int i : order) {
    const double after = before + a[i];
    pi[i] = std::sqrt(after) - std::sqrt(before);
    before = after;
  }
  return pi;
}

/// Projected gradient with backtracking on min c'y + sqrt(offset + sum a y^2)
/// over [0,1]^n. Returns the best objective seen, the origin included.
inline double projected_gradient_box(std::span<const double> c, std::span<const double> a,
                                     double offset, int iters = 100000) {
  const std::size_t n = c.size();
  auto f = [&](const std::vector<double>& v) {
    double q = offset;
    double lin = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      q += a[i] * v[i] * v[i];
      lin += c[i] * v[i];
    }
    return lin + std::sqrt(q);
  };
  std::vector<double> y(n, 0.5), next(n), g(n);
  double fy = f(y);
  double best = std::min(fy, std::sqrt(offset));
  double t = 1.0;
  for (int it = 0; it < iters; ++it) {
    double q = offset;
    for (std::size_t i = 0; i < n; ++i) q += a[i] * y[i] * y[i];
    const double root = std::sqrt(std::max(q, 1e-300));
    for (std::size_t i = 0; i < n; ++i) g[i] = c[i] + a[i] * y[i] / root;
    double f_next = 0.0;
    double moved = 0.0;
    for (int tries = 0; tries < 60; ++tries) {
      double lin = 0.0;
      moved = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        next[i] = std::clamp(y[i] - t * g[i], 0.0, 1.0);
        const double dlt = next[i] - y[i];
        lin += g[i] * dlt;
        moved += dlt * dlt;
      }
      f_next = f(next);
      if (f_next <= fy + lin + moved / (2.0 * t) + 1e-15) break;
      t *= 0.5;
    }
    y.swap(next);
    fy = f_next;
    best = std::min(best, fy);
    if (moved < 1e-30) break;
    t *= 1.5;
  }
  return best;
}

/// The same problem minimized over a uniform grid with `steps` intervals per
/// coordinate.
inline double grid_box(std::span<const double> c, std::span<const double> a, double offset,
                       int steps) {
  const std::size_t n = c.size();
  std::vector<int> idx(n, 0);
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    double q = offset;
    double lin = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = static_cast<double>(idx[i]) / steps;
      q += a[i] * v * v;
      lin += c[i] * v;
    }
    best = std::min(best, lin + std::sqrt(q));
    std::size_t k = 0;
    while (k < n && idx[k] == steps) idx[k++] = 0;
    if (k == n) break;
    ++idx[k];
  }
  return best;
}

}  // namespace mrcuts::testing

#endif  // MRCUTS_TESTS_SUPPORT_HPP
