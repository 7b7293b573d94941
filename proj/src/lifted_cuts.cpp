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

#include "mrcuts/lifted_cuts.hpp"

#include <algorithm>
#include <cmath>

namespace mrcuts {

namespace {

constexpr double kDegenerateLhs = 1e-12;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_orders(const std::vector<int>& set, const Permutation& perm,
                  int n) {
  std::vector<int> lhs = set;
  std::vector<int> rhs = perm.order();
  std::sort(lhs.begin(), lhs.end());
  std::sort(rhs.begin(), rhs.end());
  if (lhs != rhs) {
    throw std::invalid_argument("permutation does not order the subset S");
  }
  if (std::adjacent_find(lhs.begin(), lhs.end()) != lhs.end()) {
    throw std::invalid_argument("subset repeats an index");
  }
  for (int i : lhs) {
    if (i < 0 || i >= n) throw std::invalid_argument("subset index out of range");
  }
}

// Fills pi and alpha along `perm` with partial sums starting at `start`.
void lift_along(std::span<const double> a, double start,
                const Permutation& perm, std::vector<double>& pi,
                std::vector<double>& alpha) {
  const auto sums = partial_sums(a, start, perm);
  pi.assign(a.size(), 0.0);
  alpha.assign(a.size(), 0.0);
  for (int k = 0; k < perm.size(); ++k) {
    const int i = perm[k];
    pi[i] = std::sqrt(sums[k + 1]) - std::sqrt(sums[k]);
    alpha[i] = a[i] / std::sqrt(sums[k + 1]);
  }
}

double lifted_tau(const std::vector<double>& pi,
                  const std::vector<double>& alpha, std::span<const double> x,
                  std::span<const double> y) {
  double tau = 0.0;
  for (std::size_t i = 0; i < pi.size(); ++i) {
    if (pi[i] == 0.0 && alpha[i] == 0.0) continue;
    tau += pi[i] * x[i] - alpha[i] * (x[i] - y[i]);
  }
  return tau;
}

double weighted_square(const std::vector<double>& w, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * y[i] * y[i];
  return s;
}

}  // namespace

CutClass cut_class(const Cut& cut) {
  return static_cast<CutClass>(cut.index());
}

double LinearCutRow::bound_on_z(std::span<const double> x,
                                std::span<const double> y) const {
  double v = -rhs;
  for (std::size_t i = 0; i < coef_x.size(); ++i) {
    v += coef_x[i] * x[i] + coef_y[i] * y[i];
  }
  return v;
}

double LinearCutRow::violation(const Point& p) const {
  double v = -coef_z * p.z - rhs;
  for (std::size_t i = 0; i < coef_x.size(); ++i) {
    v += coef_x[i] * p.x[i] + coef_y[i] * p.y[i];
  }
  return v;
}

LiftedLinearCut build_lifted_linear(std::span<const double> a, double sigma0,
                                    const Permutation& perm) {
  if (!perm.is_full(static_cast<int>(a.size()))) {
    throw std::invalid_argument("permutation length does not match a");
  }
  LiftedLinearCut cut;
  cut.sigma0 = sigma0;
  cut.perm = perm;
  lift_along(a, sigma0, perm, cut.pi, cut.alpha);
  return cut;
}

SubsetConeCut build_subset_cone(std::span<const double> a,
                                const std::vector<int>& S,
                                const Permutation& perm) {
  if (S.empty()) throw std::invalid_argument("subset cut needs a non-empty S");
  check_orders(S, perm, static_cast<int>(a.size()));
  SubsetConeCut cut;
  cut.S = S;
  cut.perm = perm;
  lift_along(a, 0.0, perm, cut.pi, cut.alpha);
  cut.rest.assign(a.begin(), a.end());
  for (int i : S) cut.rest[i] = 0.0;
  return cut;
}

MixedConeCut build_mixed_cone(std::span<const double> a,
                              const std::vector<int>& S,
                              const std::vector<int>& T,
                              const Permutation& perm) {
  const int n = static_cast<int>(a.size());
  if (S.empty() && T.empty()) {
    throw std::invalid_argument("mixed cut needs S or T non-empty");
  }
  check_orders(S, perm, n);
  std::vector<char> role(n, 0);
  for (int i : S) role[i] = 1;
  double a_t = 0.0;
  for (int i : T) {
    if (i < 0 || i >= n) throw std::invalid_argument("T index out of range");
    if (role[i] != 0) throw std::invalid_argument("S and T must be disjoint");
    role[i] = 2;
    a_t += a[i];
  }
  MixedConeCut cut;
  cut.S = S;
  cut.T = T;
  cut.perm = perm;
  lift_along(a, a_t, perm, cut.pi, cut.alpha);
  cut.t_weight.assign(n, 0.0);
  cut.rest.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    if (role[i] == 2) cut.t_weight[i] = a[i];
    if (role[i] == 0) cut.rest[i] = a[i];
  }
  return cut;
}

double cut_lhs(const Cut& cut, std::span<const double> x,
               std::span<const double> y) {
  return std::visit(
      Overloaded{
          [&](const LiftedLinearCut& c) {
            return lifted_tau(c.pi, c.alpha, x, y) + std::sqrt(c.sigma0);
          },
          [&](const SubsetConeCut& c) {
            const double tau = std::max(lifted_tau(c.pi, c.alpha, x, y), 0.0);
            return std::sqrt(tau * tau + weighted_square(c.rest, y));
          },
          [&](const MixedConeCut& c) {
            const double nu = std::sqrt(weighted_square(c.t_weight, y));
            const double tau =
                std::max(lifted_tau(c.pi, c.alpha, x, y) + nu, 0.0);
            return std::sqrt(tau * tau + weighted_square(c.rest, y));
          }},
      cut);
}

double violation(const Cut& cut, const Point& p) {
  return cut_lhs(cut, p.x, p.y) - p.z;
}

LinearCutRow to_row(const LiftedLinearCut& cut) {
  LinearCutRow row;
  const std::size_t n = cut.pi.size();
  row.coef_x.resize(n);
  row.coef_y.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    row.coef_x[i] = cut.pi[i] - cut.alpha[i];
    row.coef_y[i] = cut.alpha[i];
  }
  row.coef_z = 1.0;
  row.rhs = -std::sqrt(cut.sigma0);
  return row;
}

namespace {

// Both nonlinear classes are f = sqrt(max(tau,0)^2 + sum_rest a_i y_i^2) with
// tau positively homogeneous, so the supporting hyperplane passes through the
// origin: grad f(p)'(x, y) <= z.
LinearCutRow linearize_cone(const std::vector<double>& pi,
                            const std::vector<double>& alpha,
                            const std::vector<double>& rest,
                            const std::vector<double>* t_weight,
                            const Point& p) {
  const std::size_t n = pi.size();
  const double nu = t_weight ? std::sqrt(weighted_square(*t_weight, p.y)) : 0.0;
  const double tau = std::max(lifted_tau(pi, alpha, p.x, p.y) + nu, 0.0);
  const double f = std::sqrt(tau * tau + weighted_square(rest, p.y));
  if (!(f > kDegenerateLhs)) throw DegeneratePointError();

  LinearCutRow row;
  row.coef_x.assign(n, 0.0);
  row.coef_y.assign(n, 0.0);
  const double scale = tau / f;
  for (std::size_t i = 0; i < n; ++i) {
    row.coef_x[i] = scale * (pi[i] - alpha[i]);
    row.coef_y[i] = scale * alpha[i] + rest[i] * p.y[i] / f;
  }
  // A zero T-block at nu = 0 is a valid subgradient of the norm.
  if (t_weight && nu > 0.0) {
    for (std::size_t i = 0; i < n; ++i) {
      row.coef_y[i] += scale * (*t_weight)[i] * p.y[i] / nu;
    }
  }
  row.coef_z = 1.0;
  row.rhs = 0.0;
  return row;
}

}  // namespace

LinearCutRow gradient_linearize(const Cut& cut, const Point& p) {
  return std::visit(
      Overloaded{
          [](const LiftedLinearCut& c) { return to_row(c); },
          [&](const SubsetConeCut& c) {
            return linearize_cone(c.pi, c.alpha, c.rest, nullptr, p);
          },
          [&](const MixedConeCut& c) {
            return linearize_cone(c.pi, c.alpha, c.rest, &c.t_weight, p);
          }},
      cut);
}

}  // namespace mrcuts
