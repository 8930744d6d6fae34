// Copyright 2026 The rwelect Authors
// SPDX-License-Identifier: Apache-2.0
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

#include "rwelect/probability.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace rwelect {
namespace {

void check_args(double p, std::uint32_t r) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("probability must lie in (0, 1)");
  if (r == 0) throw std::invalid_argument("streak length must be at least 1");
}

}  // namespace

double streak_probability(double p, std::uint32_t r) {
  check_args(p, r);
  double result = 1.0;
  for (std::uint32_t i = 0; i < r; ++i) result *= p;
  return result;
}

double expected_draws_to_streak(double p, std::uint32_t r) {
  check_args(p, r);
  double sum = 0.0;
  double inv = 1.0;
  for (std::uint32_t i = 0; i < r; ++i) {
    inv /= p;
    sum += inv;
  }
  return sum;
}

double prob_streak_within(double p, std::uint32_t r, std::uint64_t n) {
  check_args(p, r);
  // mass[k]: probability of no completed run yet and a current run of k.
  std::vector<double> mass(r, 0.0);
  std::vector<double> next(r, 0.0);
  mass[0] = 1.0;
  double done = 0.0;
  for (std::uint64_t step = 0; step < n; ++step) {
    double reset = 0.0;
    for (std::uint32_t k = 0; k < r; ++k) reset += mass[k] * (1.0 - p);
    next[0] = reset;
    for (std::uint32_t k = 0; k + 1 < r; ++k) next[k + 1] = mass[k] * p;
    done += mass[r - 1] * p;
    mass.swap(next);
  }
  // Summation can overshoot by an ulp when p is close to 1.
  return std::min(done, 1.0);
}

}  // namespace rwelect
