// Copyright 2026 The Bookrec Authors.
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


#ifndef BOOKREC_STATS_H_
#define BOOKREC_STATS_H_

#include <span>

namespace bookrec {

// Upper-tail critical value of Student's t: the x with P(T > x) = alpha.
double StudentTCritical(double alpha, double degrees_of_freedom);

struct PairedTTestResult {
  double mean_difference = 0.0;
  double t = 0.0;  // +-inf when every difference is equal and non-zero, 0 when all are zero
  int degrees_of_freedom = 0;
  double critical_value = 0.0;
  bool significant = false;
  // The differences have zero variance, so t is a limit, not an estimate.
  bool degenerate = false;
};

// One-tailed paired t-test of H1: mean(a - b) > 0, using the sample standard
// deviation of the differences. Throws std::invalid_argument when the sizes
// differ or there are fewer than two pairs.
PairedTTestResult PairedTTestOneTailed(std::span<const double> a, std::span<const double> b,
                                       double alpha = 0.05);

}  // namespace bookrec

#endif  // BOOKREC_STATS_H_
