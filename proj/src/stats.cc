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


#include "bookrec/stats.h"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

namespace bookrec {

double StudentTCritical(double alpha, double degrees_of_freedom) {
  const boost::math::students_t_distribution<double> dist(degrees_of_freedom);
  return boost::math::quantile(boost::math::complement(dist, alpha));
}

PairedTTestResult PairedTTestOneTailed(std::span<const double> a, std::span<const double> b,
                                       double alpha) {
  if (a.size() != b.size()) throw std::invalid_argument("paired samples differ in length");
  if (a.size() < 2) throw std::invalid_argument("paired t-test needs at least two pairs");

  const double n = static_cast<double>(a.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] - b[i];
  const double mean = sum / n;
  double squares = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double dev = (a[i] - b[i]) - mean;
    squares += dev * dev;
  }
  const double sd = std::sqrt(squares / (n - 1.0));

  PairedTTestResult result;
  result.mean_difference = mean;
  result.degrees_of_freedom = static_cast<int>(a.size()) - 1;
  result.critical_value = StudentTCritical(alpha, result.degrees_of_freedom);
  if (sd == 0.0) {
    result.degenerate = true;
    if (mean > 0.0) {
      result.t = std::numeric_limits<double>::infinity();
    } else if (mean < 0.0) {
      result.t = -std::numeric_limits<double>::infinity();
    } else {
      result.t = 0.0;
    }
  } else {
    result.t = mean / (sd / std::sqrt(n));
  }
  result.significant = result.t > result.critical_value;
  return result;
}

}  // namespace bookrec
