// Copyright 2026 The qkdsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qkd/info_analysis.hpp"

#include <cmath>
#include <stdexcept>

namespace qkd {

namespace {

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

void require_range(double v, double lo, double hi, const char* what) {
  if (!(v >= lo && v <= hi)) throw std::domain_error(what);
}

}  // namespace

double binary_entropy(double x) {
  require_range(x, 0.0, 1.0, "binary_entropy: argument outside [0, 1]");
  return 0.0 - xlog2x(x) - xlog2x(1.0 - x);
}

MutualInformation bb84_mutual_information(double D) {
  require_range(D, 0.0, 0.5, "disturbance outside [0, 0.5]");
  const double h = binary_entropy(D);
  return {1.0 - h, h};
}

InfoMetrics bb84_metrics(double D) {
  const auto mi = bb84_mutual_information(D);
  return {D, mi.i_ab, mi.i_ae, secret_fraction(mi.i_ab, mi.i_ae)};
}

double critical_disturbance(double tolerance) {
  auto r = [](double d) { return 1.0 - 2.0 * binary_entropy(d); };
  double lo = 0.0;   // r > 0
  double hi = 0.5;   // r < 0
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (r(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

InfoMetrics two_way_metrics(double q) {
  require_range(q, 0.0, 1.0, "presence fraction outside [0, 1]");
  return {0.0, 1.0, q, secret_fraction(1.0, q)};
}

}  // namespace qkd
