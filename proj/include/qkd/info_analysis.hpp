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

// Closed-form mutual information and secret fraction for BB84 under
// intercept-resend, and for the two-way protocols under the copy attacks.

#pragma once

namespace qkd {

struct InfoMetrics {
  double D = 0.0;
  double i_ab = 0.0;
  double i_ae = 0.0;
  double r = 0.0;
};

struct MutualInformation {
  double i_ab;
  double i_ae;
};

// h(x) = -x log2 x - (1-x) log2 (1-x), 0 log 0 = 0.
// Throws std::domain_error outside [0, 1].
double binary_entropy(double x);

// i_ab = 1 - h(D), i_ae = h(D). D must lie in [0, 0.5].
MutualInformation bb84_mutual_information(double D);

InfoMetrics bb84_metrics(double D);

inline double secret_fraction(double i_ab, double i_ae) { return i_ab - i_ae; }

// Root of 1 - 2h(D) on (0, 0.5) by bisection.
inline constexpr double kCriticalTolerance = 1e-6;
double critical_disturbance(double tolerance = kCriticalTolerance);

// Message-mode metrics for ping-pong / LM05 when Eve copies a fraction q of
// the rounds: I_AB stays 1 whatever happens in control mode.
InfoMetrics two_way_metrics(double q);

}  // namespace qkd
