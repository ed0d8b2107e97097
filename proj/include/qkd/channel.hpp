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

#pragma once

#include <string_view>

#include "qkd/random.hpp"

namespace qkd {

enum class Protocol { BB84, LM05, PP };

std::string_view to_string(Protocol p);
// Accepts "bb84", "lm05", "pp". Throws std::invalid_argument otherwise.
Protocol parse_protocol(std::string_view name);

// Number of Bob-Alice segments a photon crosses per round.
int segment_passes(Protocol p);

struct ChannelParams {
  // Survival and detection probability over one Bob-Alice segment.
  double p_segment = 1.0;
  double dark_count_prob = 0.0;
  // Multiplies p_segment; per-pass semantics.
  double detector_efficiency = 1.0;

  // Throws std::invalid_argument if any field is outside [0, 1].
  void validate() const;
};

// p, p^2 or p^4 for BB84, LM05 and ping-pong, with p the effective segment
// probability (p_segment * detector_efficiency).
double end_to_end_transmittance(Protocol protocol, const ChannelParams& params);

// Bernoulli draw against end_to_end_transmittance.
bool sample_loss(Protocol protocol, const ChannelParams& params,
                 RandomStream& rng);

}  // namespace qkd
