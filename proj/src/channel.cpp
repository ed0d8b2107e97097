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

#include "qkd/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qkd {

std::string_view to_string(Protocol p) {
  switch (p) {
    case Protocol::BB84: return "bb84";
    case Protocol::LM05: return "lm05";
    case Protocol::PP: return "pp";
  }
  return "?";
}

Protocol parse_protocol(std::string_view name) {
  if (name == "bb84") return Protocol::BB84;
  if (name == "lm05") return Protocol::LM05;
  if (name == "pp") return Protocol::PP;
  throw std::invalid_argument("unknown protocol '" + std::string(name) + "'");
}

int segment_passes(Protocol p) {
  switch (p) {
    case Protocol::BB84: return 1;
    case Protocol::LM05: return 2;
    case Protocol::PP: return 4;
  }
  return 1;
}

void ChannelParams::validate() const {
  auto check = [](double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
    }
  };
  check(p_segment, "p_segment");
  check(dark_count_prob, "dark_count_prob");
  check(detector_efficiency, "detector_efficiency");
}

double end_to_end_transmittance(Protocol protocol,
                                const ChannelParams& params) {
  const double p = params.p_segment * params.detector_efficiency;
  double t = 1.0;
  for (int i = 0; i < segment_passes(protocol); ++i) t *= p;
  return t;
}

bool sample_loss(Protocol protocol, const ChannelParams& params,
                 RandomStream& rng) {
  return rng.bernoulli(end_to_end_transmittance(protocol, params));
}

}  // namespace qkd
