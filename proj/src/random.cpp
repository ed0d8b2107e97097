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

#include "qkd/random.hpp"

namespace qkd {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}  // namespace

std::uint64_t mix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

RandomStream RandomStream::for_round(std::uint64_t master_seed,
                                     std::uint64_t round_index) {
  // Two rounds of mixing decorrelate neighbouring indices and seeds.
  return RandomStream(mix64(mix64(master_seed) ^ mix64(round_index * kGolden + 1)));
}

RandomStream::result_type RandomStream::operator()() {
  state_ += kGolden;
  return mix64(state_);
}

double RandomStream::uniform() {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

Bit RandomStream::bit() { return static_cast<Bit>((*this)() >> 63); }

}  // namespace qkd
