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

// One-round state machines for BB84, ping-pong and LM05.
//
// An eavesdropper is injected per round as an interposer on the quantum
// channel. A null interposer means Eve is not on the line for that round.

#pragma once

#include <optional>
#include <variant>

#include "qkd/channel.hpp"
#include "qkd/quantum_core.hpp"
#include "qkd/random.hpp"

namespace qkd {

enum class Mode { MM, CM };

std::string_view to_string(Mode m);

struct Eigenstate {
  Basis basis;
  Bit value;

  friend bool operator==(const Eigenstate&, const Eigenstate&) = default;
};

using SentState = std::variant<Eigenstate, BellState>;

struct RoundRecord {
  Protocol protocol = Protocol::BB84;
  Mode mode = Mode::MM;
  std::optional<Bit> alice_bit;
  // BB84: Alice's prepared state. Two-way: what Bob put on the line.
  SentState bob_sent_state = BellState::PsiMinus;
  // Bob's measurement basis (BB84) or Alice's CM basis (LM05).
  std::optional<Basis> measurement_basis;
  // Key bit Bob decodes (MM / sifted BB84 rounds only).
  std::optional<Bit> bob_decoded_bit;
  // Raw control-mode detections.
  std::optional<Bit> alice_cm_outcome;
  std::optional<Bit> bob_cm_outcome;
  std::optional<Bit> eve_decoded_bit;
  bool intercepted = false;
  bool lost = false;
  bool dark_count = false;
  std::optional<bool> cm_error;
  bool sifted = false;
};

// Eve on a one-way BB84 line: takes Alice's qubit, returns what Bob gets.
class Bb84Interposer {
 public:
  virtual ~Bb84Interposer() = default;
  virtual QubitState intercept(const QubitState& from_alice,
                               RandomStream& rng) = 0;
  virtual std::optional<Bit> decoded_bit() const = 0;
};

// Eve on a ping-pong line. Bob's register stays with the round; Eve holds
// its travelling photon and hands Alice the travelling photon of a pair she
// prepared herself.
class PingPongInterposer {
 public:
  virtual ~PingPongInterposer() = default;
  virtual TwoPhotonRegister substitute(RandomStream& rng) = 0;
  // Alice's photon comes back; Eve acts on the stored photon of Bob's pair
  // before releasing it.
  virtual void on_return(const TwoPhotonRegister& from_alice,
                         TwoPhotonRegister& bob_pair, RandomStream& rng) = 0;
  virtual std::optional<Bit> decoded_bit() const = 0;
};

// Eve on an LM05 line.
class Lm05Interposer {
 public:
  virtual ~Lm05Interposer() = default;
  // Bob's qubit goes into storage; the returned qubit is sent to Alice.
  virtual QubitState substitute(const QubitState& from_bob,
                                RandomStream& rng) = 0;
  // Alice's qubit comes back; the returned qubit is forwarded to Bob.
  virtual QubitState on_return(const QubitState& from_alice,
                               RandomStream& rng) = 0;
  virtual std::optional<Bit> decoded_bit() const = 0;
};

RoundRecord bb84_round(const ChannelParams& params, Bb84Interposer* eve,
                       RandomStream& rng);

// alice_bit must be present iff mode == MM; throws std::invalid_argument
// otherwise.
RoundRecord pp_round(Mode mode, std::optional<Bit> alice_bit,
                     const ChannelParams& params, PingPongInterposer* eve,
                     RandomStream& rng);

RoundRecord lm05_round(Mode mode, std::optional<Bit> alice_bit,
                       const ChannelParams& params, Lm05Interposer* eve,
                       RandomStream& rng);

}  // namespace qkd
