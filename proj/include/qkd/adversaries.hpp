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

#include <optional>
#include <string_view>

#include "qkd/channel.hpp"
#include "qkd/protocols.hpp"
#include "qkd/random.hpp"

namespace qkd {

enum class Strategy { NoEve, InterceptResendBB84, NguyenPP, LucamariniLM05 };

std::string_view to_string(Strategy s);
// CLI names: "none", "intercept-resend", "nguyen", "lucamarini".
Strategy parse_strategy(std::string_view name);

struct AttackConfig {
  Strategy strategy = Strategy::NoEve;
  // Fraction of rounds Eve is on the line.
  double presence_q = 0.0;

  void validate() const;
};

bool compatible(Strategy s, Protocol p);

// True with probability presence_q. Always false for NoEve.
bool presence_coin(const AttackConfig& config, RandomStream& rng);

/// Measure in a uniformly random basis and resend the outcome eigenstate.
class InterceptResend final : public Bb84Interposer {
 public:
  QubitState intercept(const QubitState& from_alice,
                       RandomStream& rng) override;
  std::optional<Bit> decoded_bit() const override { return bit_; }

  std::optional<Basis> basis() const { return basis_; }

 private:
  std::optional<Basis> basis_;
  std::optional<Bit> bit_;
};

/// Ping-pong copy attack.
///
/// Eve parks the travelling photon of Bob's pair in an ideal memory and sends
/// Alice the travelling photon of her own psi- pair. When Alice's photon comes
/// back she Bell-measures her pair, reads the message (split = 0, bunch = 1),
/// and replays it on Bob's stored photon with a HWP(0) before releasing it.
/// Message-mode statistics between Alice and Bob are untouched.
class NguyenAttack final : public PingPongInterposer {
 public:
  TwoPhotonRegister substitute(RandomStream& rng) override;
  void on_return(const TwoPhotonRegister& from_alice,
                 TwoPhotonRegister& bob_pair, RandomStream& rng) override;
  std::optional<Bit> decoded_bit() const override { return bit_; }

 private:
  std::optional<Bit> bit_;
};

/// LM05 copy attack.
///
/// Eve stores Bob's qubit, sends Alice a decoy in one of |0>,|1>,|+>,|->
/// chosen uniformly, measures the returned decoy in its preparation basis
/// and applies I (no flip) or iY (flip) to the stored qubit. Eve never
/// learns Bob's state; she only needs to know whether Alice flipped.
class LucamariniAttack final : public Lm05Interposer {
 public:
  QubitState substitute(const QubitState& from_bob,
                        RandomStream& rng) override;
  QubitState on_return(const QubitState& from_alice,
                       RandomStream& rng) override;
  std::optional<Bit> decoded_bit() const override { return bit_; }

  std::optional<Eigenstate> decoy() const { return decoy_; }

 private:
  std::optional<QubitState> stored_;
  std::optional<Eigenstate> decoy_;
  std::optional<Bit> bit_;
};

}  // namespace qkd
