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

#include "qkd/protocols.hpp"

#include <stdexcept>

namespace qkd {

namespace {

Basis random_basis(RandomStream& rng) {
  return rng.bit() ? Basis::X : Basis::Z;
}

void check_mode_contract(Mode mode, const std::optional<Bit>& alice_bit) {
  if ((mode == Mode::MM) != alice_bit.has_value()) {
    throw std::invalid_argument(
        "alice_bit must be supplied in message mode and only there");
  }
  if (alice_bit && *alice_bit > 1) {
    throw std::invalid_argument("alice_bit must be 0 or 1");
  }
}

// Loss is drawn once per round against the compounded transmittance. A lost
// round may still click through a dark count.
struct Detection {
  bool lost = false;
  bool dark = false;
};

Detection sample_detection(Protocol protocol, const ChannelParams& params,
                           RandomStream& rng) {
  if (sample_loss(protocol, params, rng)) return {};
  if (params.dark_count_prob > 0.0 && rng.bernoulli(params.dark_count_prob)) {
    return {false, true};
  }
  return {true, false};
}

}  // namespace

std::string_view to_string(Mode m) { return m == Mode::MM ? "MM" : "CM"; }

RoundRecord bb84_round(const ChannelParams& params, Bb84Interposer* eve,
                       RandomStream& rng) {
  RoundRecord rec;
  rec.protocol = Protocol::BB84;
  rec.mode = Mode::MM;
  rec.intercepted = eve != nullptr;

  const Detection det = sample_detection(Protocol::BB84, params, rng);
  const Eigenstate sent{random_basis(rng), rng.bit()};
  rec.alice_bit = sent.value;
  rec.bob_sent_state = sent;
  const Basis bob_basis = random_basis(rng);
  rec.measurement_basis = bob_basis;
  if (det.lost) {
    rec.lost = true;
    return rec;
  }

  QubitState line = QubitState::eigenstate(sent.basis, sent.value);
  if (eve) {
    line = eve->intercept(line, rng);
    rec.eve_decoded_bit = eve->decoded_bit();
  }
  Bit outcome = measure(line, bob_basis, rng).outcome;
  if (det.dark) {
    rec.dark_count = true;
    outcome = rng.bit();
  }
  rec.sifted = bob_basis == sent.basis;
  if (rec.sifted) rec.bob_decoded_bit = outcome;
  return rec;
}

RoundRecord pp_round(Mode mode, std::optional<Bit> alice_bit,
                     const ChannelParams& params, PingPongInterposer* eve,
                     RandomStream& rng) {
  check_mode_contract(mode, alice_bit);
  RoundRecord rec;
  rec.protocol = Protocol::PP;
  rec.mode = mode;
  rec.alice_bit = alice_bit;
  rec.bob_sent_state = BellState::PsiMinus;
  rec.intercepted = eve != nullptr;

  const Detection det = sample_detection(Protocol::PP, params, rng);
  if (det.lost) {
    rec.lost = true;
    return rec;
  }

  TwoPhotonRegister bob_pair = prepare_bell(BellState::PsiMinus);
  std::optional<TwoPhotonRegister> eve_pair;
  if (eve) eve_pair = eve->substitute(rng);
  TwoPhotonRegister& at_alice = eve_pair ? *eve_pair : bob_pair;

  if (mode == Mode::MM) {
    if (*alice_bit == 1) apply_hwp0(at_alice);
    if (eve) {
      eve->on_return(at_alice, bob_pair, rng);
      rec.eve_decoded_bit = eve->decoded_bit();
    }
    Bit decoded =
        bell_measure(bob_pair, rng) == BellOutcome::Split ? 0 : 1;
    if (det.dark) {
      rec.dark_count = true;
      decoded = rng.bit();
    }
    rec.bob_decoded_bit = decoded;
    return rec;
  }

  // Control mode: Alice measures the photon she received in Z, Bob measures
  // the photon he kept in Z and expects anticorrelation.
  const PhotonMeasurement alice =
      measure_photon(at_alice, Photon::Travelling, Basis::Z, rng);
  at_alice = TwoPhotonRegister::product(
      alice.remaining, QubitState::eigenstate(Basis::Z, alice.outcome));
  Bit bob_outcome =
      measure_photon(bob_pair, Photon::Kept, Basis::Z, rng).outcome;
  if (det.dark) {
    rec.dark_count = true;
    bob_outcome = rng.bit();
  }
  rec.alice_cm_outcome = alice.outcome;
  rec.bob_cm_outcome = bob_outcome;
  rec.cm_error = alice.outcome == bob_outcome;
  return rec;
}

RoundRecord lm05_round(Mode mode, std::optional<Bit> alice_bit,
                       const ChannelParams& params, Lm05Interposer* eve,
                       RandomStream& rng) {
  check_mode_contract(mode, alice_bit);
  RoundRecord rec;
  rec.protocol = Protocol::LM05;
  rec.mode = mode;
  rec.alice_bit = alice_bit;
  rec.intercepted = eve != nullptr;

  const Detection det = sample_detection(Protocol::LM05, params, rng);
  const Eigenstate prepared{random_basis(rng), rng.bit()};
  rec.bob_sent_state = prepared;
  if (det.lost) {
    rec.lost = true;
    return rec;
  }

  const QubitState from_bob =
      QubitState::eigenstate(prepared.basis, prepared.value);
  QubitState at_alice = eve ? eve->substitute(from_bob, rng) : from_bob;

  if (mode == Mode::MM) {
    const QubitState encoded =
        apply_pauli(*alice_bit ? PauliOp::iY : PauliOp::I, at_alice);
    QubitState at_bob = encoded;
    if (eve) {
      at_bob = eve->on_return(encoded, rng);
      rec.eve_decoded_bit = eve->decoded_bit();
    }
    const Bit outcome = measure(at_bob, prepared.basis, rng).outcome;
    Bit decoded = outcome == prepared.value ? 0 : 1;
    if (det.dark) {
      rec.dark_count = true;
      decoded = rng.bit();
    }
    rec.bob_decoded_bit = decoded;
    return rec;
  }

  // Control mode: Alice measures in a random basis, announces basis and
  // outcome, and returns a fresh qubit in the outcome state.
  const Basis alice_basis = random_basis(rng);
  rec.measurement_basis = alice_basis;
  Bit alice_outcome = measure(at_alice, alice_basis, rng).outcome;
  if (det.dark) {
    rec.dark_count = true;
    alice_outcome = rng.bit();
  }
  QubitState at_bob = QubitState::eigenstate(alice_basis, alice_outcome);
  if (eve) {
    at_bob = eve->on_return(at_bob, rng);
    rec.eve_decoded_bit = eve->decoded_bit();
  }
  rec.alice_cm_outcome = alice_outcome;
  rec.bob_cm_outcome = measure(at_bob, prepared.basis, rng).outcome;
  rec.cm_error =
      alice_basis == prepared.basis && alice_outcome != prepared.value;
  return rec;
}

}  // namespace qkd
