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

#include "qkd/adversaries.hpp"

#include <stdexcept>
#include <string>

namespace qkd {

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::NoEve: return "none";
    case Strategy::InterceptResendBB84: return "intercept-resend";
    case Strategy::NguyenPP: return "nguyen";
    case Strategy::LucamariniLM05: return "lucamarini";
  }
  return "?";
}

Strategy parse_strategy(std::string_view name) {
  if (name == "none") return Strategy::NoEve;
  if (name == "intercept-resend") return Strategy::InterceptResendBB84;
  if (name == "nguyen") return Strategy::NguyenPP;
  if (name == "lucamarini") return Strategy::LucamariniLM05;
  throw std::invalid_argument("unknown attack '" + std::string(name) + "'");
}

void AttackConfig::validate() const {
  if (!(presence_q >= 0.0 && presence_q <= 1.0)) {
    throw std::invalid_argument("presence_q must lie in [0, 1]");
  }
}

bool compatible(Strategy s, Protocol p) {
  switch (s) {
    case Strategy::NoEve: return true;
    case Strategy::InterceptResendBB84: return p == Protocol::BB84;
    case Strategy::NguyenPP: return p == Protocol::PP;
    case Strategy::LucamariniLM05: return p == Protocol::LM05;
  }
  return false;
}

bool presence_coin(const AttackConfig& config, RandomStream& rng) {
  const bool hit = rng.bernoulli(config.presence_q);
  return hit && config.strategy != Strategy::NoEve;
}

QubitState InterceptResend::intercept(const QubitState& from_alice,
                                      RandomStream& rng) {
  basis_ = rng.bit() ? Basis::X : Basis::Z;
  const Measurement m = measure(from_alice, *basis_, rng);
  bit_ = m.outcome;
  return m.post;
}

TwoPhotonRegister NguyenAttack::substitute(RandomStream&) {
  return prepare_bell(BellState::PsiMinus);
}

void NguyenAttack::on_return(const TwoPhotonRegister& from_alice,
                             TwoPhotonRegister& bob_pair, RandomStream& rng) {
  bit_ = bell_measure(from_alice, rng) == BellOutcome::Split ? 0 : 1;
  if (*bit_ == 1) apply_hwp0(bob_pair);
}

QubitState LucamariniAttack::substitute(const QubitState& from_bob,
                                        RandomStream& rng) {
  stored_ = from_bob;
  const Basis basis = rng.bit() ? Basis::X : Basis::Z;
  decoy_ = Eigenstate{basis, rng.bit()};
  return QubitState::eigenstate(decoy_->basis, decoy_->value);
}

QubitState LucamariniAttack::on_return(const QubitState& from_alice,
                                       RandomStream& rng) {
  if (!stored_ || !decoy_) {
    throw std::logic_error("LucamariniAttack: on_return before substitute");
  }
  const Bit outcome = measure(from_alice, decoy_->basis, rng).outcome;
  bit_ = outcome == decoy_->value ? 0 : 1;
  return apply_pauli(*bit_ ? PauliOp::iY : PauliOp::I, *stored_);
}

}  // namespace qkd
