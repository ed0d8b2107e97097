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

#include "qkd/quantum_core.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qkd {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

Amplitude dot(const std::array<Amplitude, 2>& bra,
              const std::array<Amplitude, 2>& ket) {
  return std::conj(bra[0]) * ket[0] + std::conj(bra[1]) * ket[1];
}

std::array<Amplitude, 2> as_array(const QubitState& s) {
  return {s.amp0(), s.amp1()};
}

QubitState normalized(std::array<Amplitude, 2> v) {
  double n = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
  return QubitState(v[0] / n, v[1] / n);
}

}  // namespace

std::string_view to_string(Basis b) { return b == Basis::Z ? "Z" : "X"; }

std::string_view to_string(PauliOp op) {
  switch (op) {
    case PauliOp::I: return "I";
    case PauliOp::X: return "X";
    case PauliOp::Z: return "Z";
    case PauliOp::iY: return "iY";
  }
  return "?";
}

std::string_view to_string(BellState s) {
  return s == BellState::PsiMinus ? "psi-" : "psi+";
}

std::string_view to_string(BellOutcome o) {
  return o == BellOutcome::Split ? "split" : "bunch";
}

Matrix2 pauli_matrix(PauliOp op) {
  switch (op) {
    case PauliOp::I: return {{{1.0, 0.0}, {0.0, 1.0}}};
    case PauliOp::X: return {{{0.0, 1.0}, {1.0, 0.0}}};
    case PauliOp::Z: return {{{1.0, 0.0}, {0.0, -1.0}}};
    // iY = Z X
    case PauliOp::iY: return {{{0.0, 1.0}, {-1.0, 0.0}}};
  }
  throw std::invalid_argument("unknown Pauli operation");
}

QubitState::QubitState(Amplitude amp0, Amplitude amp1)
    : amp0_(amp0), amp1_(amp1) {
  if (std::abs(norm() - 1.0) > kTolerance) {
    throw std::invalid_argument("qubit state is not normalized (norm " +
                                std::to_string(norm()) + ")");
  }
}

QubitState QubitState::zero() { return {1.0, 0.0}; }
QubitState QubitState::one() { return {0.0, 1.0}; }
QubitState QubitState::plus() { return {kInvSqrt2, kInvSqrt2}; }
QubitState QubitState::minus() { return {kInvSqrt2, -kInvSqrt2}; }

QubitState QubitState::eigenstate(Basis basis, Bit value) {
  if (basis == Basis::Z) return value ? one() : zero();
  return value ? minus() : plus();
}

double QubitState::norm() const {
  return std::sqrt(std::norm(amp0_) + std::norm(amp1_));
}

Amplitude QubitState::inner(const QubitState& other) const {
  return dot(as_array(*this), as_array(other));
}

bool QubitState::same_ray(const QubitState& other) const {
  return std::abs(std::abs(inner(other)) - 1.0) <= kTolerance;
}

bool QubitState::approx_equal(const QubitState& other, double tol) const {
  return std::abs(amp0_ - other.amp0_) <= tol &&
         std::abs(amp1_ - other.amp1_) <= tol;
}

QubitState apply_pauli(PauliOp op, const QubitState& s) {
  const Matrix2 u = pauli_matrix(op);
  return QubitState(u[0][0] * s.amp0() + u[0][1] * s.amp1(),
                    u[1][0] * s.amp0() + u[1][1] * s.amp1());
}

Measurement measure(const QubitState& s, Basis basis, double draw) {
  const QubitState e0 = QubitState::eigenstate(basis, 0);
  const double p0 = std::norm(e0.inner(s));
  const Bit outcome = draw < p0 ? 0 : 1;
  return {outcome, QubitState::eigenstate(basis, outcome)};
}

BellState hwp0(BellState s) {
  return s == BellState::PsiMinus ? BellState::PsiPlus : BellState::PsiMinus;
}

TwoPhotonRegister TwoPhotonRegister::bell(BellState s) {
  // (|HV> -+ |VH>)/sqrt2, photon 1 first.
  const double sign = s == BellState::PsiMinus ? -1.0 : 1.0;
  return TwoPhotonRegister({0.0, kInvSqrt2, sign * kInvSqrt2, 0.0});
}

TwoPhotonRegister TwoPhotonRegister::product(const QubitState& kept,
                                             const QubitState& travelling) {
  return TwoPhotonRegister({kept.amp0() * travelling.amp0(),
                            kept.amp0() * travelling.amp1(),
                            kept.amp1() * travelling.amp0(),
                            kept.amp1() * travelling.amp1()});
}

double TwoPhotonRegister::norm() const {
  double sum = 0.0;
  for (const auto& a : amps_) sum += std::norm(a);
  return std::sqrt(sum);
}

void TwoPhotonRegister::apply(Photon which, PauliOp op) {
  const Matrix2 u = pauli_matrix(op);
  std::array<Amplitude, 4> out{};
  for (int b1 = 0; b1 < 2; ++b1) {
    for (int b2 = 0; b2 < 2; ++b2) {
      for (int k = 0; k < 2; ++k) {
        if (which == Photon::Kept) {
          out[2 * b1 + b2] += u[b1][k] * amps_[2 * k + b2];
        } else if (which == Photon::Travelling) {
          out[2 * b1 + b2] += u[b2][k] * amps_[2 * b1 + k];
        } else {
          throw std::invalid_argument("invalid photon index");
        }
      }
    }
  }
  amps_ = out;
}

double TwoPhotonRegister::overlap(BellState s) const {
  const auto& bell = TwoPhotonRegister::bell(s).amps_;
  Amplitude acc = 0.0;
  for (std::size_t i = 0; i < 4; ++i) acc += std::conj(bell[i]) * amps_[i];
  return std::norm(acc);
}

void apply_hwp0(TwoPhotonRegister& reg) {
  reg.apply(Photon::Travelling, PauliOp::Z);
}

BellOutcome bell_measure(const TwoPhotonRegister& reg, double draw) {
  const double p_minus = reg.overlap(BellState::PsiMinus);
  const double p_plus = reg.overlap(BellState::PsiPlus);
  if (std::abs(p_minus + p_plus - 1.0) > kTolerance) {
    throw std::domain_error(
        "bell_measure: register has support outside span{psi-, psi+}");
  }
  return draw < p_minus ? BellOutcome::Split : BellOutcome::Bunch;
}

PhotonMeasurement measure_photon(const TwoPhotonRegister& reg, Photon which,
                                 Basis basis, double draw) {
  if (which != Photon::Kept && which != Photon::Travelling) {
    throw std::invalid_argument("measure_photon: invalid photon index");
  }
  const auto& a = reg.amplitudes();
  // Unnormalized state of the other photon given outcome k.
  auto conditional = [&](Bit k) {
    const auto e = as_array(QubitState::eigenstate(basis, k));
    std::array<Amplitude, 2> rest{};
    for (int other = 0; other < 2; ++other) {
      for (int mine = 0; mine < 2; ++mine) {
        const Amplitude amp = which == Photon::Kept ? a[2 * mine + other]
                                                    : a[2 * other + mine];
        rest[other] += std::conj(e[mine]) * amp;
      }
    }
    return rest;
  };
  const auto rest0 = conditional(0);
  const double p0 = std::norm(rest0[0]) + std::norm(rest0[1]);
  Bit outcome = draw < p0 ? 0 : 1;
  auto rest = outcome == 0 ? rest0 : conditional(1);
  if (std::norm(rest[0]) + std::norm(rest[1]) < kTolerance * kTolerance) {
    // Rounding at a probability-one boundary.
    outcome ^= 1;
    rest = conditional(outcome);
  }
  return {outcome, normalized(rest)};
}

}  // namespace qkd
