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

// Exact pure-state quantum mechanics for one qubit and one photon pair.
//
// Conventions: |0> = |H>, |1> = |V>, |+> = (|0>+|1>)/sqrt2,
// |-> = (|0>-|1>)/sqrt2. A pair is stored as four amplitudes indexed by
// 2*b1 + b2, where photon 1 stays at the source and photon 2 travels.
// Nothing here owns a generator; randomness comes in as a uniform draw.

#pragma once

#include <array>
#include <complex>
#include <string_view>

#include "qkd/random.hpp"

namespace qkd {

using Amplitude = std::complex<double>;

inline constexpr double kTolerance = 1e-9;

enum class Basis { Z, X };
enum class PauliOp { I, X, Z, iY };
enum class BellState { PsiMinus, PsiPlus };
enum class BellOutcome { Split, Bunch };

std::string_view to_string(Basis b);
std::string_view to_string(PauliOp op);
std::string_view to_string(BellState s);
std::string_view to_string(BellOutcome o);

using Matrix2 = std::array<std::array<Amplitude, 2>, 2>;

Matrix2 pauli_matrix(PauliOp op);

class QubitState {
 public:
  // Throws std::invalid_argument unless |a0|^2 + |a1|^2 = 1 within
  // kTolerance.
  QubitState(Amplitude amp0, Amplitude amp1);

  static QubitState zero();
  static QubitState one();
  static QubitState plus();
  static QubitState minus();
  // Eigenstate of `basis` labelled by `value`: Z -> |0>,|1>; X -> |+>,|->.
  static QubitState eigenstate(Basis basis, Bit value);

  Amplitude amp0() const { return amp0_; }
  Amplitude amp1() const { return amp1_; }

  double norm() const;
  // <this|other>
  Amplitude inner(const QubitState& other) const;
  // Physical equality: |<this|other>| = 1 within kTolerance.
  bool same_ray(const QubitState& other) const;
  // Amplitude-wise equality, global phase included.
  bool approx_equal(const QubitState& other, double tol = kTolerance) const;

 private:
  Amplitude amp0_;
  Amplitude amp1_;
};

struct Measurement {
  Bit outcome;
  QubitState post;
};

QubitState apply_pauli(PauliOp op, const QubitState& s);

// Projective measurement in `basis`. Outcome 0 iff draw < |<e0|s>|^2.
Measurement measure(const QubitState& s, Basis basis, double draw);
inline Measurement measure(const QubitState& s, Basis basis,
                           RandomStream& rng) {
  return measure(s, basis, rng.uniform());
}

BellState hwp0(BellState s);

enum class Photon { Kept = 1, Travelling = 2 };

class TwoPhotonRegister {
 public:
  static TwoPhotonRegister bell(BellState s);
  static TwoPhotonRegister product(const QubitState& kept,
                                   const QubitState& travelling);

  const std::array<Amplitude, 4>& amplitudes() const { return amps_; }
  double norm() const;

  void apply(Photon which, PauliOp op);
  // Probability mass on a Bell state, |<Psi|register>|^2.
  double overlap(BellState s) const;

 private:
  explicit TwoPhotonRegister(const std::array<Amplitude, 4>& amps)
      : amps_(amps) {}

  std::array<Amplitude, 4> amps_;
};

inline TwoPhotonRegister prepare_bell(BellState s) {
  return TwoPhotonRegister::bell(s);
}

// HWP(0 deg) on the travelling photon: flips the sign of its |V> part.
void apply_hwp0(TwoPhotonRegister& reg);

// Beam-splitter discrimination of Psi-/Psi+. Born-rule selection on the two
// projections; throws std::domain_error when the register has weight
// outside span{Psi-, Psi+}.
BellOutcome bell_measure(const TwoPhotonRegister& reg, double draw);
inline BellOutcome bell_measure(const TwoPhotonRegister& reg,
                                RandomStream& rng) {
  return bell_measure(reg, rng.uniform());
}

struct PhotonMeasurement {
  Bit outcome;
  QubitState remaining;
};

// Local projective measurement of one photon; the other collapses to its
// conditional state. Throws std::invalid_argument for an unknown photon.
PhotonMeasurement measure_photon(const TwoPhotonRegister& reg, Photon which,
                                 Basis basis, double draw);
inline PhotonMeasurement measure_photon(const TwoPhotonRegister& reg,
                                        Photon which, Basis basis,
                                        RandomStream& rng) {
  return measure_photon(reg, which, basis, rng.uniform());
}

}  // namespace qkd
