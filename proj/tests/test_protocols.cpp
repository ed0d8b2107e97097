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

#include <gtest/gtest.h>

#include <stdexcept>

#include "stats_util.hpp"

using namespace qkd;

namespace {

const ChannelParams kLossless{};

}  // namespace

TEST(Bb84Round, NoAdversaryMatchedBasesNeverErr) {
  RandomStream rng(1);
  int sifted = 0;
  for (int i = 0; i < 20000; ++i) {
    const RoundRecord r = bb84_round(kLossless, nullptr, rng);
    ASSERT_FALSE(r.lost);
    if (!r.sifted) {
      ASSERT_FALSE(r.bob_decoded_bit.has_value());
      continue;
    }
    ++sifted;
    ASSERT_EQ(r.bob_decoded_bit, r.alice_bit);
    ASSERT_FALSE(r.eve_decoded_bit.has_value());
  }
  EXPECT_GT(sifted, 0);
}

TEST(Bb84Round, SiftRateIsOneHalf) {
  constexpr std::uint64_t n = 100000;
  RandomStream rng(2);
  std::uint64_t sifted = 0;
  for (std::uint64_t i = 0; i < n; ++i) sifted += bb84_round(kLossless, nullptr, rng).sifted;
  EXPECT_TRUE(testing_util::within_sigmas(double(sifted) / n, 0.5, n));
}

TEST(PpRound, MessageModeDecodesDeterministically) {
  RandomStream rng(3);
  for (int i = 0; i < 5000; ++i) {
    for (Bit bit : {Bit{0}, Bit{1}}) {
      const RoundRecord r = pp_round(Mode::MM, bit, kLossless, nullptr, rng);
      ASSERT_EQ(r.bob_decoded_bit, bit);
      ASSERT_FALSE(r.cm_error.has_value());
    }
  }
}

TEST(PpRound, ControlModeNeverErrsWithoutEve) {
  RandomStream rng(4);
  for (int i = 0; i < 20000; ++i) {
    const RoundRecord r = pp_round(Mode::CM, std::nullopt, kLossless, nullptr, rng);
    ASSERT_EQ(r.cm_error, false);
    ASSERT_FALSE(r.alice_bit.has_value());
    ASSERT_NE(r.alice_cm_outcome, r.bob_cm_outcome);
  }
}

TEST(PpRound, ModeContractViolations) {
  RandomStream rng(5);
  EXPECT_THROW(pp_round(Mode::CM, Bit{1}, kLossless, nullptr, rng),
               std::invalid_argument);
  EXPECT_THROW(pp_round(Mode::MM, std::nullopt, kLossless, nullptr, rng),
               std::invalid_argument);
}

TEST(Lm05Round, MessageModeDecodesDeterministically) {
  RandomStream rng(6);
  for (int i = 0; i < 20000; ++i) {
    const Bit bit = rng.bit();
    const RoundRecord r = lm05_round(Mode::MM, bit, kLossless, nullptr, rng);
    ASSERT_EQ(r.bob_decoded_bit, bit);
  }
}

TEST(Lm05Round, PlusFlippedToMinus) {
  // Find rounds where Bob sent |+> and check the recorded decode.
  RandomStream rng(7);
  int seen = 0;
  for (int i = 0; i < 2000; ++i) {
    const RoundRecord r = lm05_round(Mode::MM, Bit{1}, kLossless, nullptr, rng);
    if (std::get<Eigenstate>(r.bob_sent_state) == Eigenstate{Basis::X, 0}) {
      ++seen;
      ASSERT_EQ(r.bob_decoded_bit, 1);
    }
  }
  EXPECT_GT(seen, 0);
}

TEST(Lm05Round, ControlModeNeverErrsWithoutEve) {
  RandomStream rng(8);
  int matched = 0;
  for (int i = 0; i < 20000; ++i) {
    const RoundRecord r = lm05_round(Mode::CM, std::nullopt, kLossless, nullptr, rng);
    ASSERT_EQ(r.cm_error, false);
    const auto sent = std::get<Eigenstate>(r.bob_sent_state);
    if (r.measurement_basis == sent.basis) {
      ++matched;
      ASSERT_EQ(r.alice_cm_outcome, sent.value);
      ASSERT_EQ(r.bob_cm_outcome, sent.value);
    }
  }
  EXPECT_GT(matched, 0);
}

TEST(Lm05Round, ModeContractViolations) {
  RandomStream rng(9);
  EXPECT_THROW(lm05_round(Mode::CM, Bit{0}, kLossless, nullptr, rng),
               std::invalid_argument);
  EXPECT_THROW(lm05_round(Mode::MM, std::nullopt, kLossless, nullptr, rng),
               std::invalid_argument);
}

TEST(Rounds, LostRoundsCarryNoDetections) {
  ChannelParams dead;
  dead.p_segment = 0.0;
  RandomStream rng(10);
  for (int i = 0; i < 100; ++i) {
    for (const RoundRecord& r :
         {bb84_round(dead, nullptr, rng),
          pp_round(Mode::MM, Bit{1}, dead, nullptr, rng),
          pp_round(Mode::CM, std::nullopt, dead, nullptr, rng),
          lm05_round(Mode::MM, Bit{0}, dead, nullptr, rng),
          lm05_round(Mode::CM, std::nullopt, dead, nullptr, rng)}) {
      ASSERT_TRUE(r.lost);
      ASSERT_FALSE(r.bob_decoded_bit.has_value());
      ASSERT_FALSE(r.cm_error.has_value());
      ASSERT_FALSE(r.sifted);
    }
  }
}

TEST(Rounds, DarkCountsTurnLostRoundsIntoRandomClicks) {
  ChannelParams noisy;
  noisy.p_segment = 0.0;
  noisy.dark_count_prob = 1.0;
  constexpr std::uint64_t n = 40000;
  RandomStream rng(12);
  std::uint64_t errors = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    const RoundRecord r = pp_round(Mode::MM, Bit{0}, noisy, nullptr, rng);
    ASSERT_FALSE(r.lost);
    ASSERT_TRUE(r.dark_count);
    errors += r.bob_decoded_bit != Bit{0};
  }
  EXPECT_TRUE(testing_util::within_sigmas(double(errors) / n, 0.5, n));
}
