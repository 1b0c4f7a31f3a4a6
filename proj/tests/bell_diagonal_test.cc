// Copyright 2026 The DRPP Authors
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

#include "drpp/bell_diagonal.h"

#include <cmath>
#include <random>

#include "gtest/gtest.h"

#include "drpp/dense.h"
#include "drpp/errors.h"
#include "drpp/thermal.h"
#include "support/oracles.h"

using namespace drpp;

namespace {

BellDiagonal random_bell_diagonal(std::mt19937_64 &rng) {
    std::exponential_distribution<double> e(1.0);
    BellDiagonal bd;
    double sum = 0;
    for (auto &x : bd.probs) {
        x = e(rng);
        sum += x;
    }
    for (auto &x : bd.probs) {
        x /= sum;
    }
    return bd;
}

void expect_matches_oracle(const BellDiagonal &bd, PairClass partner) {
    auto step = recurrence_step(bd, partner);
    auto ref = oracle::two_pair_recurrence(bd, partner);
    EXPECT_NEAR(step.success_prob, ref.success_prob, 1e-9) << bd.str();
    for (size_t k = 0; k < 4; k++) {
        EXPECT_NEAR(step.output.probs[k], ref.probs[k], 1e-9) << bd.str() << " partner " << static_cast<int>(partner);
    }
}

}  // namespace

TEST(bell_diagonal, from_z_noise) {
    ASSERT_EQ(BellDiagonal::from_z_noise(0).probs, (std::array<double, 4>{1, 0, 0, 0}));
    ASSERT_NEAR(BellDiagonal::from_z_noise(kCriticalErrorProb).fidelity(), 0.5, 1e-15);
    EXPECT_THROW(BellDiagonal::from_z_noise(0.51), ParameterError);

    for (double p : {0.02, 0.1, 0.3, 0.5}) {
        auto rho = dense::z_noise_state(path_graph(2), p);
        auto bd = BellDiagonal::from_z_noise(p);
        for (VertexSet e = 0; e < 4; e++) {
            auto v = dense::graph_basis_state(path_graph(2), e).amplitudes();
            double weight = (v.adjoint() * rho.matrix() * v)(0, 0).real();
            ASSERT_NEAR(bd.probs[e], weight, 1e-14) << p << " class " << e;
        }
    }
}

TEST(bell_diagonal, is_purifiable) {
    ASSERT_TRUE(is_purifiable(BellDiagonal{{1, 0, 0, 0}}));
    ASSERT_FALSE(is_purifiable(BellDiagonal{{0.5, 0.25, 0.25, 0}}));
    ASSERT_TRUE(is_purifiable(BellDiagonal::from_z_noise(0.2)));
    ASSERT_FALSE(is_purifiable(BellDiagonal::from_z_noise(0.3)));
}

TEST(bell_diagonal, validate) {
    EXPECT_THROW((BellDiagonal{{0.5, 0.5, 0.1, 0}}.validate()), ParameterError);
    EXPECT_THROW((BellDiagonal{{1.2, -0.2, 0, 0}}.validate()), ParameterError);
    EXPECT_THROW(recurrence_step(BellDiagonal{{1, 0, 0, 0}}, PairClass::I), ParameterError);
}

TEST(bell_diagonal, recurrence_fixed_point) {
    auto step = recurrence_step(BellDiagonal{{1, 0, 0, 0}});
    ASSERT_EQ(step.output.probs, (std::array<double, 4>{1, 0, 0, 0}));
    ASSERT_EQ(step.success_prob, 1);
}

TEST(bell_diagonal, recurrence_on_z_noise_pairs) {
    auto step = recurrence_step(BellDiagonal::from_z_noise(0.1));
    ASSERT_GT(step.output.fidelity(), 0.81);
    ASSERT_EQ(step.partner, PairClass::ZaZb);
    expect_matches_oracle(BellDiagonal::from_z_noise(0.1), step.partner);

    auto boundary = recurrence_step(BellDiagonal::from_z_noise(kCriticalErrorProb));
    ASSERT_LE(boundary.output.fidelity(), 0.5 + 1e-12);
}

TEST(bell_diagonal, recurrence_matches_two_pair_oracle) {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 100; trial++) {
        auto bd = random_bell_diagonal(rng);
        for (auto partner : {PairClass::Za, PairClass::Zb, PairClass::ZaZb}) {
            expect_matches_oracle(bd, partner);
        }
        auto best = recurrence_step(bd);
        double sum = 0;
        for (double x : best.output.probs) {
            sum += x;
        }
        ASSERT_NEAR(sum, 1, 1e-12);
        ASSERT_GT(best.success_prob, 0);
        ASSERT_LE(best.success_prob, 1);
    }
}

TEST(bell_diagonal, recurrence_improves_iff_above_half) {
    for (int i = 1; i <= 49; i++) {
        double p = 0.01 * i;
        auto bd = BellDiagonal::from_z_noise(p);
        // Above threshold the best partner is Za, which keeps the fidelity exactly (up to round-off).
        bool improves = recurrence_step(bd).output.fidelity() > bd.fidelity() + 1e-12;
        EXPECT_EQ(improves, bd.fidelity() > 0.5) << p;
    }
}

TEST(bell_diagonal, distill) {
    auto perfect = distill(BellDiagonal{{1, 0, 0, 0}}, 0.999);
    ASSERT_TRUE(perfect.converged);
    ASSERT_EQ(perfect.rounds_used, 0);
    ASSERT_EQ(perfect.expected_pairs_consumed, 1);

    auto good = distill(BellDiagonal::from_z_noise(0.1), 0.99);
    ASSERT_TRUE(good.converged);
    ASSERT_LE(good.rounds_used, 10);
    ASSERT_GE(good.achieved_fidelity, 0.99);
    ASSERT_GE(good.expected_pairs_consumed, std::pow(2.0, static_cast<double>(good.rounds_used)));

    auto bad = distill(BellDiagonal::from_z_noise(0.3), 0.9);
    ASSERT_FALSE(bad.converged);
    ASSERT_FALSE(bad.diagnostic.empty());

    auto capped = distill(BellDiagonal::from_z_noise(0.29), 0.999, 3);
    ASSERT_FALSE(capped.converged);
    ASSERT_EQ(capped.rounds_used, 3);

    EXPECT_THROW(distill(BellDiagonal::from_z_noise(0.1), 1.0), ParameterError);
}

TEST(bell_diagonal, distill_cost_is_product_of_round_costs) {
    auto bd = BellDiagonal::from_z_noise(0.2);
    auto result = distill(bd, 0.999);
    double cost = 1;
    for (size_t r = 0; r < result.rounds_used; r++) {
        auto step = recurrence_step(bd);
        cost *= 2 / step.success_prob;
        bd = step.output;
    }
    ASSERT_NEAR(result.expected_pairs_consumed, cost, 1e-9 * cost);
    ASSERT_EQ(result.final_state.probs, bd.probs);
}

TEST(bell_diagonal, hashing_yield) {
    ASSERT_EQ(hashing_yield(BellDiagonal{{1, 0, 0, 0}}), 1);
    ASSERT_EQ(hashing_yield(BellDiagonal{{0.25, 0.25, 0.25, 0.25}}), 0);

    auto bd = BellDiagonal::from_z_noise(0.05);
    double brute = 0;
    for (double q : {0.9025, 0.0475, 0.0475, 0.0025}) {
        brute -= q * std::log(q) / std::log(2.0);
    }
    ASSERT_NEAR(entropy_bits(bd), brute, 1e-12);
    ASSERT_NEAR(hashing_yield(bd), 1 - brute, 1e-12);
    ASSERT_GT(hashing_yield(bd), 0);

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; trial++) {
        auto r = random_bell_diagonal(rng);
        double y = hashing_yield(r);
        ASSERT_GE(y, 0);
        ASSERT_LT(y, 1);
        if (entropy_bits(r) >= 1) {
            ASSERT_EQ(y, 0);
        }
    }
}

TEST(bell_diagonal, pair_rate) {
    ASSERT_EQ(pair_rate(BellDiagonal::from_z_noise(0)), 1);
    ASSERT_EQ(pair_rate(BellDiagonal::from_z_noise(kCriticalErrorProb)), 0);
    ASSERT_EQ(pair_rate(BellDiagonal::from_z_noise(0.3)), 0);
    // Hashing alone gives nothing at p = 0.15; recurrence first keeps the rate positive.
    auto bd = BellDiagonal::from_z_noise(0.15);
    ASSERT_EQ(pair_rate(bd, PairRateEstimator::Hashing), 0);
    ASSERT_GT(pair_rate(bd), 0);
    ASSERT_GT(pair_rate(BellDiagonal::from_z_noise(0.28)), 0);

    double previous = 2;
    for (int i = 0; i <= 29; i++) {
        double r = pair_rate(BellDiagonal::from_z_noise(0.01 * i));
        ASSERT_LE(r, previous + 1e-15);
        previous = r;
    }
}
