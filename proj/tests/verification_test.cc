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

#include "drpp/verification.h"

#include "gtest/gtest.h"

#include "drpp/errors.h"

using namespace drpp;

TEST(verification, six_qubit_merges) {
    OracleSweepOptions options;
    options.max_vertices = 3;
    options.max_merge_qubits = 6;
    auto report = sweep_pattern_rules(options);
    ASSERT_TRUE(report.passed()) << report.first_failure;
    // 1 + 2 + 8 labelled small graphs, then 15 matchings and 64 random six-vertex graphs.
    ASSERT_EQ(report.graphs, 11 + 15 + 64);
    ASSERT_LE(report.max_distance, 1e-9);
    ASSERT_LE(report.max_probability_error, 1e-12);
}

TEST(verification, report_independent_of_workers) {
    OracleSweepOptions options;
    options.max_vertices = 4;
    options.max_merge_qubits = 4;
    auto one = sweep_pattern_rules(options);
    options.workers = 3;
    auto three = sweep_pattern_rules(options);
    ASSERT_EQ(one.graphs, three.graphs);
    ASSERT_EQ(one.cz_checks, three.cz_checks);
    ASSERT_EQ(one.measure_checks, three.measure_checks);
    ASSERT_EQ(one.merge_checks, three.merge_checks);
    ASSERT_EQ(one.max_distance, three.max_distance);
}

TEST(verification, detects_a_broken_tolerance) {
    OracleSweepOptions options;
    options.max_vertices = 3;
    options.max_merge_qubits = 3;
    options.tolerance = -1;
    auto report = sweep_pattern_rules(options);
    ASSERT_FALSE(report.passed());
    ASSERT_NE(report.first_failure.find("on Graph"), std::string::npos);
}

TEST(verification, rejects_oversized_sweeps) {
    OracleSweepOptions options;
    options.max_vertices = 7;
    EXPECT_THROW(sweep_pattern_rules(options), ParameterError);
}
