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

#ifndef DRPP_TOOLS_REPORT_H
#define DRPP_TOOLS_REPORT_H

#include <string>
#include <vector>

#include "json.hpp"

#include "drpp/optimality.h"
#include "drpp/protocol.h"
#include "drpp/verification.h"

namespace drpp::report {

using Json = nlohmann::ordered_json;

Json to_json(const ProtocolResult &result);
Json to_json(const RateReport &report);
Json to_json(const Graph &g, const ExtractionPlan &plan);
Json to_json(const ScanRow &row);
Json to_json(const ProofReport &report);
Json to_json(const OracleSweepReport &report);

/// Shared envelope: {command, config, results, version}.
Json envelope(const std::string &command, Json config, Json results);

}  // namespace drpp::report

#endif  // DRPP_TOOLS_REPORT_H
