// Copyright 2026 The trapkit developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>

#include <json.hpp>

#include "trapkit/compiler.hpp"
#include "trapkit/harness.hpp"
#include "trapkit/traps.hpp"

namespace trapkit {

using Json = nlohmann::json;

Json load_json(const std::string& path);
void save_json(const std::string& path, const Json& j);

// Graph files: {"vertices":[ids],"edges":[[u,v]],"inputs":[ids],"outputs":[ids]}.
// Ids are non-negative integers; dense indices follow the vertices array.
Json graph_to_json(const OpenGraph& g);
OpenGraph graph_from_json(const Json& j);

// Pattern files: {"graph":g,"angles":{"id":k},"flow":{"id":id},
//                 "order":[[id,id]],"classical_outputs":[ids]}.
Json pattern_to_json(const MeasurementPattern& p);
MeasurementPattern pattern_from_json(const Json& j);

// Deviations as {"id":"X"|"Y"|"Z"} maps.
Json deviation_to_json(const PauliDeviation& d, const std::vector<int>& ids);
PauliDeviation deviation_from_json(const Json& j, const OpenGraph& g);

// Scheme files: {"graph":g,"canvases":[...],"weights":["1/5",...],
//                "embedding":"none"|"dummy-isolated"}.
Json scheme_to_json(const TrappifiedScheme& s);
TrappifiedScheme scheme_from_json(const Json& j);

// Computations: {"pattern":p,"input":{"id":"tag"}}.
Json computation_to_json(const Computation& c);
Computation computation_from_json(const Json& j);

// Adversaries: {"kind":"honest"|"fixed"|"distribution"|"noisy",...}. The
// noisy kind accepts "set":"z-single" for uniform single-vertex Z noise.
Json adversary_to_json(const AdversaryStrategy& a, const std::vector<int>& ids);
AdversaryStrategy adversary_from_json(const Json& j, const OpenGraph& g);

// Bound-calculator parameter files:
// {"n","d","s","w","c","k_eps","k_delta","k_nu","p_delta","eps","delta","nu"}.
// Numeric fields may be JSON numbers or rational strings such as "2/5".
std::pair<BoundInputs, CompilerParams> params_from_json(const Json& j);

double number_from_json(const Json& j);
Rational rational_from_json(const Json& j);

}  // namespace trapkit
