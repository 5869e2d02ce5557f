// Copyright 2026 The fcqst Authors
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

#include <json.hpp>

#include "fcqst/effective3.hpp"
#include "fcqst/spin_model.hpp"

namespace fcqst {

/// {"n": int, "couplings": [[i, j, re, im], ...], "zz": [[i, j, u], ...], "fields": [b1, ..., bN]}
nlohmann::json to_json(const SpinModel& model);
SpinModel spin_model_from_json(const nlohmann::json& j);

/// {"j1a": [re, im], "jan": [re, im], "j1n": [re, im], "d1": r, "da": r, "dn": r}
nlohmann::json to_json(const Effective3& h);
Effective3 effective3_from_json(const nlohmann::json& j);

}  // namespace fcqst
