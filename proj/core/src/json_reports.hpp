// Copyright 2026 The curvsir Authors.
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

#ifndef CURVSIR_SRC_JSON_REPORTS_HPP_
#define CURVSIR_SRC_JSON_REPORTS_HPP_

#include <json.hpp>

#include "curvsir/equilibrium.hpp"
#include "curvsir/spectral.hpp"

namespace curvsir::detail {

inline constexpr int kSchemaVersion = 1;

nlohmann::ordered_json spectral_json(const SpectralReport& r);
nlohmann::ordered_json threshold_json(const ThresholdReport& r);
nlohmann::ordered_json equilibrium_json(const EquilibriumReport& r);

}  // namespace curvsir::detail

#endif  // CURVSIR_SRC_JSON_REPORTS_HPP_
