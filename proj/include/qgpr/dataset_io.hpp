/*
 * Copyright 2026 The qgpr Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Dataset files.
//
// CSV: a header `x1,...,xN,y`, one training point per row and a
// `#test: v1,...,vN` directive giving the test point. Other `#` lines are
// comments. JSON: {"inputs": [[...], ...], "targets": [...], "test_point": [...]}.

#pragma once

#include <iosfwd>
#include <string>

#include "qgpr/classical_gpr.hpp"

namespace qgpr {

Dataset parse_csv_dataset(std::istream& in);
Dataset parse_json_dataset(const std::string& text);
/// Dispatches on the extension (.json, anything else is CSV).
Dataset load_dataset(const std::string& path);

void write_csv_dataset(std::ostream& out, const Dataset& d);
std::string dataset_to_json(const Dataset& d);

}  // namespace qgpr
