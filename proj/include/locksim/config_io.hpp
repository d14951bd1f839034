/* Copyright 2026 The locksim Authors
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

#pragma once

#include <iosfwd>
#include <string>

#include "locksim/types.hpp"

namespace locksim {

// Parses, validates and canonicalizes a config. A document without a
// workload is a platform overlay and keeps the default workload empty until
// merged. Throws ConfigError on malformed input.
SimConfig parse_config(const std::string& json_text, const std::string& name);

// Reads a config file; the name defaults to the file stem unless the
// document carries an explicit "name".
SimConfig load_config_file(const std::string& path);

// Canonical serialization; parse(serialize(c)) == c.
std::string serialize_config(const SimConfig& cfg);

// Returns `base` with the platform replaced by `overlay`'s platform.
SimConfig apply_platform(const SimConfig& base, const SimConfig& overlay);

}  // namespace locksim
