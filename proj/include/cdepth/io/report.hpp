// Copyright 2026 The central-depth Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "cdepth/dispersion/dispersion.hpp"
#include "cdepth/numerics/frame.hpp"
#include "json.hpp"

namespace cdepth {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kVersion = "1.0.0";

// Two-space indented JSON with every float written as %.17g.
std::string dump_json(const Json& j);

Json to_json(const Frame& f);
Json to_json(const DispersionEstimate& e);

}  // namespace cdepth
