#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

#include "gridhouse/env.hpp"

namespace gridhouse {

using Json = nlohmann::ordered_json;

std::string hex64(std::uint64_t v);
std::uint64_t parse_hex64(std::string_view s);

Json config_to_json(const EnvConfig& config);
// Missing fields keep their defaults; throws std::invalid_argument on bad values.
EnvConfig config_from_json(const Json& j, EnvConfig base = {});

}  // namespace gridhouse
