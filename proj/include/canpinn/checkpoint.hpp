#pragma once

#include "canpinn/network.hpp"
#include "canpinn/param_store.hpp"

#include <json.hpp>

#include <string>

namespace canpinn {

/// On-disk model state: a JSON header (network configuration, slice layout,
/// free-form metadata) followed by the flat parameter vector as little-endian
/// 64-bit floats.
struct Checkpoint {
    NetworkConfig network;
    ParamStore params;
    nlohmann::json meta; // problem/scheme echo for `eval`; may be empty
};

void save_checkpoint(const std::string& path, const Checkpoint& c);
Checkpoint load_checkpoint(const std::string& path);

} // namespace canpinn
