#pragma once

#include <optional>
#include <string>
#include <variant>

#include "invnet/netspec.hpp"

namespace invnet {

enum class ModelKind { echelon, chain, full_network };

const char* to_string(ModelKind kind);

// One document describes exactly one model; the `model` field selects which.
// `y0` (echelon) / `x0` (chain) optionally carry initial inventory levels.
struct ParsedConfig {
    std::variant<EchelonSpec, ChainSpec, FullNetworkSpec> spec;
    std::optional<Vector> initial_levels;

    ModelKind kind() const { return static_cast<ModelKind>(spec.index()); }

    const EchelonSpec& echelon() const { return std::get<EchelonSpec>(spec); }
    const ChainSpec& chain() const { return std::get<ChainSpec>(spec); }
    const FullNetworkSpec& network() const { return std::get<FullNetworkSpec>(spec); }
};

// Parses and validates a JSON document; throws ConfigError with the offending
// field and index on schema or invariant violations.
ParsedConfig parse_config(const std::string& text);

ParsedConfig load_config(const std::string& path);

// Emits a document that parses back to an identical config.
std::string serialize(const ParsedConfig& config);

}  // namespace invnet
