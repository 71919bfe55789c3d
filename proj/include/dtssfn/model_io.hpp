#pragma once

// Model container: a header line "DTSSFN-MODEL <version> <crc32 hex>"
// followed by a JSON payload the checksum covers.

#include "dtssfn/network.hpp"

#include <filesystem>
#include <string>

namespace dtssfn {

inline constexpr int kModelFormatVersion = 1;

/// Byte-deterministic for a given model.
std::string serialize_model(const NetworkModel& model);

/// Throws ChecksumError on a checksum mismatch, ParseError on anything else
/// malformed.
NetworkModel deserialize_model(const std::string& text);

void save_model(const std::filesystem::path& path, const NetworkModel& model);
NetworkModel load_model(const std::filesystem::path& path);

}  // namespace dtssfn
