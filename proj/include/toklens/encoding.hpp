#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace toklens {

std::string base64_encode(std::string_view bytes);

/// Throws error("parse", ...) on malformed input.
std::string base64_decode(std::string_view text);

/// FNV-1a 64-bit. Non-cryptographic; used for report provenance digests.
std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ull);

std::string to_hex(std::uint64_t value);

}  // namespace toklens
