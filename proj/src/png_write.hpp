#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace simseed {

// Writes an 8-bit RGBA buffer (row-major, width*height*4 bytes) as a PNG.
// Deterministic: fixed zlib level, no ancillary chunks.
void write_png(const std::filesystem::path& path, int width, int height,
               const std::vector<std::uint8_t>& rgba);

} // namespace simseed
