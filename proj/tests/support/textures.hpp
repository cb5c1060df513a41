#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ddgf/image.hpp"

namespace ddgf::testing {

// Deterministic synthetic textures on [0, 1], loosely modelled on natural
// texture photographs.
Image straw(int side, std::uint64_t seed = 11);
Image bricks(int side, std::uint64_t seed = 12);
Image grass(int side, std::uint64_t seed = 13);
Image honeycomb(int side, std::uint64_t seed = 14);
Image rocks(int side, std::uint64_t seed = 15);

std::vector<std::string> texture_names();
Image texture(const std::string& name, int side);

// Random image whose DFT is supported in |k1|, |k2| <= max_bin (centered bins).
Image band_limited(int side, int max_bin, std::uint64_t seed);

// Uniform random values inside the disc of radius side / 4, zero outside.
Image disc_supported(int side, std::uint64_t seed);

}  // namespace ddgf::testing
