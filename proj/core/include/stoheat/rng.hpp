#pragma once

#include <array>
#include <cstdint>

namespace stoheat {

// Philox4x32-10 counter-based generator: one (counter, key) pair maps to four
// independent 32-bit words.  Pure function, no state.
std::array<std::uint32_t, 4> philox4x32(const std::array<std::uint32_t, 4>& counter,
                                        const std::array<std::uint32_t, 2>& key);

// Standard normals addressed by (seed; mode m, step k, replicate i, slot j).
// One Philox block yields the Box-Muller pair for slots (2j, 2j+1); every
// address is reproducible independent of evaluation order.
std::array<double, 2> normal_pair_at(std::uint64_t seed, std::uint32_t m, std::uint32_t k,
                                     std::uint32_t i, std::uint32_t pair_slot);

double normal_at(std::uint64_t seed, std::uint32_t m, std::uint32_t k, std::uint32_t i,
                 std::uint32_t slot);

} // namespace stoheat
