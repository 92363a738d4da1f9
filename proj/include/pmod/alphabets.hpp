// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pmod/types.hpp"

namespace pmod {

inline std::uint32_t gray_code(std::uint32_t i) { return i ^ (i >> 1); }

// Zero-padded bit string of `value`, MSB first.
std::string bit_string(std::uint32_t value, int width);

struct PskSymbol {
    int n{};            // index in [0, N)
    std::string label;  // Gray label, length log2(N)
    double phase{};     // 2 pi n / N
};

// N phases 2 pi n / N with Gray labels. N must be a power of two >= 2.
std::vector<PskSymbol> psk_alphabet(int N);

struct QamPoint {
    cdouble point{};
    std::string label;
};

// Gray-labeled QAM normalized to the given average energy.
// M = 2 -> BPSK, 4/16/64 -> square, 8 -> 4x2 rectangle, 32/128 -> cross
// (cross labels are quasi-Gray). Throws UnsupportedOrder for other M.
std::vector<QamPoint> qam_alphabet(int M, double energy);

bool is_power_of_two(int v);
int log2_exact(int v);  // throws UnsupportedOrder unless v is a power of two

}  // namespace pmod
