// SPDX-License-Identifier: Apache-2.0
#include "pmod/alphabets.hpp"

#include <algorithm>
#include <cmath>

namespace pmod {

bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

int log2_exact(int v) {
    if (!is_power_of_two(v)) throw UnsupportedOrder(std::to_string(v) + " is not a power of two");
    int b = 0;
    while ((1 << b) < v) ++b;
    return b;
}

std::string bit_string(std::uint32_t value, int width) {
    std::string s(static_cast<std::size_t>(width), '0');
    for (int i = 0; i < width; ++i)
        if (value & (1u << (width - 1 - i))) s[static_cast<std::size_t>(i)] = '1';
    return s;
}

std::vector<PskSymbol> psk_alphabet(int N) {
    if (N < 2 || !is_power_of_two(N))
        throw UnsupportedOrder("psk_alphabet: N must be a power of two >= 2, got " +
                               std::to_string(N));
    const int bits = log2_exact(N);
    std::vector<PskSymbol> out;
    out.reserve(static_cast<std::size_t>(N));
    for (int n = 0; n < N; ++n)
        out.push_back({n, bit_string(gray_code(static_cast<std::uint32_t>(n)), bits),
                       2.0 * M_PI * n / N});
    return out;
}

namespace {

struct GridPoint {
    int gx, gy;      // column/row indices
    double x, y;     // unnormalized coordinates
};

std::vector<QamPoint> label_by_axes(const std::vector<GridPoint>& grid, int xbits, int ybits,
                                    double energy) {
    double avg = 0.0;
    for (const auto& g : grid) avg += g.x * g.x + g.y * g.y;
    avg /= static_cast<double>(grid.size());
    const double scale = std::sqrt(energy / avg);
    std::vector<QamPoint> out;
    out.reserve(grid.size());
    for (const auto& g : grid) {
        QamPoint q;
        q.point = cdouble(g.x * scale, g.y * scale);
        q.label = bit_string(gray_code(static_cast<std::uint32_t>(g.gx)), xbits) +
                  bit_string(gray_code(static_cast<std::uint32_t>(g.gy)), ybits);
        out.push_back(std::move(q));
    }
    return out;
}

std::vector<GridPoint> rect_grid(int cols, int rows) {
    std::vector<GridPoint> grid;
    for (int i = 0; i < cols; ++i)
        for (int j = 0; j < rows; ++j)
            grid.push_back({i, j, static_cast<double>(2 * i - cols + 1),
                            static_cast<double>(2 * j - rows + 1)});
    return grid;
}

// Cross constellation: (k+2)x(k+2) grid minus cxc corner blocks. Labels are
// quasi-Gray: sequential Gray codes along a column-major serpentine walk, so
// most nearest neighbors differ in one bit.
std::vector<QamPoint> cross_qam(int side, int corner, int bits, double energy) {
    std::vector<GridPoint> grid;
    for (int i = 0; i < side; ++i) {
        std::vector<GridPoint> column;
        for (int j = 0; j < side; ++j) {
            const bool corner_cell = (i < corner || i >= side - corner) &&
                                     (j < corner || j >= side - corner);
            if (corner_cell) continue;
            column.push_back({0, 0, static_cast<double>(2 * i - side + 1),
                              static_cast<double>(2 * j - side + 1)});
        }
        if (i % 2) std::reverse(column.begin(), column.end());
        grid.insert(grid.end(), column.begin(), column.end());
    }
    double avg = 0.0;
    for (const auto& g : grid) avg += g.x * g.x + g.y * g.y;
    avg /= static_cast<double>(grid.size());
    const double scale = std::sqrt(energy / avg);
    std::vector<QamPoint> out;
    out.reserve(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k)
        out.push_back({cdouble(grid[k].x * scale, grid[k].y * scale),
                       bit_string(gray_code(static_cast<std::uint32_t>(k)), bits)});
    return out;
}

}  // namespace

std::vector<QamPoint> qam_alphabet(int M, double energy) {
    if (energy <= 0.0) throw UnsupportedOrder("qam_alphabet: energy must be positive");
    switch (M) {
        case 2: {
            std::vector<GridPoint> g{{0, 0, -1.0, 0.0}, {1, 0, 1.0, 0.0}};
            return label_by_axes(g, 1, 0, energy);
        }
        case 4:
            return label_by_axes(rect_grid(2, 2), 1, 1, energy);
        case 8:
            return label_by_axes(rect_grid(4, 2), 2, 1, energy);
        case 16:
            return label_by_axes(rect_grid(4, 4), 2, 2, energy);
        case 64:
            return label_by_axes(rect_grid(8, 8), 3, 3, energy);
        case 256:
            return label_by_axes(rect_grid(16, 16), 4, 4, energy);
        case 32:
            return cross_qam(6, 1, 5, energy);
        case 128:
            return cross_qam(12, 2, 7, energy);
        default:
            throw UnsupportedOrder("qam_alphabet: unsupported order " + std::to_string(M));
    }
}

}  // namespace pmod
