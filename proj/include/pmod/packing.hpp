// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "pmod/types.hpp"

namespace pmod {

// One constellation point on the Poincare sphere.
// phi in [0, 2pi), theta in [0, pi]. The azimuth representative matters: the
// Jones map uses half angles, so phi and phi+2pi describe the same
// polarization state but opposite-sign field vectors.
struct SpherePoint {
    double phi{};
    double theta{};
    std::string label;  // bit string, length log2(L) within a packing
};

enum class PackingSource { builtin, file, ring_sliced };

struct Packing {
    std::vector<SpherePoint> points;
    PackingSource source = PackingSource::builtin;

    std::size_t size() const { return points.size(); }
    int label_bits() const;
    // index of the point carrying `label`, throws LabelNotFound
    std::size_t find_label(const std::string& label) const;
};

// Tabulated max-min-distance packings with Gray-style bit mappings for
// L in {2, 4, 8, 16}. Throws UnsupportedOrder otherwise.
Packing builtin_packing(int L);

// Text format: one point per line, "x y z / bitlabel" with the "/ bitlabel"
// part optional, '#' starts a comment line. Coordinates are (s2, s3, s1)
// so that z is the polar axis. When `renormalize` is false a point whose
// norm deviates from 1 by more than 1e-6 raises NonUnitPoint; points are
// always stored normalized. Labels must be given for all points or none;
// absent labels are assigned as the binary expansion of the point index.
Packing load_packing(const std::string& path, bool renormalize = false);

// Wei-style baseline: max(1, L/4) rings of 4 points at elevations equally
// spaced in (0, pi), no inter-ring azimuth offset. L in {4, 8, 16}.
Packing ring_sliced_packing(int L);

// Plot-ready dump. Point lines follow the load_packing format
// ("s2 s3 s1 / label"), Jones projections ride along as '#' comments, so the
// output reloads into the same packing. psk_order > 1 appends the full
// modulated symbol set as comments.
std::string packing_dump(const Packing& packing, int psk_order);

}  // namespace pmod
