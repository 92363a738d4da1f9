// SPDX-License-Identifier: Apache-2.0
#include "pmod/packing.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "pmod/alphabets.hpp"
#include "pmod/polarization.hpp"

namespace pmod {

namespace {

constexpr double kPi = M_PI;

Packing make(std::vector<SpherePoint> pts, PackingSource src) {
    Packing p;
    p.points = std::move(pts);
    p.source = src;
    return p;
}

}  // namespace

int Packing::label_bits() const {
    return points.empty() ? 0 : static_cast<int>(points.front().label.size());
}

std::size_t Packing::find_label(const std::string& label) const {
    for (std::size_t i = 0; i < points.size(); ++i)
        if (points[i].label == label) return i;
    throw LabelNotFound("packing has no point labeled '" + label + "'");
}

Packing builtin_packing(int L) {
    switch (L) {
        case 2:
            return make({{0.0, 0.0, "0"}, {0.0, kPi, "1"}}, PackingSource::builtin);
        case 4: {
            // Regular tetrahedron. The published table puts the pole at
            // phi = pi/2, which contradicts the published 4xN minimum
            // distances; phi = pi/3 reproduces them all.
            const double a = std::acos(-1.0 / 3.0);
            return make({{kPi / 3, 0.0, "00"},
                         {0.0, a, "01"},
                         {2 * kPi / 3, a, "10"},
                         {4 * kPi / 3, a, "11"}},
                        PackingSource::builtin);
        }
        case 8: {
            const double t1 = kPi / 3, t2 = 2 * kPi / 3;
            return make({{0.0, t1, "000"},
                         {kPi / 2, t1, "001"},
                         {3 * kPi / 2, t1, "010"},
                         {kPi, t1, "011"},
                         {kPi / 4, t2, "100"},
                         {3 * kPi / 4, t2, "101"},
                         {7 * kPi / 4, t2, "110"},
                         {5 * kPi / 4, t2, "111"}},
                        PackingSource::builtin);
        }
        case 16: {
            const double a = 2.0 / 3.0;
            return make({{kPi / 4, a, "0000"},
                         {3 * kPi / 4, a, "0001"},
                         {7 * kPi / 4, a, "0010"},
                         {5 * kPi / 4, a, "0011"},
                         {0.0, 2 * a, "0100"},
                         {kPi / 2, 2 * a, "0101"},
                         {3 * kPi / 2, 2 * a, "0110"},
                         {kPi, 2 * a, "0111"},
                         {0.0, kPi - a, "1000"},
                         {kPi / 2, kPi - a, "1001"},
                         {3 * kPi / 2, kPi - a, "1010"},
                         {kPi, kPi - a, "1011"},
                         {kPi / 4, kPi - 2 * a, "1100"},
                         {3 * kPi / 4, kPi - 2 * a, "1101"},
                         {7 * kPi / 4, kPi - 2 * a, "1110"},
                         {5 * kPi / 4, kPi - 2 * a, "1111"}},
                        PackingSource::builtin);
        }
        default:
            throw UnsupportedOrder("builtin_packing: L must be one of {2, 4, 8, 16}, got " +
                                   std::to_string(L));
    }
}

Packing load_packing(const std::string& path, bool renormalize) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open packing file '" + path + "'");

    struct Raw {
        double x, y, z;
        std::string label;
    };
    std::vector<Raw> raws;
    std::string line;
    int lineno = 0;
    bool any_label = false, any_unlabeled = false;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::string coords = line, label;
        if (const auto slash = line.find('/'); slash != std::string::npos) {
            coords = line.substr(0, slash);
            std::istringstream ls(line.substr(slash + 1));
            ls >> label;
            if (label.empty() || label.find_first_not_of("01") != std::string::npos)
                throw ParseError(path + ":" + std::to_string(lineno) + ": bad bit label");
            any_label = true;
        } else {
            any_unlabeled = true;
        }
        std::istringstream cs(coords);
        Raw r;
        if (!(cs >> r.x >> r.y >> r.z))
            throw ParseError(path + ":" + std::to_string(lineno) + ": expected 'x y z [/ label]'");
        std::string extra;
        if (cs >> extra)
            throw ParseError(path + ":" + std::to_string(lineno) + ": trailing fields");
        const double norm = std::sqrt(r.x * r.x + r.y * r.y + r.z * r.z);
        if (!renormalize && std::abs(norm - 1.0) > 1e-6)
            throw NonUnitPoint(path + ":" + std::to_string(lineno) + ": |p| = " + std::to_string(norm));
        if (norm <= 0.0)
            throw ParseError(path + ":" + std::to_string(lineno) + ": zero point");
        r.x /= norm;
        r.y /= norm;
        r.z /= norm;
        r.label = label;
        raws.push_back(std::move(r));
    }
    if (raws.empty()) throw ParseError(path + ": no points");
    if (any_label && any_unlabeled)
        throw ParseError(path + ": labels must be given for all points or none");

    const int bits =
        std::max(1, static_cast<int>(std::ceil(std::log2(static_cast<double>(raws.size())))));
    Packing p;
    p.source = PackingSource::file;
    for (std::size_t i = 0; i < raws.size(); ++i) {
        const Raw& r = raws[i];
        // file coordinates are (s2, s3, s1)
        SpherePoint sp;
        sp.theta = std::acos(std::clamp(r.z, -1.0, 1.0));
        double phi = arctan2(r.y, r.x);
        if (phi < 0.0) phi += 2 * kPi;
        sp.phi = phi;
        sp.label = r.label.empty() ? bit_string(static_cast<std::uint32_t>(i), bits) : r.label;
        p.points.push_back(std::move(sp));
    }
    if (any_label) {
        const auto len = p.points.front().label.size();
        std::set<std::string> seen;
        for (const auto& sp : p.points) {
            if (sp.label.size() != len)
                throw ParseError(path + ": labels must all have the same length");
            if (!seen.insert(sp.label).second)
                throw ParseError(path + ": duplicate label '" + sp.label + "'");
        }
    }
    return p;
}

std::string packing_dump(const Packing& packing, int psk_order) {
    std::ostringstream out;
    out.precision(10);
    out << "# constellation dump, L=" << packing.size() << " N=" << psk_order << "\n";
    out << "# point lines: s2 s3 s1 / label (unit Poincare sphere)\n";
    out << "# jones comment lines: label ex_re ex_im ey_re ey_im\n";
    for (const auto& sp : packing.points) {
        const StokesVector s = spherical_to_stokes(sp.phi, sp.theta, 1.0);
        out << s.s2 << " " << s.s3 << " " << s.s1 << " / " << sp.label << "\n";
        const JonesVector e = spherical_to_jones(sp.phi, sp.theta, 1.0);
        out << "# jones " << sp.label << " " << e.ex.real() << " " << e.ex.imag() << " "
            << e.ey.real() << " " << e.ey.imag() << "\n";
    }
    if (psk_order > 1) {
        out << "# full symbol set (label = sphere bits ++ psk bits):\n";
        for (const auto& psk : psk_alphabet(psk_order))
            for (const auto& sp : packing.points) {
                const JonesVector x =
                    spherical_to_jones(sp.phi, sp.theta, 1.0) * std::polar(1.0, psk.phase);
                out << "# symbol " << sp.label << psk.label << " " << x.ex.real() << " "
                    << x.ex.imag() << " " << x.ey.real() << " " << x.ey.imag() << "\n";
            }
    }
    return out.str();
}

Packing ring_sliced_packing(int L) {
    if (L != 4 && L != 8 && L != 16)
        throw UnsupportedOrder("ring_sliced_packing: L must be one of {4, 8, 16}, got " +
                               std::to_string(L));
    const int slices = std::max(1, L / 4);
    const int per_ring = L / slices;  // always 4
    const int ring_bits = log2_exact(slices == 1 ? 1 : slices);
    const int point_bits = log2_exact(per_ring);
    Packing p;
    p.source = PackingSource::ring_sliced;
    for (int s = 0; s < slices; ++s) {
        const double theta = kPi * (s + 1) / (slices + 1);
        const std::string ring_label =
            slices == 1 ? "" : bit_string(gray_code(static_cast<std::uint32_t>(s)), ring_bits);
        for (int k = 0; k < per_ring; ++k) {
            SpherePoint sp;
            sp.phi = 2 * kPi * k / per_ring;
            sp.theta = theta;
            sp.label = ring_label + bit_string(gray_code(static_cast<std::uint32_t>(k)), point_bits);
            p.points.push_back(std::move(sp));
        }
    }
    return p;
}

}  // namespace pmod
