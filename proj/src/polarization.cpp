// SPDX-License-Identifier: Apache-2.0
#include "pmod/polarization.hpp"

#include <cmath>

namespace pmod {

double arctan2(double y, double x) {
    if (x > 0.0) return std::atan(y / x);
    if (x < 0.0 && y >= 0.0) return std::atan(y / x) + M_PI;
    if (x < 0.0) return std::atan(y / x) - M_PI;
    // x == 0 from here on
    if (y > 0.0) return M_PI / 2;
    if (y < 0.0) return -M_PI / 2;
    return 0.0;
}

StokesVector jones_to_stokes(const JonesVector& e) {
    StokesVector s;
    const double px = std::norm(e.ex);
    const double py = std::norm(e.ey);
    s.s0 = px + py;
    s.s1 = px - py;
    s.s2 = 2.0 * std::real(e.ex * std::conj(e.ey));
    s.s3 = 2.0 * std::imag(std::conj(e.ex) * e.ey);
    return s;
}

JonesVector stokes_to_jones(const StokesVector& s) {
    const double pol2 = s.s1 * s.s1 + s.s2 * s.s2 + s.s3 * s.s3;
    if (std::abs(s.s0 * s.s0 - pol2) > 1e-9 * s.s0 * s.s0)
        throw NotFullyPolarized("stokes_to_jones: degree of polarization below 1");
    const double theta = arctan2(s.s3, s.s2) / 2.0;
    const cdouble rot = std::polar(1.0, theta);
    // s0 +- s1 can go epsilon-negative at the poles
    const double ax = std::sqrt(std::max(0.0, (s.s0 + s.s1) / 2.0));
    const double ay = std::sqrt(std::max(0.0, (s.s0 - s.s1) / 2.0));
    return {ax * std::conj(rot), ay * rot};
}

JonesVector spherical_to_jones(double phi, double theta, double energy) {
    const double a = std::sqrt(energy);
    const cdouble half = std::polar(1.0, phi / 2.0);
    return {a * std::cos(theta / 2.0) * std::conj(half), a * std::sin(theta / 2.0) * half};
}

StokesVector spherical_to_stokes(double phi, double theta, double energy) {
    return {energy, energy * std::cos(theta), energy * std::sin(theta) * std::cos(phi),
            energy * std::sin(theta) * std::sin(phi)};
}

double degree_of_polarization(const StokesVector& s) {
    if (s.s0 <= 0.0) throw ZeroIntensity("degree_of_polarization: s0 <= 0");
    const double p = std::sqrt(s.s1 * s.s1 + s.s2 * s.s2 + s.s3 * s.s3) / s.s0;
    if (p > 1.0 && p <= 1.0 + 1e-12) return 1.0;
    return p;
}

}  // namespace pmod
