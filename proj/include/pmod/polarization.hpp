// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "pmod/types.hpp"

namespace pmod {

// Four real intensities characterizing a polarization state.
// Invariant: s0 >= 0 and s0^2 >= s1^2 + s2^2 + s3^2 (equality when fully
// polarized).
struct StokesVector {
    double s0{};
    double s1{};
    double s2{};
    double s3{};
};

// Quadrant-aware arctangent on (-pi, pi] with arctan2(0, 0) = 0.
double arctan2(double y, double x);

// s0 = |ex|^2+|ey|^2, s1 = |ex|^2-|ey|^2, s2 = 2 Re(ex ey*), s3 = 2 Im(ex* ey).
StokesVector jones_to_stokes(const JonesVector& e);

// ex = sqrt((s0+s1)/2) e^{-j theta}, ey = sqrt((s0-s1)/2) e^{+j theta},
// theta = arctan2(s3, s2)/2. Requires a fully polarized input
// (|s0^2 - (s1^2+s2^2+s3^2)| <= 1e-9 s0^2), else throws NotFullyPolarized.
JonesVector stokes_to_jones(const StokesVector& s);

// ex = sqrt(E) cos(theta/2) e^{-j phi/2}, ey = sqrt(E) sin(theta/2) e^{+j phi/2}
JonesVector spherical_to_jones(double phi, double theta, double energy);

// S = E (1, cos theta, sin theta cos phi, sin theta sin phi)
StokesVector spherical_to_stokes(double phi, double theta, double energy);

// sqrt(s1^2+s2^2+s3^2)/s0 in [0, 1]; throws ZeroIntensity when s0 <= 0.
double degree_of_polarization(const StokesVector& s);

}  // namespace pmod
