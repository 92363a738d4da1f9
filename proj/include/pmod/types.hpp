// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace pmod {

using cdouble = std::complex<double>;

// Complex field vector on the (H, V) polarization basis.
struct JonesVector {
    cdouble ex{};  // horizontal component E_H
    cdouble ey{};  // vertical component E_V

    double norm2() const { return std::norm(ex) + std::norm(ey); }

    JonesVector operator+(const JonesVector& o) const { return {ex + o.ex, ey + o.ey}; }
    JonesVector operator-(const JonesVector& o) const { return {ex - o.ex, ey - o.ey}; }
    JonesVector operator*(cdouble s) const { return {ex * s, ey * s}; }
};

// a^H b
inline cdouble dot(const JonesVector& a, const JonesVector& b) {
    return std::conj(a.ex) * b.ex + std::conj(a.ey) * b.ey;
}

inline double distance2(const JonesVector& a, const JonesVector& b) {
    return (a - b).norm2();
}

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotFullyPolarized : Error { using Error::Error; };
struct ZeroIntensity : Error { using Error::Error; };
struct UnsupportedOrder : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct NonUnitPoint : Error { using Error::Error; };
struct LabelNotFound : Error { using Error::Error; };
struct SingularFilter : Error { using Error::Error; };
struct LengthMismatch : Error { using Error::Error; };
struct QuadratureNotConverged : Error { using Error::Error; };
struct MissingPacking : Error { using Error::Error; };

}  // namespace pmod
