// SPDX-License-Identifier: Apache-2.0
#include "pmod/channel.hpp"

#include <cmath>

namespace pmod {

bool ChannelMatrix::is_identity() const {
    return h00 == cdouble(1.0) && h11 == cdouble(1.0) && h01 == cdouble(0.0) &&
           h10 == cdouble(0.0);
}

ChannelMatrix xpd_pdl_matrix(double xpd_db, double pdl_db) {
    ChannelMatrix m;
    m.xpd_db = xpd_db;
    m.pdl_db = pdl_db;
    const double inv_zeta = std::isinf(xpd_db) ? 0.0 : std::pow(10.0, -xpd_db / 10.0);
    const double inv_psi = std::isinf(pdl_db) ? 0.0 : std::pow(10.0, -pdl_db / 10.0);
    m.h00 = 1.0;
    m.h01 = std::sqrt(inv_zeta * inv_psi);
    m.h10 = std::sqrt(inv_zeta);
    m.h11 = std::sqrt(inv_psi);
    return m;
}

double snr_to_n0(double snr_db, double energy) {
    if (std::isinf(snr_db)) return 0.0;
    return energy / std::pow(10.0, snr_db / 10.0);
}

namespace {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace

Rng Rng::substream(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream) {
    // run the mixer over the triple so nearby indices decorrelate
    std::uint64_t s = seed;
    std::uint64_t a = splitmix64(s) ^ (stream * 0xd2b74407b1ce6e93ull);
    std::uint64_t b = splitmix64(a) ^ (substream * 0xca5a826395121157ull);
    (void)splitmix64(b);
    return Rng(b);
}

std::uint64_t Rng::next_u64() { return splitmix64(state_); }

double Rng::uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform01_open() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

void Rng::gaussian_pair(double& z0, double& z1) {
    const double u1 = uniform01_open();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    z0 = r * std::cos(2.0 * M_PI * u2);
    z1 = r * std::sin(2.0 * M_PI * u2);
}

JonesVector awgn_sample(double n0, Rng& rng) {
    double a, b, c, d;
    rng.gaussian_pair(a, b);
    rng.gaussian_pair(c, d);
    const double sigma = std::sqrt(n0 / 2.0);
    return {cdouble(a, b) * sigma, cdouble(c, d) * sigma};
}

}  // namespace pmod
