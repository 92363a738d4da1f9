// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <limits>

#include "pmod/types.hpp"

namespace pmod {

constexpr double kNoImpairment = std::numeric_limits<double>::infinity();

// 2x2 complex channel. Rows are receive branches (H, V), columns transmit
// branches.
struct ChannelMatrix {
    cdouble h00{1.0}, h01{0.0};
    cdouble h10{0.0}, h11{1.0};
    double xpd_db = kNoImpairment;
    double pdl_db = 0.0;

    JonesVector apply(const JonesVector& x) const {
        return {h00 * x.ex + h01 * x.ey, h10 * x.ex + h11 * x.ey};
    }
    JonesVector column(int i) const {
        return i == 0 ? JonesVector{h00, h10} : JonesVector{h01, h11};
    }
    cdouble det() const { return h00 * h11 - h01 * h10; }
    bool is_identity() const;

    static ChannelMatrix identity() { return {}; }
};

// H = H_XPD H_PDL with zeta = 10^(xpd_db/10), psi = 10^(pdl_db/10):
//   [ 1            sqrt(1/(zeta psi)) ]
//   [ sqrt(1/zeta) sqrt(1/psi)        ]
// xpd_db = inf, pdl_db = 0 gives the identity. dB values are attenuations,
// so larger XPD means weaker cross-polar leakage.
ChannelMatrix xpd_pdl_matrix(double xpd_db, double pdl_db);

// n0 = energy / 10^(snr_db/10); per-complex-dimension noise power.
double snr_to_n0(double snr_db, double energy);

// Deterministic splitmix64 generator; Gaussians by Box-Muller so the stream
// is identical across platforms. Substreams derived from
// (seed, stream, substream) are statistically independent.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    static Rng substream(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream);

    std::uint64_t next_u64();
    double uniform01();            // [0, 1)
    double uniform01_open();       // (0, 1]
    void gaussian_pair(double& z0, double& z1);  // two iid N(0, 1)

  private:
    std::uint64_t state_;
};

// Two iid circularly-symmetric complex Gaussians, each with variance n0.
JonesVector awgn_sample(double n0, Rng& rng);

}  // namespace pmod
