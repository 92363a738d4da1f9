// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pmod/packing.hpp"
#include "pmod/types.hpp"

namespace pmod {

// Gaussian tail probability via erfc.
double qfunc(double x);

// Number of differing positions; throws LengthMismatch.
int hamming(const std::string& a, const std::string& b);

// Squared Euclidean distance in the Jones domain between symbols
// (l', xi') and (l, xi):
//   2E (1 - (cos(dxi - dphi/2) cos(t'/2) cos(t/2)
//           + cos(dxi + dphi/2) sin(t'/2) sin(t/2)))
double pair_distance_sq(const SpherePoint& lp, double xi_p,
                        const SpherePoint& l, double xi, double energy);

// Minimum distance over all unordered symbol pairs of the L x N set.
double min_distance(const Packing& packing, int psk_order, double energy = 1.0);

// Minimum distance of an explicit 2-vector symbol set (baselines).
double min_distance(const std::vector<JonesVector>& symbols);

// Exact PSK bit error rate at symbol SNR gamma under Gray mapping.
// N=2: Q(sqrt(2 gamma)). N=4: Q(sqrt(gamma)) (1 - Q(sqrt(gamma))/2), the
// closed form of the defining SER integral divided by 2. N>=8: the SER
// integral evaluated by adaptive quadrature to 1e-10, divided by log2(N).
double exact_psk_ber(int N, double gamma);

struct BerBound {
    double signal{};
    double polsk{};
    double joint{};
    double total{};
};

// Three-term union bound at symbol SNR gamma (N0 = E/gamma):
//   signal = Nb/(Lb+Nb) BER_PSK
//   polsk  = 1/L 1/(Lb+Nb)   sum_{l' != l}          D(l'->l) Q(sqrt(d^2/2N0))
//   joint  = 1/(LN) 1/(Lb+Nb) sum_{l' != l, n' != n} (D(l'->l)+D(n'->n)) Q(...)
BerBound union_bound(const Packing& packing, int psk_order, double gamma,
                     double energy = 1.0);

struct MindistRow {
    int L{}, N{};
    double pmod3d{};
    double dual_qam{};
    double dual_psk{};
    double single_qam{};
    double single_psk{};
    double lam_ref{};
    std::string is_max;  // row max excluding LAM; "dual" when both duals tie
};

struct MindistTable {
    int spectral_efficiency{};
    std::vector<MindistRow> rows;
    std::vector<std::string> skipped;  // "32x2"-style ids lacking a packing
};

// Per-factorization minimum distances for one spectral efficiency (2..8).
// Packings for L > 16 are looked up in packing_dir ("pack_3_32.txt" naming);
// rows whose packing is missing are skipped and recorded.
MindistTable mindist_table(int spectral_efficiency,
                           const std::optional<std::string>& packing_dir = std::nullopt);

// CSV emitter, header:
// LxN,pmod3d,dual_qam,dual_psk,single_qam,single_psk,lam_ref,is_max
std::string mindist_table_csv(const MindistTable& table);

}  // namespace pmod
