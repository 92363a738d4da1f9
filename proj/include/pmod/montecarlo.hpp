// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pmod/analysis.hpp"
#include "pmod/channel.hpp"
#include "pmod/modem.hpp"

namespace pmod {

enum class SweepAxis { snr_db, pdl_db, xpd_db };

struct StopRule {
    long min_errors = 2000;        // bit errors
    long max_trials = 50'000'000;  // symbols
};

struct SimSpec {
    SweepAxis axis = SweepAxis::snr_db;
    std::vector<double> points;
    double snr_db = 10.0;            // fixed value when axis != snr_db
    double xpd_db = kNoImpairment;   // fixed value when axis != xpd_db
    double pdl_db = 0.0;             // fixed value when axis != pdl_db
    StopRule stop;
    std::uint64_t seed = 1;
    int workers = 0;                 // 0 = hardware concurrency
    long block_trials = 8192;        // determinism granule
};

struct BerReport {
    double axis_db{};
    long trials{};
    long bit_errors{};
    long symbol_errors{};
    double ber{};
    double ser{};
    double throughput{};  // (Lb+Nb)(1 - SER)
    double ci95{};        // half width on ber, normal approximation
    std::optional<BerBound> bound;  // populated for 3D PMod modems
};

// Runs trials in fixed-size blocks until the stop rule is met. Block b of
// point `point_index` draws from Rng::substream(seed, point_index, b), and
// blocks are accumulated in index order, so the result is independent of the
// worker count. The channel is fixed per point; snr/xpd/pdl describe it.
BerReport run_point(const Modem& modem, double snr_db, double xpd_db, double pdl_db,
                    const SimSpec& spec, std::size_t point_index);

// One report per axis point.
std::vector<BerReport> run_sweep(const Modem& modem, const SimSpec& spec);

// CSV, header:
// axis_db,trials,bit_errors,ber,ci95,ser,throughput,bound_total,bound_signal,bound_polsk,bound_joint
std::string reports_csv(const std::vector<BerReport>& reports);

// JSON array of per-point objects with the same fields.
std::string reports_json(const std::vector<BerReport>& reports);

}  // namespace pmod
