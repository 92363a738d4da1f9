// SPDX-License-Identifier: Apache-2.0
#include "pmod/montecarlo.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <thread>

namespace pmod {

namespace {

struct BlockResult {
    long trials{};
    long bit_errors{};
    long symbol_errors{};
};

BlockResult run_block(const Modem& modem, const Detector& det, const ChannelMatrix& h,
                      double n0, long trials, Rng rng) {
    BlockResult r;
    r.trials = trials;
    const std::uint64_t mask = modem.symbol_count() - 1;  // symbol count is a power of two
    const bool noiseless = n0 <= 0.0;
    for (long t = 0; t < trials; ++t) {
        const std::size_t tx = static_cast<std::size_t>(rng.next_u64() & mask);
        JonesVector y = h.apply(modem.symbol(tx));
        if (!noiseless) {
            const JonesVector w = awgn_sample(n0, rng);
            y = y + w;
        }
        const std::size_t rx = det.demod(y);
        const std::uint32_t diff = modem.label(tx) ^ modem.label(rx);
        if (diff) {
            r.bit_errors += std::popcount(diff);
            ++r.symbol_errors;
        }
    }
    return r;
}

}  // namespace

BerReport run_point(const Modem& modem, double snr_db, double xpd_db, double pdl_db,
                    const SimSpec& spec, std::size_t point_index) {
    const ChannelMatrix h = xpd_pdl_matrix(xpd_db, pdl_db);
    const double n0 = snr_to_n0(snr_db, modem.symbol_energy());
    const auto detector = modem.make_detector(h, n0);

    const int workers = spec.workers > 0
                            ? spec.workers
                            : std::max(1u, std::thread::hardware_concurrency());
    const long block = std::max<long>(1, spec.block_trials);

    std::vector<BlockResult> done;
    long cum_trials = 0, cum_bit_errors = 0, cum_symbol_errors = 0;
    bool stopped = false;
    std::size_t next_block = 0;
    while (!stopped) {
        // one wave of blocks; accumulation stays in block-index order so the
        // result is independent of the worker count
        const std::size_t wave = static_cast<std::size_t>(workers);
        std::vector<BlockResult> results(wave);
        std::vector<std::thread> pool;
        for (std::size_t wk = 0; wk < wave; ++wk) {
            const std::size_t b = next_block + wk;
            const long start = static_cast<long>(b) * block;
            const long n = std::min(block, spec.stop.max_trials - start);
            if (n <= 0) {
                results[wk].trials = -1;  // beyond max_trials
                continue;
            }
            pool.emplace_back([&, wk, b, n] {
                results[wk] = run_block(modem, *detector, h, n0, n,
                                        Rng::substream(spec.seed, point_index, b));
            });
        }
        for (auto& th : pool) th.join();
        for (std::size_t wk = 0; wk < wave && !stopped; ++wk) {
            if (results[wk].trials < 0) {
                stopped = true;
                break;
            }
            cum_trials += results[wk].trials;
            cum_bit_errors += results[wk].bit_errors;
            cum_symbol_errors += results[wk].symbol_errors;
            if (cum_bit_errors >= spec.stop.min_errors || cum_trials >= spec.stop.max_trials)
                stopped = true;
        }
        next_block += wave;
    }

    BerReport rep;
    rep.trials = cum_trials;
    rep.bit_errors = cum_bit_errors;
    rep.symbol_errors = cum_symbol_errors;
    const double bits = modem.bits_per_symbol();
    const double nbits = static_cast<double>(cum_trials) * bits;
    rep.ber = cum_bit_errors / nbits;
    rep.ser = static_cast<double>(cum_symbol_errors) / static_cast<double>(cum_trials);
    rep.throughput = bits * (1.0 - rep.ser);
    rep.ci95 = 1.96 * std::sqrt(std::max(0.0, rep.ber * (1.0 - rep.ber) / nbits));
    return rep;
}

std::vector<BerReport> run_sweep(const Modem& modem, const SimSpec& spec) {
    std::vector<BerReport> out;
    out.reserve(spec.points.size());
    const auto* pmod_modem = dynamic_cast<const PmodModem*>(&modem);
    for (std::size_t i = 0; i < spec.points.size(); ++i) {
        double snr = spec.snr_db, xpd = spec.xpd_db, pdl = spec.pdl_db;
        switch (spec.axis) {
            case SweepAxis::snr_db: snr = spec.points[i]; break;
            case SweepAxis::xpd_db: xpd = spec.points[i]; break;
            case SweepAxis::pdl_db: pdl = spec.points[i]; break;
        }
        BerReport rep = run_point(modem, snr, xpd, pdl, spec, i);
        rep.axis_db = spec.points[i];
        if (pmod_modem) {
            const double gamma = std::isinf(snr) ? std::numeric_limits<double>::infinity()
                                                 : std::pow(10.0, snr / 10.0);
            rep.bound = union_bound(pmod_modem->config().packing, pmod_modem->config().psk_order,
                                    gamma, pmod_modem->config().energy);
        }
        out.push_back(std::move(rep));
    }
    return out;
}

std::string reports_json(const std::vector<BerReport>& reports) {
    std::ostringstream out;
    out.precision(10);
    out << "[\n";
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& r = reports[i];
        out << "  {\"axis_db\": " << r.axis_db << ", \"trials\": " << r.trials
            << ", \"bit_errors\": " << r.bit_errors << ", \"ber\": " << r.ber
            << ", \"ci95\": " << r.ci95 << ", \"ser\": " << r.ser
            << ", \"throughput\": " << r.throughput;
        if (r.bound)
            out << ", \"bound_total\": " << r.bound->total << ", \"bound_signal\": "
                << r.bound->signal << ", \"bound_polsk\": " << r.bound->polsk
                << ", \"bound_joint\": " << r.bound->joint;
        out << "}" << (i + 1 < reports.size() ? "," : "") << "\n";
    }
    out << "]\n";
    return out.str();
}

std::string reports_csv(const std::vector<BerReport>& reports) {
    std::ostringstream out;
    out.precision(10);
    out << "axis_db,trials,bit_errors,ber,ci95,ser,throughput,"
           "bound_total,bound_signal,bound_polsk,bound_joint\n";
    for (const auto& r : reports) {
        out << r.axis_db << "," << r.trials << "," << r.bit_errors << "," << r.ber << ","
            << r.ci95 << "," << r.ser << "," << r.throughput << ",";
        if (r.bound)
            out << r.bound->total << "," << r.bound->signal << "," << r.bound->polsk << ","
                << r.bound->joint;
        else
            out << ",,,";
        out << "\n";
    }
    return out.str();
}

}  // namespace pmod
