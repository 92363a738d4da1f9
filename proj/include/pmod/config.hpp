// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "pmod/modem.hpp"
#include "pmod/montecarlo.hpp"

namespace pmod {

// One [section] of a ber config file: a modem to simulate.
struct ModemSpec {
    std::string name;              // section header
    std::string modem = "pmod";    // pmod | dual_qam | dual_psk | single_qam | single_psk
    int L = 2;
    int N = 2;
    Receiver receiver = Receiver::joint;    // pmod only
    std::string packing = "builtin";        // builtin | ring_sliced | file path
    double energy = 1.0;

    std::unique_ptr<Modem> build() const;
};

enum class ReportFormat { csv, json };

// Parsed "key = value" config with [section] blocks; keys before the first
// section are global sweep settings.
struct RunConfig {
    SimSpec sim;
    ReportFormat format = ReportFormat::csv;
    std::vector<ModemSpec> modems;
};

// Throws ParseError with a "line N: ..." diagnostic on malformed input.
RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::string& path);

}  // namespace pmod
