// SPDX-License-Identifier: Apache-2.0
#include "pmod/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace pmod {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(int line, const std::string& what) {
    throw ParseError("line " + std::to_string(line) + ": " + what);
}

double parse_double(const std::string& v, int line) {
    if (v == "inf" || v == "+inf") return std::numeric_limits<double>::infinity();
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used != v.size()) fail(line, "bad number '" + v + "'");
        return d;
    } catch (const ParseError&) {
        throw;
    } catch (...) {
        fail(line, "bad number '" + v + "'");
    }
}

long parse_long(const std::string& v, int line) {
    try {
        std::size_t used = 0;
        const long d = std::stol(v, &used);
        if (used != v.size()) fail(line, "bad integer '" + v + "'");
        return d;
    } catch (const ParseError&) {
        throw;
    } catch (...) {
        fail(line, "bad integer '" + v + "'");
    }
}

// "a:step:b" inclusive range or a comma list
std::vector<double> parse_points(const std::string& v, int line) {
    std::vector<double> pts;
    if (v.find(':') != std::string::npos) {
        std::istringstream ss(v);
        std::string a, s, b;
        if (!std::getline(ss, a, ':') || !std::getline(ss, s, ':') || !std::getline(ss, b))
            fail(line, "range must be start:step:stop");
        const double start = parse_double(trim(a), line);
        const double step = parse_double(trim(s), line);
        const double stop = parse_double(trim(b), line);
        if (step <= 0.0) fail(line, "range step must be positive");
        if (stop < start) fail(line, "range stop below start");
        for (double x = start; x <= stop + 1e-9; x += step) pts.push_back(x);
        return pts;
    }
    std::istringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) pts.push_back(parse_double(item, line));
    }
    if (pts.empty()) fail(line, "empty point list");
    return pts;
}

Receiver parse_receiver(const std::string& v, int line) {
    if (v == "joint") return Receiver::joint;
    if (v == "cascade_zf") return Receiver::cascade_zf;
    if (v == "cascade_mmse") return Receiver::cascade_mmse;
    fail(line, "unknown receiver '" + v + "'");
}

SweepAxis parse_axis(const std::string& v, int line) {
    if (v == "snr_db") return SweepAxis::snr_db;
    if (v == "pdl_db") return SweepAxis::pdl_db;
    if (v == "xpd_db") return SweepAxis::xpd_db;
    fail(line, "unknown axis '" + v + "'");
}

}  // namespace

std::unique_ptr<Modem> ModemSpec::build() const {
    if (modem == "pmod") {
        PmodConfig cfg;
        if (packing == "builtin")
            cfg.packing = builtin_packing(L);
        else if (packing == "ring_sliced")
            cfg.packing = ring_sliced_packing(L);
        else
            cfg.packing = load_packing(packing);
        cfg.psk_order = N;
        cfg.energy = energy;
        cfg.receiver = receiver;
        return std::make_unique<PmodModem>(std::move(cfg));
    }
    if (modem == "dual_qam") return make_baseline(BaselineKind::dual_qam, L, N, energy);
    if (modem == "dual_psk") return make_baseline(BaselineKind::dual_psk, L, N, energy);
    if (modem == "single_qam") return make_baseline(BaselineKind::single_qam, L, N, energy);
    if (modem == "single_psk") return make_baseline(BaselineKind::single_psk, L, N, energy);
    throw ParseError("unknown modem kind '" + modem + "'");
}

RunConfig parse_run_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    ModemSpec* current = nullptr;
    bool have_points = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(lineno, "unterminated section header");
            ModemSpec spec;
            spec.name = trim(line.substr(1, line.size() - 2));
            if (spec.name.empty()) fail(lineno, "empty section name");
            cfg.modems.push_back(std::move(spec));
            current = &cfg.modems.back();
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(lineno, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty()) fail(lineno, "expected 'key = value'");

        if (current == nullptr) {
            if (key == "axis") cfg.sim.axis = parse_axis(val, lineno);
            else if (key == "points") { cfg.sim.points = parse_points(val, lineno); have_points = true; }
            else if (key == "snr_db") cfg.sim.snr_db = parse_double(val, lineno);
            else if (key == "xpd_db") cfg.sim.xpd_db = parse_double(val, lineno);
            else if (key == "pdl_db") cfg.sim.pdl_db = parse_double(val, lineno);
            else if (key == "min_errors") cfg.sim.stop.min_errors = parse_long(val, lineno);
            else if (key == "max_trials") cfg.sim.stop.max_trials = parse_long(val, lineno);
            else if (key == "block_trials") cfg.sim.block_trials = parse_long(val, lineno);
            else if (key == "seed") cfg.sim.seed = static_cast<std::uint64_t>(parse_long(val, lineno));
            else if (key == "workers") cfg.sim.workers = static_cast<int>(parse_long(val, lineno));
            else if (key == "format") {
                if (val == "csv") cfg.format = ReportFormat::csv;
                else if (val == "json") cfg.format = ReportFormat::json;
                else fail(lineno, "format must be csv or json");
            }
            else fail(lineno, "unknown global key '" + key + "'");
        } else {
            if (key == "modem") current->modem = val;
            else if (key == "L") current->L = static_cast<int>(parse_long(val, lineno));
            else if (key == "N") current->N = static_cast<int>(parse_long(val, lineno));
            else if (key == "receiver") current->receiver = parse_receiver(val, lineno);
            else if (key == "packing") current->packing = val;
            else if (key == "energy") current->energy = parse_double(val, lineno);
            else fail(lineno, "unknown key '" + key + "' in section [" + current->name + "]");
        }
    }
    if (!have_points) throw ParseError("config defines no sweep points");
    if (cfg.modems.empty()) throw ParseError("config defines no modem sections");
    if (cfg.sim.stop.max_trials < cfg.sim.stop.min_errors)
        throw ParseError("max_trials must be at least min_errors");
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_run_config(ss.str());
}

}  // namespace pmod
