// SPDX-License-Identifier: Apache-2.0
#include "pmod/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <functional>
#include <map>
#include <sstream>

#include "pmod/alphabets.hpp"
#include "pmod/modem.hpp"
#include "pmod/polarization.hpp"

namespace pmod {

double qfunc(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

int hamming(const std::string& a, const std::string& b) {
    if (a.size() != b.size())
        throw LengthMismatch("hamming: '" + a + "' vs '" + b + "'");
    int d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
    return d;
}

double pair_distance_sq(const SpherePoint& lp, double xi_p, const SpherePoint& l, double xi,
                        double energy) {
    const double dxi = xi_p - xi;
    const double dphi = lp.phi - l.phi;
    const double chp = lp.theta / 2.0, ch = l.theta / 2.0;
    return 2.0 * energy *
           (1.0 - (std::cos(dxi - dphi / 2.0) * std::cos(chp) * std::cos(ch) +
                   std::cos(dxi + dphi / 2.0) * std::sin(chp) * std::sin(ch)));
}

double min_distance(const Packing& packing, int psk_order, double energy) {
    const auto psk = psk_alphabet(psk_order);
    const std::size_t L = packing.size(), N = psk.size();
    double best = 1e300;
    for (std::size_t i = 0; i < L * N; ++i) {
        const auto& pi = packing.points[i / N];
        const double xi_i = psk[i % N].phase;
        for (std::size_t j = i + 1; j < L * N; ++j) {
            const auto& pj = packing.points[j / N];
            const double xi_j = psk[j % N].phase;
            best = std::min(best, pair_distance_sq(pi, xi_i, pj, xi_j, energy));
        }
    }
    return std::sqrt(std::max(0.0, best));
}

double min_distance(const std::vector<JonesVector>& symbols) {
    double best = 1e300;
    for (std::size_t i = 0; i < symbols.size(); ++i)
        for (std::size_t j = i + 1; j < symbols.size(); ++j)
            best = std::min(best, distance2(symbols[i], symbols[j]));
    return std::sqrt(std::max(0.0, best));
}

namespace {

// adaptive Simpson on [a, b]
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fb, double fm, double whole, double eps, int depth) {
    const double m = (a + b) / 2.0;
    const double lm = (a + m) / 2.0, rm = (m + b) / 2.0;
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0) throw QuadratureNotConverged("adaptive Simpson depth exhausted");
    if (std::abs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, fa, fm, flm, left, eps / 2.0, depth - 1) +
           adaptive_simpson(f, m, b, fm, fb, frm, right, eps / 2.0, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double eps) {
    const double m = (a + b) / 2.0;
    const double fa = f(a), fb = f(b), fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fb, fm, whole, eps, 60);
}

// Exact M-PSK symbol error rate. The inner nu-integral of the defining double
// integral reduces analytically, leaving
//   SER = 1 - e^-g / N - 1/sqrt(2 pi) Int_{-pi/N}^{pi/N} a e^{-g sin^2 t} Phi(a) dt
// with a = sqrt(2 g) cos t.
double psk_ser(int N, double gamma) {
    if (gamma == 0.0) return 1.0 - 1.0 / N;
    if (std::isinf(gamma)) return 0.0;
    const auto f = [gamma](double t) {
        const double a = std::sqrt(2.0 * gamma) * std::cos(t);
        return a * std::exp(-gamma * std::sin(t) * std::sin(t)) * (1.0 - qfunc(a));
    };
    const double wedge = M_PI / N;
    const double integral = 2.0 * integrate(f, 0.0, wedge, 1e-12);
    double ser = 1.0 - std::exp(-gamma) / N - integral / std::sqrt(2.0 * M_PI);
    return std::clamp(ser, 0.0, 1.0);
}

}  // namespace

double exact_psk_ber(int N, double gamma) {
    if (!is_power_of_two(N) || N < 2)
        throw UnsupportedOrder("exact_psk_ber: bad PSK order " + std::to_string(N));
    if (gamma < 0.0) throw ZeroIntensity("exact_psk_ber: negative SNR");
    if (N == 2) return qfunc(std::sqrt(2.0 * gamma));
    if (N == 4) {
        // closed form of the SER integral divided by Nb = 2; the literature
        // variant with sqrt(2 gamma) mixes up bit and symbol SNR
        const double q = qfunc(std::sqrt(gamma));
        return q * (1.0 - q / 2.0);
    }
    return psk_ser(N, gamma) / log2_exact(N);
}

BerBound union_bound(const Packing& packing, int psk_order, double gamma, double energy) {
    const auto psk = psk_alphabet(psk_order);
    const std::size_t L = packing.size(), N = psk.size();
    const int lb = log2_exact(static_cast<int>(L));
    const int nb = log2_exact(psk_order);
    const double bits = lb + nb;
    const double n0 = std::isinf(gamma) ? 0.0 : energy / gamma;

    BerBound b;
    b.signal = nb / bits * exact_psk_ber(psk_order, gamma);

    const auto pep = [n0](double d2) {
        if (n0 == 0.0) return d2 > 0.0 ? 0.0 : 0.5;
        return qfunc(std::sqrt(d2 / (2.0 * n0)));
    };

    double polsk = 0.0;
    for (std::size_t lq = 0; lq < L; ++lq)
        for (std::size_t l = 0; l < L; ++l) {
            if (lq == l) continue;
            const int d_h = hamming(packing.points[lq].label, packing.points[l].label);
            const double d2 = pair_distance_sq(packing.points[lq], 0.0, packing.points[l], 0.0,
                                               energy);
            polsk += d_h * pep(d2);
        }
    b.polsk = polsk / static_cast<double>(L) / bits;

    double joint = 0.0;
    for (std::size_t lq = 0; lq < L; ++lq)
        for (std::size_t l = 0; l < L; ++l) {
            if (lq == l) continue;
            const int dl = hamming(packing.points[lq].label, packing.points[l].label);
            for (std::size_t nq = 0; nq < N; ++nq)
                for (std::size_t n = 0; n < N; ++n) {
                    if (nq == n) continue;
                    const int dn = hamming(psk[nq].label, psk[n].label);
                    const double d2 = pair_distance_sq(packing.points[lq], psk[nq].phase,
                                                       packing.points[l], psk[n].phase, energy);
                    joint += (dl + dn) * pep(d2);
                }
        }
    b.joint = joint / static_cast<double>(L * N) / bits;

    b.total = b.signal + b.polsk + b.joint;
    return b;
}

namespace {

const std::map<int, double> kLamReference = {
    {2, 1.4142}, {3, 1.4142}, {4, 1.0}, {5, 0.8165}, {6, 0.7559}, {7, 0.6324}, {8, 0.5443},
};

double stream_min_distance(BaselineKind kind, int M, double energy) {
    std::vector<cdouble> pts;
    if (kind == BaselineKind::dual_qam || kind == BaselineKind::single_qam)
        for (const auto& q : qam_alphabet(M, energy)) pts.push_back(q.point);
    else
        for (const auto& p : psk_alphabet(M)) pts.push_back(std::polar(std::sqrt(energy), p.phase));
    double best = 1e300;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            best = std::min(best, std::norm(pts[i] - pts[j]));
    return std::sqrt(best);
}

std::optional<Packing> packing_for(int L, const std::optional<std::string>& dir) {
    if (L <= 16) return builtin_packing(L);
    if (!dir) return std::nullopt;
    const auto path = std::filesystem::path(*dir) / ("pack_3_" + std::to_string(L) + ".txt");
    if (!std::filesystem::exists(path)) return std::nullopt;
    return load_packing(path.string());
}

}  // namespace

MindistTable mindist_table(int spectral_efficiency, const std::optional<std::string>& packing_dir) {
    if (spectral_efficiency < 2 || spectral_efficiency > 8)
        throw UnsupportedOrder("mindist_table: spectral efficiency must be in 2..8");
    MindistTable table;
    table.spectral_efficiency = spectral_efficiency;
    const double lam = kLamReference.at(spectral_efficiency);
    for (int lb = 1; lb < spectral_efficiency; ++lb) {
        const int nb = spectral_efficiency - lb;
        const int L = 1 << lb, N = 1 << nb;
        const auto packing = packing_for(L, packing_dir);
        if (!packing) {
            table.skipped.push_back(std::to_string(L) + "x" + std::to_string(N));
            continue;
        }
        MindistRow row;
        row.L = L;
        row.N = N;
        row.pmod3d = min_distance(*packing, N);
        row.dual_qam = std::min(stream_min_distance(BaselineKind::dual_qam, L, 0.5),
                                stream_min_distance(BaselineKind::dual_qam, N, 0.5));
        row.dual_psk = std::min(stream_min_distance(BaselineKind::dual_psk, L, 0.5),
                                stream_min_distance(BaselineKind::dual_psk, N, 0.5));
        row.single_qam = stream_min_distance(BaselineKind::single_qam, L * N, 1.0);
        row.single_psk = stream_min_distance(BaselineKind::single_psk, L * N, 1.0);
        row.lam_ref = lam;

        const std::array<std::pair<const char*, double>, 5> cells{{{"pmod3d", row.pmod3d},
                                                                   {"dual_qam", row.dual_qam},
                                                                   {"dual_psk", row.dual_psk},
                                                                   {"single_qam", row.single_qam},
                                                                   {"single_psk", row.single_psk}}};
        double best = 0.0;
        for (const auto& c : cells) best = std::max(best, c.second);
        const auto at_max = [&](const char* name) {
            for (const auto& c : cells)
                if (std::string(name) == c.first) return c.second >= best - 1e-9;
            return false;
        };
        if (at_max("pmod3d"))
            row.is_max = "pmod3d";
        else if (at_max("dual_qam") && at_max("dual_psk"))
            row.is_max = "dual";
        else if (at_max("dual_qam"))
            row.is_max = "dual_qam";
        else if (at_max("dual_psk"))
            row.is_max = "dual_psk";
        else if (at_max("single_qam"))
            row.is_max = "single_qam";
        else
            row.is_max = "single_psk";
        table.rows.push_back(row);
    }
    return table;
}

std::string mindist_table_csv(const MindistTable& table) {
    std::ostringstream out;
    out.precision(10);
    out << "LxN,pmod3d,dual_qam,dual_psk,single_qam,single_psk,lam_ref,is_max\n";
    for (const auto& r : table.rows)
        out << r.L << "x" << r.N << "," << r.pmod3d << "," << r.dual_qam << "," << r.dual_psk
            << "," << r.single_qam << "," << r.single_psk << "," << r.lam_ref << "," << r.is_max
            << "\n";
    return out.str();
}

}  // namespace pmod
