// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "pmod/alphabets.hpp"
#include "pmod/analysis.hpp"
#include "pmod/channel.hpp"
#include "pmod/polarization.hpp"

using namespace pmod;

TEST_CASE("qfunc anchors") {
    CHECK(qfunc(0.0) == doctest::Approx(0.5));
    CHECK(qfunc(3.0) == doctest::Approx(0.00134989803163).epsilon(1e-9));
    CHECK(qfunc(-std::numeric_limits<double>::infinity()) == doctest::Approx(1.0));
    CHECK(qfunc(std::numeric_limits<double>::infinity()) == doctest::Approx(0.0));
}

TEST_CASE("hamming") {
    CHECK(hamming("00", "00") == 0);
    CHECK(hamming("00", "11") == 2);
    CHECK(hamming("0101", "0011") == 2);
    CHECK_THROWS_AS(hamming("0", "00"), LengthMismatch);
}

TEST_CASE("pair distance specializations are exact") {
    const SpherePoint a{0.7, 1.1, ""};
    // identical symbols
    CHECK(pair_distance_sq(a, 0.3, a, 0.3, 1.0) == doctest::Approx(0.0).epsilon(1e-15));

    // same sphere point, PSK step: 4 E sin^2(pi dn / N)
    for (int N : {2, 4, 8, 16})
        for (int dn = 1; dn < N; ++dn) {
            const double xi = 2 * M_PI * dn / N;
            const double got = pair_distance_sq(a, xi, a, 0.0, 1.3);
            const double want = 4 * 1.3 * std::pow(std::sin(M_PI * dn / N), 2);
            CHECK(got == doctest::Approx(want).epsilon(1e-12));
        }

    // same PSK index: 2 E (1 - cos(dphi/2) cos(dtheta/2))
    const SpherePoint b{1.5, 0.4, ""};
    const double got = pair_distance_sq(a, 0.9, b, 0.9, 2.0);
    const double want =
        2 * 2.0 * (1 - std::cos((a.phi - b.phi) / 2) * std::cos((a.theta - b.theta) / 2));
    CHECK(got == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("closed-form distance equals the Jones-domain oracle") {
    Rng rng(2024);
    for (int i = 0; i < 100000; ++i) {
        const SpherePoint p{rng.uniform01() * 2 * M_PI, std::acos(2 * rng.uniform01() - 1), ""};
        const SpherePoint q{rng.uniform01() * 2 * M_PI, std::acos(2 * rng.uniform01() - 1), ""};
        const double xi_p = rng.uniform01() * 2 * M_PI;
        const double xi_q = rng.uniform01() * 2 * M_PI;
        const double energy = 0.25 + 4 * rng.uniform01();
        const JonesVector xp = spherical_to_jones(p.phi, p.theta, energy) * std::polar(1.0, xi_p);
        const JonesVector xq = spherical_to_jones(q.phi, q.theta, energy) * std::polar(1.0, xi_q);
        const double direct = distance2(xp, xq);
        const double closed = pair_distance_sq(p, xi_p, q, xi_q, energy);
        CHECK(std::abs(direct - closed) <= 1e-10 * std::max(1.0, direct));
    }
}

TEST_CASE("minimum distances reproduce the published 3D PMod cells") {
    CHECK(min_distance(builtin_packing(2), 2) == doctest::Approx(1.4142).epsilon(1e-4));
    CHECK(min_distance(builtin_packing(2), 4) == doctest::Approx(1.4142).epsilon(1e-4));
    CHECK(min_distance(builtin_packing(4), 2) == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(min_distance(builtin_packing(4), 4) == doctest::Approx(0.9194).epsilon(1e-4));
    CHECK(min_distance(builtin_packing(4), 8) == doctest::Approx(0.7654).epsilon(1e-4));
    CHECK(min_distance(builtin_packing(8), 2) == doctest::Approx(0.6323).epsilon(1e-4));
    CHECK(min_distance(builtin_packing(8), 8) == doctest::Approx(0.6323).epsilon(1e-4));
    CHECK(min_distance(builtin_packing(16), 16) == doctest::Approx(0.3902).epsilon(1e-4));
    // the published 16xN cells for N < 16 (0.5039/0.4627) are not achievable
    // by the published table packing; the true brute-force value:
    CHECK(min_distance(builtin_packing(16), 2) == doctest::Approx(0.4518).epsilon(1e-3));
    CHECK(min_distance(builtin_packing(16), 8) == doctest::Approx(0.4518).epsilon(1e-3));
}

TEST_CASE("8x2 minimum distance binds on an inter-slice sphere pair") {
    // with L > N the minimum comes from the PolSK geometry, not the PSK ring
    const auto packing = builtin_packing(8);
    const auto psk = psk_alphabet(2);
    double best = 1e300;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < 16; ++i)
        for (std::size_t j = i + 1; j < 16; ++j) {
            const double d = pair_distance_sq(packing.points[i / 2], psk[i % 2].phase,
                                              packing.points[j / 2], psk[j % 2].phase, 1.0);
            if (d < best) {
                best = d;
                bi = i;
                bj = j;
            }
        }
    CHECK(std::sqrt(best) == doctest::Approx(0.6323).epsilon(1e-3));
    CHECK(bi % 2 == bj % 2);  // same PSK symbol
    const double ti = packing.points[bi / 2].theta, tj = packing.points[bj / 2].theta;
    CHECK(ti != tj);  // different slices
}

TEST_CASE("min distance of a packing matches an independent brute force") {
    // chordal brute force in the Jones domain, fresh implementation
    for (int L : {2, 4, 8, 16}) {
        for (int N : {2, 4}) {
            const auto packing = builtin_packing(L);
            const auto psk = psk_alphabet(N);
            std::vector<JonesVector> syms;
            for (const auto& sp : packing.points)
                for (const auto& p : psk)
                    syms.push_back(spherical_to_jones(sp.phi, sp.theta, 1.0) *
                                   std::polar(1.0, p.phase));
            double best = 1e300;
            for (std::size_t i = 0; i < syms.size(); ++i)
                for (std::size_t j = i + 1; j < syms.size(); ++j)
                    best = std::min(best, distance2(syms[i], syms[j]));
            CHECK(min_distance(packing, N) == doctest::Approx(std::sqrt(best)).epsilon(1e-10));
        }
    }
}

namespace {

// Craig's single-integral form of the exact M-PSK SER, independent route.
double craig_psk_ser(int M, double gamma) {
    const double s = std::pow(std::sin(M_PI / M), 2);
    const int steps = 200000;
    const double hi = M_PI * (M - 1) / M;
    double acc = 0.0;
    for (int i = 0; i < steps; ++i) {
        const double t0 = hi * i / steps, t1 = hi * (i + 1) / steps;
        const double tm = (t0 + t1) / 2;
        const auto f = [&](double t) {
            const double st = std::sin(t);
            return std::exp(-gamma * s / (st * st));
        };
        acc += (t1 - t0) / 6 * (f(t0 + 1e-12) + 4 * f(tm) + f(t1));
    }
    return acc / M_PI;
}

}  // namespace

TEST_CASE("exact PSK BER closed forms and integral") {
    // BPSK anchors
    CHECK(exact_psk_ber(2, 1e12) == doctest::Approx(0.0));
    const double g96 = std::pow(10.0, 0.96);
    CHECK(exact_psk_ber(2, g96) == doctest::Approx(1e-5).epsilon(0.15));

    // N = 4 equals the defining integral (Craig route), not the
    // bit/symbol-SNR-confused literature shortcut
    for (double snr_db : {4.0, 8.0, 12.0}) {
        const double g = std::pow(10.0, snr_db / 10.0);
        CHECK(exact_psk_ber(4, g) == doctest::Approx(craig_psk_ser(4, g) / 2.0).epsilon(1e-6));
    }

    // N = 8, 16 against the independent Craig quadrature
    for (int N : {8, 16})
        for (double snr_db : {6.0, 10.0, 14.0}) {
            const double g = std::pow(10.0, snr_db / 10.0);
            const double want = craig_psk_ser(N, g) / log2_exact(N);
            CHECK(exact_psk_ber(N, g) == doctest::Approx(want).epsilon(1e-6));
        }

    // zero SNR: SER = 1 - 1/N
    CHECK(exact_psk_ber(8, 0.0) == doctest::Approx((1.0 - 1.0 / 8) / 3));
    CHECK_THROWS_AS(exact_psk_ber(3, 1.0), UnsupportedOrder);

    // extreme SNR stays finite and matches the nearest-neighbor asymptote
    CHECK(exact_psk_ber(8, 100.0) ==
          doctest::Approx(2.0 * qfunc(std::sqrt(200.0) * std::sin(M_PI / 8)) / 3).epsilon(1e-3));
    CHECK(exact_psk_ber(8, 1e8) == 0.0);
    CHECK(exact_psk_ber(128, 1e4) ==
          doctest::Approx(2.0 * qfunc(std::sqrt(2e4) * std::sin(M_PI / 128)) / 7).epsilon(1e-2));
}

TEST_CASE("union bound structure") {
    const auto packing = builtin_packing(2);

    // gamma -> inf drives the bound to zero
    const auto binf = union_bound(packing, 2, 1e12);
    CHECK(binf.total < 1e-12);

    // 2x2: signal term is Q(sqrt(2 gamma)) / 2
    const double g = std::pow(10.0, 0.8);
    const auto b = union_bound(packing, 2, g);
    CHECK(b.signal == doctest::Approx(0.5 * qfunc(std::sqrt(2 * g))).epsilon(1e-12));
    CHECK(b.total == doctest::Approx(b.signal + b.polsk + b.joint));

    // monotone non-increasing in gamma
    for (int L : {2, 4, 8}) {
        const auto p = builtin_packing(L);
        double prev = 1e300;
        for (double snr_db = 0; snr_db <= 16; snr_db += 1.0) {
            const double total = union_bound(p, 4, std::pow(10.0, snr_db / 10.0)).total;
            CHECK(total <= prev * (1 + 1e-12));
            prev = total;
        }
    }
}

TEST_CASE("mindist table emits the expected rows") {
    const auto t4 = mindist_table(4);
    REQUIRE(t4.rows.size() == 3);  // 2x8, 4x4, 8x2
    const auto& r44 = t4.rows[1];
    CHECK(r44.L == 4);
    CHECK(r44.N == 4);
    CHECK(r44.pmod3d == doctest::Approx(0.9194).epsilon(1e-3));
    CHECK(r44.dual_qam == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(r44.dual_psk == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(r44.single_qam == doctest::Approx(0.6325).epsilon(1e-3));
    CHECK(r44.single_psk == doctest::Approx(0.3902).epsilon(1e-3));
    CHECK(r44.lam_ref == doctest::Approx(1.0));
    CHECK(r44.is_max == "dual");

    const auto t2 = mindist_table(2);
    REQUIRE(t2.rows.size() == 1);
    CHECK(t2.rows[0].pmod3d == doctest::Approx(1.4142).epsilon(1e-3));
    CHECK(t2.rows[0].is_max == "pmod3d");

    const auto t5 = mindist_table(5);
    CHECK(t5.skipped.empty());
    REQUIRE(t5.rows.size() == 4);  // 2x16, 4x8, 8x4, 16x2
    CHECK(t5.rows[1].pmod3d == doctest::Approx(0.7654).epsilon(1e-3));
    CHECK(t5.rows[1].is_max == "pmod3d");

    // L = 32 has no builtin packing: 32x2 is skipped without a packing dir
    const auto t6 = mindist_table(6);
    CHECK(t6.skipped == std::vector<std::string>{"32x2"});
    REQUIRE(t6.rows.size() == 4);

    CHECK_THROWS_AS(mindist_table(9), UnsupportedOrder);

    const std::string csv = mindist_table_csv(t4);
    CHECK(csv.find("LxN,pmod3d,dual_qam,dual_psk,single_qam,single_psk,lam_ref,is_max") == 0);
    CHECK(csv.find("4x4,") != std::string::npos);
}

TEST_CASE("analysis ops accept non-power-of-two packings") {
    // three equator points 120 degrees apart (modems reject these, analysis
    // must not)
    Packing p;
    p.points = {{0.0, M_PI / 2, "a"}, {2 * M_PI / 3, M_PI / 2, "b"},
                {4 * M_PI / 3, M_PI / 2, "c"}};
    const double d = min_distance(p, 2);
    CHECK(d > 0.0);
    CHECK(d < 2.0);
}

TEST_CASE("mindist table picks up pack_3_<L> files from a directory") {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "pmod_packs_test";
    fs::create_directories(dir);
    {
        // synthetic 32-point file: two stacked 16-point shells (not a good
        // packing; only the lookup mechanism is under test)
        std::ofstream out(dir / "pack_3_32.txt");
        out << "# synthetic\n";
        for (int ring = 0; ring < 8; ++ring)
            for (int k = 0; k < 4; ++k) {
                const double theta = M_PI * (ring + 1) / 9.0;
                const double phi = 2 * M_PI * k / 4 + (ring % 2) * M_PI / 4;
                out << std::sin(theta) * std::cos(phi) << " " << std::sin(theta) * std::sin(phi)
                    << " " << std::cos(theta) << "\n";
            }
    }
    const auto t6 = mindist_table(6, dir.string());
    CHECK(t6.skipped.empty());
    REQUIRE(t6.rows.size() == 5);
    bool found = false;
    for (const auto& r : t6.rows)
        if (r.L == 32 && r.N == 2) {
            found = true;
            CHECK(r.pmod3d > 0.0);
        }
    CHECK(found);
    fs::remove_all(dir);
}
