#include "doctest.h"

#include <algorithm>
#include <vector>

#include "brute.hpp"
#include "ringcap/combinatorics.hpp"

using namespace ringcap;

TEST_CASE("gap pmf examples") {
    for (int k = 1; k <= 3; ++k) CHECK(gap_pmf(1, 4, k) == doctest::Approx(1.0 / 3));
    CHECK(gap_pmf(1, 4, 4) == 0.0);
    CHECK(gap_pmf(7, 8, 1) == 1.0);
    CHECK(gap_pmf(0, 8, 8) == 1.0);
    CHECK(gap_pmf(0, 8, 3) == 0.0);
    CHECK_THROWS_AS(gap_pmf(8, 8, 1), std::domain_error);
}

TEST_CASE("largest gap examples") {
    const auto q = largest_gap_pmf_exact(1, 4);
    CHECK(q(1) == 0);
    CHECK(q(2) == Rational(1, 3));
    CHECK(q(3) == Rational(2, 3));
    CHECK(q(4) == 0);
    CHECK(largest_gap_pmf_exact(0, 7)(7) == 1);
    CHECK(largest_gap_pmf_exact(7, 8)(1) == 1);
}

TEST_CASE("largest gap equals enumeration for N <= 12") {
    for (int n = 1; n <= 12; ++n) {
        for (int l = 0; l < n; ++l) {
            const auto want = brute::largest_gap(l, n);
            const auto got = largest_gap_pmf_exact(l, n);
            const auto fp = largest_gap_pmf(l, n);
            for (int k = 1; k <= n; ++k) {
                CHECK(got(k) == want[static_cast<std::size_t>(k)]);
                CHECK(fp(k) == doctest::Approx(want[static_cast<std::size_t>(k)].get_d()).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("largest gap normalization and support") {
    for (int n : {5, 17, 64, 129, 256}) {
        for (int l = 0; l < n; l += std::max(1, n / 9)) {
            const auto q = largest_gap_pmf(l, n);
            double total = 0;
            const int lo = l == 0 ? n : (n + l) / (l + 1);
            for (int k = 1; k <= n; ++k) {
                total += q(k);
                if (k < lo || k > n - l) CHECK(q(k) == 0.0);
            }
            CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("expected largest gap endpoints") {
    CHECK(expected_largest_gap(0, 16) == 16.0);
    CHECK(expected_largest_gap(15, 16) == 1.0);
    CHECK(expected_largest_gap_exact(1, 4) == Rational(8, 3));
    CHECK(expected_largest_gap(4, 4) == 0.0);
    CHECK(expected_largest_gap(9, 4) == 0.0);
    CHECK_THROWS(expected_largest_gap(-1, 4));
}

TEST_CASE("expected largest gap monotonicity") {
    for (int n = 2; n <= 40; ++n) {
        for (int l = 1; l <= n; ++l) CHECK(expected_largest_gap(l, n) <= expected_largest_gap(l - 1, n) + 1e-12);
    }
    for (int l = 0; l <= 20; ++l) {
        for (int n = 2; n <= 40; ++n) CHECK(expected_largest_gap(l, n) + 1e-12 >= expected_largest_gap(l, n - 1));
    }
}

TEST_CASE("wavelength fanout examples") {
    RingTopology r(8, 2);
    for (int wl = 1; wl <= 2; ++wl) {
        const auto mu = wavelength_fanout_pmf(r, wl, TrafficClass::uniform, point_fanout<double>(1, 8));
        CHECK(mu[0] == doctest::Approx(0.5));
        CHECK(mu[1] == doctest::Approx(0.5));
    }
    const auto bc = wavelength_fanout_pmf(r, 1, TrafficClass::uniform, point_fanout<double>(7, 8));
    CHECK(bc[4] == doctest::Approx(0.5));
    CHECK(bc[3] == doctest::Approx(0.5));
    const auto nu = wavelength_fanout_pmf(r, 2, TrafficClass::hotspot_dest, point_fanout<double>(1, 8));
    CHECK(nu[1] == 1.0);
    CHECK(nu[0] == 0.0);
}

TEST_CASE("wavelength fanout pmfs normalize and respect supports") {
    const auto& C = exact_gap_distributions().binomials();
    for (auto [n, L] : {std::pair{8, 2}, {12, 4}, {16, 4}, {9, 3}}) {
        RingTopology r(n, L);
        const int eta = r.nodes_per_wavelength();
        for (auto preset : {FanoutPreset::unicast, FanoutPreset::mixed, FanoutPreset::multicast,
                            FanoutPreset::broadcast, FanoutPreset::paper_fig2}) {
            const auto base = make_fanout<Rational>(preset, n);
            for (int wl = 1; wl <= L; ++wl) {
                for (auto cls : all_traffic_classes) {
                    const auto p = wavelength_fanout_pmf(r, wl, cls, base, C);
                    Rational total = 0;
                    for (int c = 0; c <= eta; ++c) total += p[c];
                    CHECK(total == 1);
                    if (wl == L && cls == TrafficClass::hotspot_dest) CHECK(p[0] == 0);
                    if (wl == L && cls == TrafficClass::hotspot_src) CHECK(p[eta] == 0);
                    // against a direct count over destination sets
                    const auto want = brute::wavelength_count_pmf(r, wl, cls, base);
                    for (int c = 0; c <= eta; ++c) CHECK(p[c] == want[static_cast<std::size_t>(c)]);
                }
            }
        }
    }
}

TEST_CASE("unnormalized base pmf is rejected") {
    RingTopology r(8, 2);
    FanoutPmf<double> bad(8);
    bad.set(1, 0.5);
    CHECK_THROWS_AS(wavelength_fanout_pmf(r, 1, TrafficClass::uniform, bad), std::invalid_argument);
}
