#include "doctest.h"

#include <algorithm>

#include "brute.hpp"
#include "ringcap/analytics.hpp"
#include "ringcap/combinatorics.hpp"
#include "ringcap/oracle.hpp"

using namespace ringcap;
using brute::frac;

namespace {

constexpr FanoutPreset presets[] = {FanoutPreset::unicast, FanoutPreset::mixed, FanoutPreset::multicast,
                                    FanoutPreset::broadcast, FanoutPreset::paper_fig2};

ExactTrafficModel mix(Rational a, Rational b, Rational g, FanoutPreset p, int n) {
    return make_traffic<Rational>(a, b, g, p, n);
}

ExactUtilization<Rational> sp(const RingTopology& r, const ExactTrafficModel& t) {
    return exact_utilization(r, t, RoutingStrategy::shortest_path);
}

SegmentId cw(int n, int wl) { return {Direction::clockwise, n, wl}; }

}  // namespace

TEST_CASE("hotspot-source unicast closed form") {
    RingTopology r8(8, 2);
    const auto e = sp(r8, mix(0, 0, 1, FanoutPreset::unicast, 8));
    CHECK(e.at(cw(1, 1)) == frac(2, 7));
    // hotspot wavelength: node 2 always clockwise, node 4 a draw, node 6 never
    CHECK(e.at(cw(2, 2)) == frac(3, 14));
    for (int n = 8; n <= 28; n += 4) {
        RingTopology r(n, 4);
        const int eta = n / 4;
        const Rational want = eta % 2 == 0 ? frac(n, 8 * (n - 1)) : frac(n + 4, 8 * (n - 1));
        CHECK(sp(r, mix(0, 0, 1, FanoutPreset::unicast, n)).at(cw(1, 1)) == want);
    }
}

TEST_CASE("hotspot-destination load on the hotspot segment is one half") {
    for (auto [n, L] : {std::pair{8, 2}, {12, 4}, {16, 4}}) {
        RingTopology r(n, L);
        for (auto p : presets) CHECK(sp(r, mix(0, 1, 0, p, n)).at(cw(n, L)) == frac(1, 2));
    }
}

TEST_CASE("one copy keeps hotspot-source load at or below one half") {
    for (auto [n, L] : {std::pair{8, 2}, {12, 4}, {16, 4}, {15, 3}}) {
        RingTopology r(n, L);
        for (auto p : presets) {
            const auto e = exact_utilization(r, mix(0, 0, 1, p, n), RoutingStrategy::one_copy);
            CHECK(*std::max_element(e.util.begin(), e.util.end()) <= frac(1, 2));
        }
    }
}

TEST_CASE("per-wavelength enumeration matches whole-packet enumeration") {
    struct Case {
        int n, L;
        Rational a, b, g;
        FanoutPreset p;
    };
    const Case cases[] = {
        {8, 2, frac(1, 2), frac(1, 4), frac(1, 4), FanoutPreset::multicast},
        {8, 4, frac(1, 5), frac(2, 5), frac(2, 5), FanoutPreset::mixed},
        {12, 4, frac(1, 5), frac(1, 5), frac(3, 5), FanoutPreset::paper_fig2},
        {12, 3, 0, 0, 1, FanoutPreset::broadcast},
        {12, 2, frac(1, 3), frac(1, 3), frac(1, 3), FanoutPreset::unicast},
        {10, 1, frac(1, 3), frac(1, 3), frac(1, 3), FanoutPreset::multicast},
    };
    for (const auto& c : cases) {
        RingTopology r(c.n, c.L);
        const auto t = mix(c.a, c.b, c.g, c.p, c.n);
        for (auto s : {RoutingStrategy::shortest_path, RoutingStrategy::one_copy}) {
            const auto e = exact_utilization(r, t, s);
            const auto want = brute::utilization(r, t, s);
            for (int d = 0; d < 2; ++d) {
                for (int wl = 1; wl <= c.L; ++wl) {
                    for (int n = 1; n <= c.n; ++n) {
                        const SegmentId seg{d == 0 ? Direction::clockwise : Direction::counterclockwise, n, wl};
                        INFO("N=" << c.n << " L=" << c.L << " " << to_string(s) << " " << to_string(seg));
                        CHECK(e.at(seg) == want.util[static_cast<std::size_t>(d)][static_cast<std::size_t>(wl)]
                                                    [static_cast<std::size_t>(n)]);
                    }
                }
            }
        }
    }
}

TEST_CASE("recursion between neighbouring clockwise segments") {
    RingTopology r(16, 4);
    for (auto p : presets) {
        const auto e = sp(r, mix(frac(1, 2), frac(1, 5), frac(3, 10), p, 16));
        for (int wl = 1; wl <= 4; ++wl) {
            for (int n = 1; n <= 16; ++n) {
                CHECK(e.at(cw(r.wrap(n + 1), wl)) ==
                      e.at(cw(n, wl)) + e.sender_probability(n) - e.gap_start_probability(wl, n));
            }
        }
    }
}

TEST_CASE("non-critical segments carry less than the next critical one") {
    RingTopology r(16, 4);
    for (auto p : presets) {
        const auto e = sp(r, mix(frac(1, 5), frac(1, 5), frac(3, 5), p, 16));
        for (int wl = 1; wl <= 4; ++wl) {
            for (int n = 1; n <= 16; ++n) {
                const int up = r.shift_up(n, wl);
                // P(S in {n..up-1}, G != S), read off the recursion
                Rational drop = 0;
                for (int m = n; m != up; m = r.wrap(m + 1)) drop += e.sender_probability(m) - e.gap_start_probability(wl, m);
                CHECK(e.at(cw(n, wl)) == e.at(cw(up, wl)) - drop);
                CHECK(e.at(cw(n, wl)) <= e.at(cw(up, wl)));
            }
        }
    }
}

TEST_CASE("clockwise maximum sits on one of the three named segments") {
    for (auto [n, L] : {std::pair{16, 4}, {24, 4}, {12, 3}}) {
        RingTopology r(n, L);
        for (auto p : presets) {
            for (auto [a, b, g] : {std::tuple{Rational(1), Rational(0), Rational(0)},
                                   {frac(3, 5), frac(1, 10), frac(3, 10)},
                                   {frac(1, 5), frac(1, 5), frac(3, 5)}}) {
                const auto e = sp(r, mix(a, b, g, p, n));
                Rational best = 0;
                for (int wl = 1; wl <= L; ++wl) {
                    for (int k = 1; k <= n; ++k) best = std::max(best, e.at(cw(k, wl)));
                }
                const Rational named = std::max({e.at(r.first_segment()), e.at(r.last_wavelength_segment()),
                                                 e.at(r.hotspot_segment())});
                CHECK(best == named);
            }
        }
    }
}

TEST_CASE("reflection symmetry") {
    RingTopology r(16, 4);
    for (auto s : {RoutingStrategy::shortest_path, RoutingStrategy::one_copy}) {
        const auto e = exact_utilization(r, mix(frac(1, 5), frac(3, 10), frac(1, 2), FanoutPreset::mixed, 16), s);
        for (int wl = 1; wl <= 4; ++wl) {
            for (int n = 1; n <= 16; ++n) {
                for (auto d : {Direction::clockwise, Direction::counterclockwise}) {
                    const SegmentId x{d, n, wl};
                    CHECK(e.at(x) == e.at(r.mirror(x)));
                }
            }
        }
    }
}

TEST_CASE("hotspot-source load decreases along the ring") {
    RingTopology r(16, 4);
    for (auto p : presets) {
        const auto e = sp(r, mix(0, 0, 1, p, 16));
        for (int wl = 1; wl <= 4; ++wl) {
            for (int n = 1; n < 3 * 4 + wl; ++n) CHECK(e.at(cw(n + 1, wl)) <= e.at(cw(n, wl)));
        }
    }
}

TEST_CASE("expected chosen largest gap") {
    for (auto [n, L] : {std::pair{8, 2}, {16, 4}, {15, 3}, {24, 4}}) {
        RingTopology r(n, L);
        const int eta = r.nodes_per_wavelength();
        for (int wl = 1; wl <= L; ++wl) {
            CHECK(exact_expected_clg<Rational>(r, wl, 0) == n);
            for (int l = 1; l <= eta; ++l) {
                const Rational e = exact_expected_clg<Rational>(r, wl, l);
                CHECK(L * expected_largest_gap_exact(l, eta - 1) <= e);
                CHECK(e <= L * expected_largest_gap_exact(l, eta + 1));
            }
        }
    }
}

TEST_CASE("uniform traffic double counting") {
    for (auto [n, L] : {std::pair{8, 2}, {16, 4}, {12, 3}}) {
        RingTopology r(n, L);
        for (auto p : presets) {
            const auto e = sp(r, mix(1, 0, 0, p, n));
            for (int wl = 1; wl <= L; ++wl) {
                Rational c = 0, cc = 0;
                for (int k = 1; k <= n; ++k) {
                    c += e.at(cw(k, wl));
                    cc += e.at({Direction::counterclockwise, k, wl});
                }
                CHECK(c == (n - e.expected_clg(wl)) / 2);
                CHECK(cc == c);
            }
        }
    }
}

TEST_CASE("gap start at the hotspot") {
    for (auto [n, L] : {std::pair{8, 2}, {16, 4}, {24, 4}, {32, 4}, {15, 3}}) {
        RingTopology r(n, L);
        const int eta = r.nodes_per_wavelength();
        CHECK(exact_gap_start_distribution<Rational>(r, TrafficClass::hotspot_src, L, 1)[static_cast<std::size_t>(n)] ==
              frac(1, 2));
        for (int l = 1; l <= eta; ++l) {
            const Rational b = exact_gap_start_distribution<Rational>(r, TrafficClass::hotspot_dest, L, l)[static_cast<std::size_t>(n)];
            CHECK((1 - frac(1, l * eta)) / (l + 1) <= b);
            CHECK(b <= (1 + frac(1, eta)) / (l + 1));
            for (int wl = 1; wl < L; ++wl) {
                const Rational g = exact_gap_start_distribution<Rational>(r, TrafficClass::hotspot_src, wl, l)[static_cast<std::size_t>(n)];
                CHECK((1 - frac(l, eta)) / (l + 1) <= g);
                if (L == 4) CHECK(g <= frac(1, l + 1));
            }
        }
        const auto d = exact_gap_start_distribution<Rational>(r, TrafficClass::uniform, 1, 1);
        Rational total = 0;
        for (std::size_t i = 1; i < d.size(); ++i) total += d[i];
        CHECK(total == 1);
    }
}

TEST_CASE("hotspot-source gap start can exceed 1/(l+1) past the middle wavelength") {
    // N=15, Lambda=3, one destination on wavelength 2 (nodes 2,5,8,11,14):
    // the gap leaving the hotspot is the larger one for 8, 11 and 14
    RingTopology r(15, 3);
    CHECK(exact_gap_start_distribution<Rational>(r, TrafficClass::hotspot_src, 2, 1)[15] == frac(3, 5));
    CHECK(exact_gap_start_distribution<Rational>(r, TrafficClass::hotspot_src, 1, 1)[15] == frac(2, 5));
}

TEST_CASE("long double agrees with rationals") {
    RingTopology r(16, 4);
    const auto q = mix(frac(1, 5), frac(1, 5), frac(3, 5), FanoutPreset::multicast, 16);
    const auto ld = make_traffic<long double>(0.2L, 0.2L, 0.6L, FanoutPreset::multicast, 16);
    const auto a = sp(r, q);
    const auto b = exact_utilization(r, ld, RoutingStrategy::shortest_path);
    for (std::size_t i = 0; i < a.util.size(); ++i) CHECK(static_cast<double>(b.util[i]) == doctest::Approx(a.util[i].get_d()).epsilon(1e-12));
}

TEST_CASE("instance limits") {
    CHECK_THROWS_AS(sp(RingTopology(68, 4), mix(1, 0, 0, FanoutPreset::unicast, 68)), instance_too_large);
    CHECK_THROWS_AS(sp(RingTopology(72, 8), mix(1, 0, 0, FanoutPreset::unicast, 72)), instance_too_large);
    CHECK_THROWS_AS(exact_expected_clg<Rational>(RingTopology(68, 4), 1, 1), instance_too_large);
}
