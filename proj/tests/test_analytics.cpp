#include "doctest.h"

#include <cmath>
#include <limits>

#include "ringcap/analytics.hpp"
#include "ringcap/combinatorics.hpp"

using namespace ringcap;

namespace {

TrafficModel mix(double a, double b, double g, FanoutPreset p, int n) { return make_traffic<double>(a, b, g, p, n); }

// mu_l = 1/16 for l <= 16, with point masses for nu and kappa
TrafficModel table2(double gamma, int nu, int kappa) {
    TrafficModel t;
    t.beta = 0.4;
    t.gamma = gamma;
    t.alpha = 1 - 0.4 - gamma;
    t.uniform = uniform_fanout_upto<double>(16, 128);
    t.hotspot_dest = point_fanout<double>(nu, 128);
    t.hotspot_src = point_fanout<double>(kappa, 128);
    return t;
}

}  // namespace

TEST_CASE("first segment approximation, uniform unicast") {
    RingTopology r(64, 4);
    const auto b = bounds_segment_1_1(r, mix(1, 0, 0, FanoutPreset::unicast, 64));
    const double want = 0.5 - (16 * 0.75 + expected_largest_gap(1, 16) * 0.25) / 32;
    CHECK(b.approx == doctest::Approx(want).epsilon(1e-12));
    CHECK(b.segment == SegmentId{Direction::clockwise, 1, 1});
}

TEST_CASE("first segment approximation, hotspot-source broadcast") {
    for (auto [n, L] : {std::pair{64, 4}, {32, 4}, {24, 3}}) {
        RingTopology r(n, L);
        const double eta = r.nodes_per_wavelength();
        CHECK(bounds_segment_1_1(r, mix(0, 0, 1, FanoutPreset::broadcast, n)).approx ==
              doctest::Approx(eta / (eta + 1)));
    }
}

TEST_CASE("hotspot wavelength segment examples") {
    RingTopology r(64, 4);
    const double eta = 16;
    CHECK(bounds_segment_L_L(r, mix(0, 0, 1, FanoutPreset::unicast, 64)).approx ==
          doctest::Approx(0.5 * (eta - 1) / 63));
    CHECK(bounds_segment_L_L(r, mix(0, 1, 0, FanoutPreset::unicast, 64)).approx == doctest::Approx(0.0));
}

TEST_CASE("hotspot segment examples") {
    RingTopology r(64, 4);
    for (auto p : {FanoutPreset::unicast, FanoutPreset::multicast, FanoutPreset::broadcast}) {
        CHECK(bounds_segment_N_L(r, mix(0, 1, 0, p, 64)).approx == doctest::Approx(0.5));
        const auto g = bounds_segment_N_L(r, mix(0, 0, 1, p, 64));
        CHECK(g.lower == 0.0);
        CHECK(g.upper == 0.0);
        CHECK(g.approx == 0.0);
        CHECK(bounds_segment_N_L(r, mix(0, 0.4, 0.6, p, 64)).approx == doctest::Approx(0.2));
    }
}

TEST_CASE("pure uniform traffic collapses the three approximations") {
    for (auto p : {FanoutPreset::unicast, FanoutPreset::mixed, FanoutPreset::multicast, FanoutPreset::broadcast,
                   FanoutPreset::paper_fig2}) {
        RingTopology r(128, 4);
        const auto rep = max_utilization_sp(r, mix(1, 0, 0, p, 128));
        CHECK(rep.critical[0].approx == doctest::Approx(rep.critical[1].approx));
        CHECK(rep.critical[0].approx == doctest::Approx(rep.critical[2].approx));
        CHECK(rep.max_util_approx == doctest::Approx(rep.critical[0].approx));
    }
}

TEST_CASE("bounds are ordered and approximations are affine in the mix") {
    for (int n : {16, 64, 128}) {
        RingTopology r(n, 4);
        for (auto p : {FanoutPreset::unicast, FanoutPreset::mixed, FanoutPreset::multicast, FanoutPreset::broadcast,
                       FanoutPreset::paper_fig2}) {
            const TrafficModel a = mix(1, 0, 0, p, n), b = mix(0, 1, 0, p, n), c = mix(0, 0, 1, p, n);
            for (auto [x, y, z] : {std::tuple{.2, .2, .6}, {.6, .1, .3}, {.5, .5, 0.}, {0., .3, .7}}) {
                const auto m = mix(x, y, z, p, n);
                for (auto f : {bounds_segment_1_1, bounds_segment_L_L, bounds_segment_N_L}) {
                    const auto bm = f(r, m);
                    CHECK(bm.lower <= bm.upper + 1e-12);
                    CHECK(bm.approx >= -1e-12);
                    CHECK(bm.approx <= 1 + 1e-12);
                    CHECK(bm.approx == doctest::Approx(x * f(r, a).approx + y * f(r, b).approx + z * f(r, c).approx));
                }
                if (x == 0) CHECK(bounds_segment_N_L(r, m).approx <= 0.5 + 1e-12);
            }
        }
    }
}

TEST_CASE("capacity report") {
    RingTopology r(128, 4);
    const auto rep = max_utilization_sp(r, mix(0, .1, .9, FanoutPreset::broadcast, 128));
    CHECK(rep.capacity == doctest::Approx(1 / rep.max_util_approx));
    CHECK(rep.max_util_approx > 0.85);
    CHECK(rep.max_util_approx < 0.95);
    CHECK(rep.critical[2].segment == SegmentId{Direction::clockwise, 128, 4});

    const auto b = max_utilization_sp(r, table2(0.21, 1, 64));
    CHECK(b.capacity == doctest::Approx(3.72).epsilon(0.003));
}

TEST_CASE("threshold examples") {
    RingTopology r(128, 4);
    auto th = thresholds(r, mix(0.9, 0.1, 0, FanoutPreset::multicast, 128));
    CHECK(th.gamma_th1.value() == doctest::Approx(0.011).epsilon(0.05));
    CHECK(th.gamma_th2.value() == doctest::Approx(0.0305).epsilon(0.02));
    th = thresholds(r, mix(0.9, 0.1, 0, FanoutPreset::unicast, 128));
    CHECK(th.gamma_th1.value() == doctest::Approx(0.396875).epsilon(1e-9));
    CHECK(th.gamma_th2.is_unbounded());
    CHECK(to_string(th.gamma_th2) == "inf");
    th = thresholds(r, table2(0, 8, 127));
    CHECK(std::abs(th.gamma_th1.value() - 0.122) < 0.001);
    CHECK(std::abs(th.gamma_th2.value() - 0.283) < 0.001);
    CHECK(std::isinf(Threshold::unbounded().as_double()));
}

TEST_CASE("thresholds do not depend on gamma and scale with beta") {
    RingTopology r(128, 4);
    for (auto p : {FanoutPreset::mixed, FanoutPreset::multicast, FanoutPreset::broadcast}) {
        const auto a = thresholds(r, mix(0.9, 0.1, 0, p, 128));
        const auto b = thresholds(r, mix(0.4, 0.1, 0.5, p, 128));
        const auto c = thresholds(r, mix(0.8, 0.2, 0, p, 128));
        CHECK(a.gamma_th1.value() == doctest::Approx(b.gamma_th1.value()));
        CHECK(a.gamma_th2.value() == doctest::Approx(b.gamma_th2.value()));
        CHECK(c.gamma_th1.value() == doctest::Approx(2 * a.gamma_th1.value()));
        CHECK(a.gamma_th1.value() <= a.gamma_th2.value());
    }
}

TEST_CASE("one-copy bound") {
    for (int n : {16, 64, 128}) {
        RingTopology r(n, 4);
        CHECK(oc_upper_bound(r, mix(0, 0, 1, FanoutPreset::broadcast, n)) == doctest::Approx(0.5));
        CHECK(oc_upper_bound(r, mix(0, 1, 0, FanoutPreset::multicast, n)) == doctest::Approx(0.5));
        CHECK(oc_upper_bound(r, mix(1, 0, 0, FanoutPreset::broadcast, n)) == doctest::Approx(0.5 - 0.5 / n));
    }
}

TEST_CASE("routing recommendation") {
    RingTopology r(128, 4);
    for (auto p : {FanoutPreset::unicast, FanoutPreset::broadcast})
        CHECK(recommend_routing(r, mix(0.9, 0.1, 0, p, 128)) == Recommendation::shortest_path);
    CHECK(recommend_routing(r, mix(0.4, 0.1, 0.5, FanoutPreset::broadcast, 128)) == Recommendation::one_copy);
    CHECK(recommend_routing(r, mix(0.88, 0.1, 0.02, FanoutPreset::multicast, 128)) == Recommendation::indeterminate);
    CHECK(recommend_routing(r, mix(0.4, 0.1, 0.5, FanoutPreset::multicast, 128)) == Recommendation::one_copy);
    CHECK(std::string(to_string(Recommendation::indeterminate)) == "indeterminate");
}
