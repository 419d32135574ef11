#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "ringcap/ring.hpp"
#include "ringcap/traffic.hpp"

namespace ringcap {

// A gamma threshold that may be unbounded; printed as "inf" in that case.
class Threshold {
public:
    Threshold() = default;
    explicit Threshold(double v) : value_(v) {}
    static Threshold unbounded() { return Threshold{}; }

    bool is_unbounded() const noexcept { return !value_.has_value(); }
    double value() const;  // throws std::logic_error when unbounded
    double as_double() const noexcept;  // +infinity when unbounded

    friend bool operator<=(double g, const Threshold& t) { return t.is_unbounded() || g <= *t.value_; }
    friend bool operator>=(double g, const Threshold& t) { return !t.is_unbounded() && g >= *t.value_; }
    friend bool operator==(const Threshold&, const Threshold&) = default;

private:
    std::optional<double> value_;
};

std::string to_string(const Threshold& t);

struct CriticalBounds {
    SegmentId segment;
    double lower = 0;
    double upper = 0;
    double approx = 0;
};

enum class Recommendation { shortest_path, one_copy, indeterminate };

const char* to_string(Recommendation r);

struct Thresholds {
    Threshold gamma_th1;
    Threshold gamma_th2;
    // per-wavelength components (first wavelength, hotspot wavelength)
    Threshold th1_first, th1_last, th2_first, th2_last;
};

struct CapacityReport {
    double max_util_approx = 0;
    std::array<CriticalBounds, 3> critical;  // cw 1 on 1, cw Lambda on Lambda, cw N on Lambda
    double capacity = 0;
    Thresholds thresholds;
    Recommendation recommendation = Recommendation::indeterminate;
    double oc_bound = 0;
    // verdict of the coarse test on the two approximations against 1/2
    Recommendation coarse_recommendation = Recommendation::indeterminate;
};

CriticalBounds bounds_segment_1_1(const RingTopology& ring, const TrafficModel& traffic);
CriticalBounds bounds_segment_L_L(const RingTopology& ring, const TrafficModel& traffic);
CriticalBounds bounds_segment_N_L(const RingTopology& ring, const TrafficModel& traffic);

Thresholds thresholds(const RingTopology& ring, const TrafficModel& traffic);

// Approximate bound on the maximum utilization under one-copy routing.
double oc_upper_bound(const RingTopology& ring, const TrafficModel& traffic);

// Threshold rule: shortest path for gamma <= th1, one-copy for gamma >= th2.
Recommendation recommend_routing(const RingTopology& ring, const TrafficModel& traffic);

// Both first/hotspot approximations below 1/2 -> shortest path, either above
// -> one-copy.
Recommendation coarse_recommendation(const RingTopology& ring, const TrafficModel& traffic);

CapacityReport max_utilization_sp(const RingTopology& ring, const TrafficModel& traffic);

}  // namespace ringcap
