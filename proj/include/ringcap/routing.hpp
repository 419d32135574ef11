#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "ringcap/ring.hpp"
#include "ringcap/traffic.hpp"

namespace ringcap {

enum class RoutingStrategy { shortest_path, one_copy };

const char* to_string(RoutingStrategy s);
RoutingStrategy parse_routing_strategy(std::string_view name);

struct Packet {
    TrafficClass traffic_class = TrafficClass::uniform;
    int sender = 1;
    std::vector<int> destinations;  // sorted, sender excluded
};

// Throws std::invalid_argument if the packet breaks the class constraints.
void validate_packet(const RingTopology& ring, const Packet& p);

// Transmission on one wavelength. The clockwise arc uses segments
// S+1 .. S+cw_hops, the counterclockwise arc uses ccw segments S, S-1, ..,
// S-ccw_hops+1. gap_start is the node where the untraversed stretch begins
// (the CLG start for shortest path).
struct ArcChoice {
    int cw_hops = 0;
    int ccw_hops = 0;
    int gap_start = 0;
    int gap_hops = 0;

    friend bool operator==(const ArcChoice&, const ArcChoice&) = default;
};

// Equally likely routing outcomes for a copy from `sender` to the sorted,
// non-empty `dests` (all homed on one wavelength). Several entries mean a tie
// (largest gaps, or the one-copy coin); callers pick one uniformly or weight
// each by 1/size. `out` is cleared first.
void shortest_path_choices(const RingTopology& ring, int sender, std::span<const int> dests,
                           std::vector<ArcChoice>& out);

// One-copy policy for hotspot-source copies. The copy goes clockwise when it
// passes fewer homed nodes that way (the farthest destination counts as
// passed), counterclockwise otherwise, and a coin decides a draw.
void one_copy_choices(const RingTopology& ring, int wavelength, std::span<const int> dests,
                      std::vector<ArcChoice>& out);

// Dispatches on strategy and class; only hotspot-source packets use one-copy.
void route_choices(const RingTopology& ring, RoutingStrategy strategy, TrafficClass cls,
                   int sender, int wavelength, std::span<const int> dests,
                   std::vector<ArcChoice>& out);

struct WavelengthRoute {
    int wavelength = 1;
    ArcChoice arcs;
};

// Wavelengths without destinations carry nothing and are omitted.
struct RoutingDecision {
    std::vector<WavelengthRoute> routes;

    std::vector<SegmentId> segments(const RingTopology& ring, int sender) const;
};

// Destinations of each wavelength, in increasing order; index 0 unused.
std::vector<std::vector<int>> split_by_wavelength(const RingTopology& ring,
                                                  std::span<const int> dests);

template <class Rng>
RoutingDecision route_packet(const RingTopology& ring, RoutingStrategy strategy, const Packet& p,
                             Rng& rng) {
    RoutingDecision d;
    std::vector<ArcChoice> choices;
    const auto by_wl = split_by_wavelength(ring, p.destinations);
    for (int wl = 1; wl <= ring.n_wavelengths(); ++wl) {
        const auto& f = by_wl[static_cast<std::size_t>(wl)];
        if (f.empty()) continue;
        route_choices(ring, strategy, p.traffic_class, p.sender, wl, f, choices);
        std::size_t pick = 0;
        if (choices.size() > 1) {
            pick = std::uniform_int_distribution<std::size_t>(0, choices.size() - 1)(rng);
        }
        d.routes.push_back({wl, choices[pick]});
    }
    return d;
}

}  // namespace ringcap
