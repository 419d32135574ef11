#include "ringcap/routing.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ringcap {

const char* to_string(RoutingStrategy s) {
    return s == RoutingStrategy::shortest_path ? "sp" : "oc";
}

RoutingStrategy parse_routing_strategy(std::string_view name) {
    if (name == "sp" || name == "shortest_path") return RoutingStrategy::shortest_path;
    if (name == "oc" || name == "one_copy") return RoutingStrategy::one_copy;
    throw std::invalid_argument("unknown routing strategy '" + std::string(name) +
                                "' (expected sp or oc)");
}

void validate_packet(const RingTopology& ring, const Packet& p) {
    const int N = ring.n_nodes();
    auto fail = [](const std::string& msg) { throw std::invalid_argument("packet: " + msg); };
    if (p.sender < 1 || p.sender > N) fail("sender out of range");
    if (p.destinations.empty() || static_cast<int>(p.destinations.size()) > N - 1) {
        fail("fanout must be in {1..N-1}");
    }
    if (!std::is_sorted(p.destinations.begin(), p.destinations.end()) ||
        std::adjacent_find(p.destinations.begin(), p.destinations.end()) != p.destinations.end()) {
        fail("destinations must be sorted and distinct");
    }
    for (int d : p.destinations) {
        if (d < 1 || d > N) fail("destination out of range");
        if (d == p.sender) fail("sender is among its destinations");
    }
    const bool has_hotspot = p.destinations.back() == N;
    switch (p.traffic_class) {
        case TrafficClass::uniform: break;
        case TrafficClass::hotspot_dest:
            if (!has_hotspot || p.sender == N) fail("hotspot-destination packet must reach node N");
            break;
        case TrafficClass::hotspot_src:
            if (p.sender != N) fail("hotspot-source packet must be sent by node N");
            break;
    }
}

void shortest_path_choices(const RingTopology& ring, int sender, std::span<const int> dests,
                           std::vector<ArcChoice>& out) {
    out.clear();
    if (dests.empty()) throw std::invalid_argument("shortest_path_choices: no destinations");
    // active nodes in clockwise order starting at the sender
    const auto first = std::upper_bound(dests.begin(), dests.end(), sender);
    const std::size_t m = dests.size();
    const std::size_t offset = static_cast<std::size_t>(first - dests.begin());
    auto active = [&](std::size_t i) {  // i in 0..m, 0 is the sender
        return i == 0 ? sender : dests[(offset + i - 1) % m];
    };
    int best = 0;
    for (std::size_t i = 0; i <= m; ++i) {
        const int start = active(i);
        const int end = active(i == m ? 0 : i + 1);
        int len = ring.clockwise_hops(start, end);
        if (len == 0) len = ring.n_nodes();
        if (len < best) continue;
        if (len > best) {
            best = len;
            out.clear();
        }
        out.push_back({ring.clockwise_hops(sender, start), ring.clockwise_hops(end, sender), start,
                       len});
    }
}

void one_copy_choices(const RingTopology& ring, int wavelength, std::span<const int> dests,
                      std::vector<ArcChoice>& out) {
    out.clear();
    if (dests.empty()) throw std::invalid_argument("one_copy_choices: no destinations");
    const int N = ring.n_nodes();
    const int L = ring.n_wavelengths();
    const int eta_star = ring.nodes_per_wavelength() - (wavelength == L ? 1 : 0);
    // k-th homed node clockwise from the hotspot is wavelength + (k-1)*Lambda
    const int nearest = dests.front();
    const int farthest = dests.back();
    if (farthest == N) throw std::invalid_argument("one_copy_choices: hotspot cannot be a destination");
    const int y = (farthest - wavelength) / L + 1;
    const int z = eta_star + 1 - ((nearest - wavelength) / L + 1);
    const ArcChoice cw{farthest, 0, farthest, N - farthest};
    const ArcChoice ccw{0, N - nearest, N, nearest};
    if (y <= z) out.push_back(cw);
    if (y >= z) out.push_back(ccw);
}

void route_choices(const RingTopology& ring, RoutingStrategy strategy, TrafficClass cls,
                   int sender, int wavelength, std::span<const int> dests,
                   std::vector<ArcChoice>& out) {
    if (strategy == RoutingStrategy::one_copy && cls == TrafficClass::hotspot_src) {
        one_copy_choices(ring, wavelength, dests, out);
    } else {
        shortest_path_choices(ring, sender, dests, out);
    }
}

std::vector<SegmentId> RoutingDecision::segments(const RingTopology& ring, int sender) const {
    std::vector<SegmentId> out;
    for (const auto& r : routes) {
        for (int h = 1; h <= r.arcs.cw_hops; ++h) {
            out.push_back({Direction::clockwise, ring.wrap(sender + h), r.wavelength});
        }
        for (int h = 0; h < r.arcs.ccw_hops; ++h) {
            out.push_back({Direction::counterclockwise, ring.wrap(sender - h), r.wavelength});
        }
    }
    return out;
}

std::vector<std::vector<int>> split_by_wavelength(const RingTopology& ring,
                                                  std::span<const int> dests) {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(ring.n_wavelengths()) + 1);
    for (int d : dests) out[static_cast<std::size_t>(ring.home_wavelength(d))].push_back(d);
    for (auto& v : out) std::sort(v.begin(), v.end());
    return out;
}

}  // namespace ringcap
