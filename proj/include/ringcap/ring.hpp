#pragma once

#include <string>
#include <vector>

namespace ringcap {

enum class Direction { clockwise, counterclockwise };

const char* to_string(Direction d);

// A directed ring segment on one wavelength. Clockwise segment n connects
// node n-1 to node n, counterclockwise segment n connects node n to n-1.
struct SegmentId {
    Direction direction = Direction::clockwise;
    int index = 1;       // 1..N
    int wavelength = 1;  // 1..Lambda

    friend bool operator==(const SegmentId&, const SegmentId&) = default;
};

std::string to_string(const SegmentId& s);

// Bidirectional WDM ring with N nodes and Lambda wavelengths per direction.
// Node N is the hotspot. Node n receives on wavelength ((n-1) mod Lambda)+1,
// so each wavelength homes eta = N/Lambda nodes.
class RingTopology {
public:
    RingTopology(int n_nodes, int n_wavelengths);

    int n_nodes() const noexcept { return n_nodes_; }
    int n_wavelengths() const noexcept { return n_wavelengths_; }
    int nodes_per_wavelength() const noexcept { return eta_; }
    int hotspot() const noexcept { return n_nodes_; }

    // Maps any integer onto {1..N}; 0 and multiples of N become N.
    int wrap(int node) const noexcept;

    // Throws std::out_of_range unless 0 <= node <= N; returns node in {1..N}.
    int checked_node(int node) const;
    void check_wavelength(int wavelength) const;

    int home_wavelength(int node) const;
    bool is_homed_on(int node, int wavelength) const;

    // Nodes homed on the wavelength in increasing order: lambda, lambda+Lambda, ...
    std::vector<int> homed_nodes(int wavelength) const;

    // Nearest node homed on the wavelength counterclockwise (shift_down) or
    // clockwise (shift_up); a node already homed on it is a fixed point.
    int shift_down(int node, int wavelength) const;
    int shift_up(int node, int wavelength) const;

    // Clockwise hop count from one node to another, in {0..N-1}.
    int clockwise_hops(int from, int to) const noexcept;

    // Segments entering the nodes homed on the wavelength: eta clockwise
    // segments followed by eta counterclockwise segments.
    std::vector<SegmentId> critical_segments(int wavelength) const;

    // The three segments that bound the maximum utilization under
    // shortest-path routing: cw 1 on wavelength 1, cw Lambda and cw N on Lambda.
    SegmentId first_segment() const noexcept { return {Direction::clockwise, 1, 1}; }
    SegmentId last_wavelength_segment() const noexcept {
        return {Direction::clockwise, n_wavelengths_, n_wavelengths_};
    }
    SegmentId hotspot_segment() const noexcept {
        return {Direction::clockwise, n_nodes_, n_wavelengths_};
    }

    // Image of a segment under the reflection n -> N-n, which maps the
    // traffic model onto itself.
    SegmentId mirror(const SegmentId& s) const;

    friend bool operator==(const RingTopology&, const RingTopology&) = default;

private:
    int n_nodes_;
    int n_wavelengths_;
    int eta_;
};

}  // namespace ringcap
