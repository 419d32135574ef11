#include "ringcap/ring.hpp"

#include <stdexcept>

namespace ringcap {

const char* to_string(Direction d) {
    return d == Direction::clockwise ? "cw" : "ccw";
}

std::string to_string(const SegmentId& s) {
    return std::string(to_string(s.direction)) + ":" + std::to_string(s.index) + "@" +
           std::to_string(s.wavelength);
}

RingTopology::RingTopology(int n_nodes, int n_wavelengths)
    : n_nodes_(n_nodes), n_wavelengths_(n_wavelengths), eta_(0) {
    if (n_nodes < 2) {
        throw std::invalid_argument("ring needs at least 2 nodes, got " + std::to_string(n_nodes));
    }
    if (n_wavelengths < 1) {
        throw std::invalid_argument("ring needs at least 1 wavelength");
    }
    if (n_nodes % n_wavelengths != 0) {
        throw std::invalid_argument("number of nodes (" + std::to_string(n_nodes) +
                                    ") must be a multiple of the number of wavelengths (" +
                                    std::to_string(n_wavelengths) + ")");
    }
    eta_ = n_nodes / n_wavelengths;
}

int RingTopology::wrap(int node) const noexcept {
    int r = node % n_nodes_;
    if (r <= 0) r += n_nodes_;
    return r;
}

int RingTopology::checked_node(int node) const {
    if (node < 0 || node > n_nodes_) {
        throw std::out_of_range("node " + std::to_string(node) + " outside {0.." +
                                std::to_string(n_nodes_) + "}");
    }
    return node == 0 ? n_nodes_ : node;
}

void RingTopology::check_wavelength(int wavelength) const {
    if (wavelength < 1 || wavelength > n_wavelengths_) {
        throw std::out_of_range("wavelength " + std::to_string(wavelength) + " outside {1.." +
                                std::to_string(n_wavelengths_) + "}");
    }
}

int RingTopology::home_wavelength(int node) const {
    return (checked_node(node) - 1) % n_wavelengths_ + 1;
}

bool RingTopology::is_homed_on(int node, int wavelength) const {
    return home_wavelength(node) == wavelength;
}

std::vector<int> RingTopology::homed_nodes(int wavelength) const {
    check_wavelength(wavelength);
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(eta_));
    for (int k = 0; k < eta_; ++k) out.push_back(wavelength + k * n_wavelengths_);
    return out;
}

int RingTopology::shift_down(int node, int wavelength) const {
    const int n = checked_node(node);
    check_wavelength(wavelength);
    const int offset = ((n - wavelength) % n_wavelengths_ + n_wavelengths_) % n_wavelengths_;
    return wrap(n - offset);
}

int RingTopology::shift_up(int node, int wavelength) const {
    const int n = checked_node(node);
    check_wavelength(wavelength);
    const int offset = ((wavelength - n) % n_wavelengths_ + n_wavelengths_) % n_wavelengths_;
    return wrap(n + offset);
}

int RingTopology::clockwise_hops(int from, int to) const noexcept {
    return ((to - from) % n_nodes_ + n_nodes_) % n_nodes_;
}

std::vector<SegmentId> RingTopology::critical_segments(int wavelength) const {
    std::vector<SegmentId> out;
    out.reserve(2 * static_cast<std::size_t>(eta_));
    for (int node : homed_nodes(wavelength)) {
        out.push_back({Direction::clockwise, node, wavelength});
    }
    for (int node : homed_nodes(wavelength)) {
        out.push_back({Direction::counterclockwise, wrap(node + 1), wavelength});
    }
    return out;
}

SegmentId RingTopology::mirror(const SegmentId& s) const {
    check_wavelength(s.wavelength);
    const int lambda = s.wavelength == n_wavelengths_ ? n_wavelengths_ : n_wavelengths_ - s.wavelength;
    const Direction d =
        s.direction == Direction::clockwise ? Direction::counterclockwise : Direction::clockwise;
    return {d, wrap(n_nodes_ + 1 - s.index), lambda};
}

}  // namespace ringcap
