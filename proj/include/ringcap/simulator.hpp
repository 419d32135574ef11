#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ringcap/ring.hpp"
#include "ringcap/routing.hpp"
#include "ringcap/traffic.hpp"

namespace ringcap {

using Rng = std::mt19937_64;

// Stateless seed derivation so every block of packets gets its own stream.
std::uint64_t splitmix64(std::uint64_t x) noexcept;
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

// 99% two-sided normal quantile.
inline constexpr double z99 = 2.5758293035489004;

enum class StopScope { all_segments, critical_segments };

struct StopRule {
    double relative_halfwidth = 0.01;
    double floor = 0.01;  // segments estimated below this do not hold up the stop
    std::uint64_t min_samples = 10'000;
    std::uint64_t max_samples = 10'000'000;
    std::uint64_t batch_size = 10'000;
    StopScope scope = StopScope::all_segments;
    int threads = 1;

    void validate() const;

    friend bool operator==(const StopRule&, const StopRule&) = default;
};

// Usage counts of every (direction, segment, wavelength) plus the sender and
// gap-start tallies that the recursion checks need.
class UtilizationMatrix {
public:
    UtilizationMatrix() = default;
    UtilizationMatrix(int n_nodes, int n_wavelengths);

    int n_nodes() const noexcept { return n_nodes_; }
    int n_wavelengths() const noexcept { return n_wavelengths_; }
    std::uint64_t samples() const noexcept { return samples_; }
    bool converged() const noexcept { return converged_; }

    std::uint64_t count(const SegmentId& s) const { return counts_[index(s)]; }
    double estimate(const SegmentId& s) const;
    // 99% normal-approximation half-width
    double ci_halfwidth(const SegmentId& s) const;

    double sender_frequency(int node) const;
    // fraction of packets whose untraversed stretch on the wavelength starts at
    // the node (the sender when nothing is sent on that wavelength)
    double gap_start_frequency(int wavelength, int node) const;

    std::vector<SegmentId> all_segments() const;

    void merge(const UtilizationMatrix& other);

    friend bool operator==(const UtilizationMatrix&, const UtilizationMatrix&) = default;

private:
    friend class UtilizationAccumulator;
    friend UtilizationMatrix estimate_utilization(const RingTopology&, const TrafficModel&,
                                                  RoutingStrategy, std::uint64_t, const StopRule&);

    std::size_t index(const SegmentId& s) const;

    int n_nodes_ = 0;
    int n_wavelengths_ = 0;
    std::uint64_t samples_ = 0;
    bool converged_ = false;
    std::vector<std::uint64_t> counts_;       // [dir][wavelength][segment]
    std::vector<std::uint64_t> senders_;      // [node]
    std::vector<std::uint64_t> gap_starts_;   // [wavelength][node]
};

// Draws one packet: class by (alpha, beta, gamma), sender uniform over the
// class's senders, fanout from the class pmf, destination set uniform.
class PacketSampler {
public:
    PacketSampler(const RingTopology& ring, const TrafficModel& traffic);

    // Fills p; destinations come out sorted.
    void sample(Rng& rng, Packet& p);
    Packet sample(Rng& rng) {
        Packet p;
        sample(rng, p);
        return p;
    }

private:
    void draw_subset(Rng& rng, int pool, int count, int skip, std::vector<int>& out);

    RingTopology ring_;
    std::discrete_distribution<int> cls_;
    std::discrete_distribution<int> fanout_[3];
    std::vector<std::uint8_t> mark_;
};

Packet sample_packet(const RingTopology& ring, const TrafficModel& traffic, Rng& rng);

// Runs the simulation in blocks of stop.batch_size packets; block b uses the
// stream stream_seed(seed, b), so the result does not depend on the thread count.
UtilizationMatrix estimate_utilization(const RingTopology& ring, const TrafficModel& traffic,
                                       RoutingStrategy strategy, std::uint64_t seed,
                                       const StopRule& stop = {});

struct CapacityEstimate {
    SegmentId argmax;
    double max_util = 0;
    double ci_halfwidth = 0;
    double capacity = 0;
};

// Throws std::runtime_error("no utilization observed") for an all-zero matrix.
CapacityEstimate estimate_capacity(const UtilizationMatrix& m);

}  // namespace ringcap
