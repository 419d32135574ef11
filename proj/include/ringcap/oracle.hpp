#pragma once

#include <stdexcept>
#include <vector>

#include "ringcap/ring.hpp"
#include "ringcap/routing.hpp"
#include "ringcap/scalar.hpp"
#include "ringcap/traffic.hpp"

namespace ringcap {

struct instance_too_large : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr int oracle_max_eta = 16;
inline constexpr int oracle_max_nodes = 64;

// Exact per-segment utilization. Ties between largest gaps and the one-copy
// coin are averaged, not sampled. Gap-start and CLG statistics always follow
// shortest-path routing; a wavelength without destinations has G = S and a
// CLG of the whole ring.
template <class Scalar>
struct ExactUtilization {
    int n_nodes = 0;
    int n_wavelengths = 0;
    std::vector<Scalar> util;        // [dir][wavelength][segment]
    std::vector<Scalar> gap_start;   // [wavelength][node], index 0 unused
    std::vector<Scalar> sender;      // [node]
    std::vector<Scalar> clg_mean;    // [wavelength]

    const Scalar& at(const SegmentId& s) const;
    const Scalar& gap_start_probability(int wavelength, int node) const;
    const Scalar& sender_probability(int node) const;
    const Scalar& expected_clg(int wavelength) const;
};

// Throws instance_too_large beyond eta = 16 or N = 64.
template <class Scalar>
ExactUtilization<Scalar> exact_utilization(const RingTopology& ring,
                                           const BasicTrafficModel<Scalar>& traffic,
                                           RoutingStrategy strategy);

// P(G = n) given that the class's packet has exactly `count` destinations on
// the wavelength: sender uniform over those for which the count is possible,
// destination set uniform given the sender. Index 0 unused.
template <class Scalar>
std::vector<Scalar> exact_gap_start_distribution(const RingTopology& ring, TrafficClass cls,
                                                 int wavelength, int count);

// E|CLG| on the wavelength for uniform traffic with `count` destinations
// there, under the same conditional measure.
template <class Scalar>
Scalar exact_expected_clg(const RingTopology& ring, int wavelength, int count);

extern template struct ExactUtilization<Rational>;
extern template struct ExactUtilization<long double>;
extern template ExactUtilization<Rational> exact_utilization(const RingTopology&,
                                                             const BasicTrafficModel<Rational>&,
                                                             RoutingStrategy);
extern template ExactUtilization<long double> exact_utilization(
    const RingTopology&, const BasicTrafficModel<long double>&, RoutingStrategy);
extern template std::vector<Rational> exact_gap_start_distribution<Rational>(const RingTopology&,
                                                                             TrafficClass, int, int);
extern template std::vector<long double> exact_gap_start_distribution<long double>(
    const RingTopology&, TrafficClass, int, int);
extern template Rational exact_expected_clg<Rational>(const RingTopology&, int, int);
extern template long double exact_expected_clg<long double>(const RingTopology&, int, int);

}  // namespace ringcap
