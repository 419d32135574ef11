#include "ringcap/oracle.hpp"

#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>

#include "ringcap/combinatorics.hpp"

namespace ringcap {

template <class Scalar>
const Scalar& ExactUtilization<Scalar>::at(const SegmentId& s) const {
    if (s.index < 1 || s.index > n_nodes || s.wavelength < 1 || s.wavelength > n_wavelengths) {
        throw std::out_of_range("segment " + to_string(s) + " outside the ring");
    }
    const std::size_t dir = s.direction == Direction::clockwise ? 0 : 1;
    return util[(dir * std::size_t(n_wavelengths) + std::size_t(s.wavelength - 1)) * std::size_t(n_nodes) +
                std::size_t(s.index - 1)];
}

template <class Scalar>
const Scalar& ExactUtilization<Scalar>::gap_start_probability(int wavelength, int node) const {
    if (wavelength < 1 || wavelength > n_wavelengths || node < 1 || node > n_nodes) {
        throw std::out_of_range("gap start index out of range");
    }
    return gap_start[std::size_t(wavelength) * std::size_t(n_nodes + 1) + std::size_t(node)];
}

template <class Scalar>
const Scalar& ExactUtilization<Scalar>::sender_probability(int node) const {
    if (node < 1 || node > n_nodes) throw std::out_of_range("node out of range");
    return sender[std::size_t(node)];
}

template <class Scalar>
const Scalar& ExactUtilization<Scalar>::expected_clg(int wavelength) const {
    if (wavelength < 1 || wavelength > n_wavelengths) throw std::out_of_range("wavelength out of range");
    return clg_mean[std::size_t(wavelength)];
}

namespace {

void check_size(const RingTopology& ring) {
    if (ring.nodes_per_wavelength() > oracle_max_eta || ring.n_nodes() > oracle_max_nodes) {
        throw instance_too_large("exact enumeration limited to eta <= " + std::to_string(oracle_max_eta) +
                                 " and N <= " + std::to_string(oracle_max_nodes) + " (got N=" +
                                 std::to_string(ring.n_nodes()) + ", eta=" +
                                 std::to_string(ring.nodes_per_wavelength()) + ")");
    }
}

// Common multiple of every possible tie count (up to eta+1 largest gaps, or
// the one-copy coin), so tie-averaged tallies stay integral.
std::int64_t tie_scale(int eta) {
    std::int64_t l = 2;
    for (int k = 2; k <= eta + 1; ++k) l = std::lcm(l, std::int64_t(k));
    return l;
}

std::vector<int> senders_of(const RingTopology& ring, TrafficClass cls) {
    std::vector<int> s;
    const int N = ring.n_nodes();
    if (cls == TrafficClass::hotspot_src) return {N};
    const int last = cls == TrafficClass::uniform ? N : N - 1;
    for (int n = 1; n <= last; ++n) s.push_back(n);
    return s;
}

// Homed nodes of the wavelength that may or may not be destinations.
std::vector<int> free_nodes(const RingTopology& ring, TrafficClass cls, int sender, int wl) {
    std::vector<int> out;
    for (int n : ring.homed_nodes(wl)) {
        if (n == sender) continue;
        if (cls != TrafficClass::uniform && n == ring.hotspot()) continue;
        out.push_back(n);
    }
    return out;
}

bool hotspot_forced(const RingTopology& ring, TrafficClass cls, int wl) {
    return cls == TrafficClass::hotspot_dest && wl == ring.n_wavelengths();
}

// Calls visit(dests, free_count) for every subset of `free`, with the hotspot
// appended when forced. Destinations are increasing.
template <class F>
void for_each_subset(const std::vector<int>& free, bool forced, int hotspot, F&& visit) {
    const std::uint32_t b = static_cast<std::uint32_t>(free.size());
    std::vector<int> dests;
    dests.reserve(free.size() + 1);
    for (std::uint32_t mask = 0; mask < (1u << b); ++mask) {
        dests.clear();
        for (std::uint32_t i = 0; i < b; ++i) {
            if (mask & (1u << i)) dests.push_back(free[i]);
        }
        if (forced) dests.push_back(hotspot);
        visit(dests, std::popcount(mask));
    }
}

// Integer tallies scaled by tie_scale.
struct Tally {
    std::vector<std::int64_t> diff;   // [dir][segment] difference arrays, N+2 each
    std::vector<std::int64_t> gstart; // [node]
    std::int64_t clg = 0;

    explicit Tally(int N) : diff(2 * std::size_t(N + 2), 0), gstart(std::size_t(N) + 1, 0) {}

    void add_range(const RingTopology& ring, int dir, int first, int hops, std::int64_t w) {
        if (hops <= 0) return;
        const int N = ring.n_nodes();
        std::int64_t* d = diff.data() + std::size_t(dir) * std::size_t(N + 2);
        first = ring.wrap(first);
        const int last = first + hops - 1;
        d[first] += w;
        if (last <= N) {
            d[last + 1] -= w;
        } else {
            d[N + 1] -= w;
            d[1] += w;
            d[last - N + 1] -= w;
        }
    }

    std::vector<std::int64_t> usage(int N, int dir) const {
        std::vector<std::int64_t> out(std::size_t(N) + 1, 0);
        std::int64_t run = 0;
        for (int n = 1; n <= N; ++n) {
            run += diff[std::size_t(dir) * std::size_t(N + 2) + std::size_t(n)];
            out[std::size_t(n)] = run;
        }
        return out;
    }
};

// Adds one (sender, destination set) outcome to the tally.
void record(const RingTopology& ring, RoutingStrategy strategy, TrafficClass cls, int S, int wl,
            const std::vector<int>& dests, std::int64_t scale, bool track_usage,
            std::vector<ArcChoice>& choices, Tally& t) {
    if (dests.empty()) {
        t.gstart[std::size_t(S)] += scale;
        t.clg += scale * ring.n_nodes();
        return;
    }
    if (track_usage) {
        route_choices(ring, strategy, cls, S, wl, dests, choices);
        const std::int64_t w = scale / std::int64_t(choices.size());
        for (const auto& a : choices) {
            t.add_range(ring, 0, S + 1, a.cw_hops, w);
            t.add_range(ring, 1, S - a.ccw_hops + 1, a.ccw_hops, w);
        }
    }
    shortest_path_choices(ring, S, dests, choices);
    const std::int64_t w = scale / std::int64_t(choices.size());
    for (const auto& a : choices) {
        t.gstart[std::size_t(a.gap_start)] += w;
        t.clg += w * a.gap_hops;
    }
}

template <class Scalar>
Scalar ratio(std::int64_t num, const Scalar& den) {
    return Scalar(make_scalar<Scalar>(num) / den);
}

}  // namespace

template <class Scalar>
ExactUtilization<Scalar> exact_utilization(const RingTopology& ring,
                                           const BasicTrafficModel<Scalar>& traffic,
                                           RoutingStrategy strategy) {
    check_size(ring);
    traffic.validate(ring.n_nodes());
    const int N = ring.n_nodes();
    const int L = ring.n_wavelengths();
    const std::int64_t scale = tie_scale(ring.nodes_per_wavelength());
    const BinomialTable<Scalar> C(N);

    ExactUtilization<Scalar> out;
    out.n_nodes = N;
    out.n_wavelengths = L;
    out.util.assign(2 * std::size_t(N) * std::size_t(L), Scalar{0});
    out.gap_start.assign((std::size_t(L) + 1) * std::size_t(N + 1), Scalar{0});
    out.sender.assign(std::size_t(N) + 1, Scalar{0});
    out.clg_mean.assign(std::size_t(L) + 1, Scalar{0});

    std::vector<ArcChoice> choices;
    for (TrafficClass cls : all_traffic_classes) {
        const Scalar& weight = traffic.weight(cls);
        if (is_zero(weight)) continue;
        const auto& fan = traffic.fanout(cls);
        const auto senders = senders_of(ring, cls);
        const Scalar per_sender = Scalar(weight / make_scalar<Scalar>(std::int64_t(senders.size())));
        for (int s : senders) out.sender[std::size_t(s)] += per_sender;

        // random part of the destination set: `draw` nodes out of `pool`
        const int pool = cls == TrafficClass::hotspot_dest ? N - 2 : N - 1;
        auto subset_probability = [&](int b, int k) {
            Scalar r{0};
            for (int l = 1; l < N; ++l) {
                if (is_zero(fan[l])) continue;
                const int draw = cls == TrafficClass::hotspot_dest ? l - 1 : l;
                const Scalar num = C(pool - b, draw - k);
                if (is_zero(num)) continue;
                r += fan[l] * Scalar(num / C(pool, draw));
            }
            return r;
        };

        for (int wl = 1; wl <= L; ++wl) {
            const bool forced = hotspot_forced(ring, cls, wl);
            std::map<std::pair<int, int>, Tally> groups;  // (free size, free count)
            for (int S : senders) {
                const auto free = free_nodes(ring, cls, S, wl);
                const int b = int(free.size());
                for_each_subset(free, forced, N, [&](const std::vector<int>& dests, int k) {
                    auto it = groups.try_emplace({b, k}, N).first;
                    record(ring, strategy, cls, S, wl, dests, scale, true, choices, it->second);
                });
            }
            for (const auto& [key, tally] : groups) {
                const Scalar w = Scalar(per_sender * subset_probability(key.first, key.second) /
                                        make_scalar<Scalar>(scale));
                if (is_zero(w)) continue;
                for (int dir = 0; dir < 2; ++dir) {
                    const auto use = tally.usage(N, dir);
                    for (int n = 1; n <= N; ++n) {
                        if (use[std::size_t(n)] == 0) continue;
                        out.util[(std::size_t(dir) * std::size_t(L) + std::size_t(wl - 1)) * std::size_t(N) +
                                 std::size_t(n - 1)] += w * make_scalar<Scalar>(use[std::size_t(n)]);
                    }
                }
                for (int n = 1; n <= N; ++n) {
                    if (tally.gstart[std::size_t(n)] == 0) continue;
                    out.gap_start[std::size_t(wl) * std::size_t(N + 1) + std::size_t(n)] +=
                        w * make_scalar<Scalar>(tally.gstart[std::size_t(n)]);
                }
                out.clg_mean[std::size_t(wl)] += w * make_scalar<Scalar>(tally.clg);
            }
        }
    }
    return out;
}

namespace {

// Tally over the conditional measure: sender uniform over feasible senders,
// destination set uniform. Returns (per-sender tallies, their normalizers).
template <class Scalar, class F>
void conditional_enumeration(const RingTopology& ring, TrafficClass cls, int wl, int count, F&& emit) {
    check_size(ring);
    ring.check_wavelength(wl);
    const bool forced = hotspot_forced(ring, cls, wl);
    const int k = count - (forced ? 1 : 0);
    const BinomialTable<Scalar> C(ring.n_nodes());
    std::vector<std::pair<std::vector<int>, int>> feasible;
    for (int S : senders_of(ring, cls)) {
        auto free = free_nodes(ring, cls, S, wl);
        if (k >= 0 && k <= int(free.size())) feasible.emplace_back(std::move(free), S);
    }
    if (feasible.empty()) {
        throw std::invalid_argument("no sender of class " + std::string(to_string(cls)) + " can have " +
                                    std::to_string(count) + " destinations on wavelength " +
                                    std::to_string(wl));
    }
    const std::int64_t scale = tie_scale(ring.nodes_per_wavelength());
    std::vector<ArcChoice> choices;
    for (const auto& [free, S] : feasible) {
        Tally t(ring.n_nodes());
        for_each_subset(free, forced, ring.hotspot(), [&](const std::vector<int>& dests, int kk) {
            if (kk != k) return;
            record(ring, RoutingStrategy::shortest_path, cls, S, wl, dests, scale, false, choices, t);
        });
        const Scalar norm = Scalar(make_scalar<Scalar>(scale) * C(int(free.size()), k) *
                                   make_scalar<Scalar>(std::int64_t(feasible.size())));
        emit(t, norm);
    }
}

}  // namespace

template <class Scalar>
std::vector<Scalar> exact_gap_start_distribution(const RingTopology& ring, TrafficClass cls,
                                                 int wavelength, int count) {
    const int N = ring.n_nodes();
    std::vector<Scalar> out(std::size_t(N) + 1, Scalar{0});
    conditional_enumeration<Scalar>(ring, cls, wavelength, count, [&](const Tally& t, const Scalar& norm) {
        for (int n = 1; n <= N; ++n) {
            if (t.gstart[std::size_t(n)] != 0) out[std::size_t(n)] += ratio<Scalar>(t.gstart[std::size_t(n)], norm);
        }
    });
    return out;
}

template <class Scalar>
Scalar exact_expected_clg(const RingTopology& ring, int wavelength, int count) {
    Scalar out{0};
    conditional_enumeration<Scalar>(ring, TrafficClass::uniform, wavelength, count,
                                    [&](const Tally& t, const Scalar& norm) { out += ratio<Scalar>(t.clg, norm); });
    return out;
}

template struct ExactUtilization<Rational>;
template struct ExactUtilization<long double>;
template ExactUtilization<Rational> exact_utilization(const RingTopology&, const BasicTrafficModel<Rational>&,
                                                      RoutingStrategy);
template ExactUtilization<long double> exact_utilization(const RingTopology&,
                                                         const BasicTrafficModel<long double>&, RoutingStrategy);
template std::vector<Rational> exact_gap_start_distribution<Rational>(const RingTopology&, TrafficClass, int,
                                                                      int);
template std::vector<long double> exact_gap_start_distribution<long double>(const RingTopology&, TrafficClass,
                                                                            int, int);
template Rational exact_expected_clg<Rational>(const RingTopology&, int, int);
template long double exact_expected_clg<long double>(const RingTopology&, int, int);

}  // namespace ringcap
