#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ringcap/scalar.hpp"

namespace ringcap {

enum class TrafficClass { uniform, hotspot_dest, hotspot_src };

inline constexpr TrafficClass all_traffic_classes[] = {
    TrafficClass::uniform, TrafficClass::hotspot_dest, TrafficClass::hotspot_src};

const char* to_string(TrafficClass c);

// Distribution of the number of destinations l in {1..N-1}.
template <class T>
class FanoutPmf {
public:
    FanoutPmf() = default;
    explicit FanoutPmf(int n_nodes) : mass_(static_cast<std::size_t>(n_nodes), T{0}) {}

    int n_nodes() const noexcept { return static_cast<int>(mass_.size()); }
    int max_fanout() const noexcept { return n_nodes() - 1; }

    // Zero outside {1..N-1}.
    T operator[](int l) const {
        if (l < 1 || l >= n_nodes()) return T{0};
        return mass_[static_cast<std::size_t>(l)];
    }

    void set(int l, T value) {
        if (l < 1 || l >= n_nodes()) {
            throw std::out_of_range("fanout " + std::to_string(l) + " outside {1.." +
                                    std::to_string(max_fanout()) + "}");
        }
        mass_[static_cast<std::size_t>(l)] = std::move(value);
    }

    T total() const {
        T s{0};
        for (const auto& m : mass_) s += m;
        return s;
    }

    const std::vector<T>& raw() const noexcept { return mass_; }

private:
    std::vector<T> mass_;  // index 0 unused
};

namespace detail {
template <class T>
bool sums_to_one(const T& total) {
    if constexpr (is_rational_v<T>) {
        return total == 1;
    } else {
        return std::abs(static_cast<double>(total) - 1.0) <= 1e-9;
    }
}
}  // namespace detail

// Throws std::invalid_argument if the pmf has negative mass or does not sum
// to one (exactly for rationals, within 1e-9 otherwise).
template <class T>
void validate_fanout(const FanoutPmf<T>& pmf, int n_nodes, std::string_view name) {
    if (pmf.n_nodes() != n_nodes) {
        throw std::invalid_argument(std::string(name) + ": fanout pmf is for " +
                                    std::to_string(pmf.n_nodes()) + " nodes, ring has " +
                                    std::to_string(n_nodes));
    }
    for (int l = 1; l < n_nodes; ++l) {
        if (pmf[l] < 0) {
            throw std::invalid_argument(std::string(name) + ": negative mass at fanout " +
                                        std::to_string(l));
        }
    }
    if (!detail::sums_to_one(pmf.total())) {
        throw std::invalid_argument(std::string(name) + ": fanout pmf sums to " +
                                    std::to_string(to_double(pmf.total())) + ", not 1");
    }
}

// Traffic mix (alpha uniform, beta hotspot destination, gamma hotspot source)
// with one fanout distribution per class.
template <class T>
struct BasicTrafficModel {
    T alpha{1};
    T beta{0};
    T gamma{0};
    FanoutPmf<T> uniform;       // mu_l
    FanoutPmf<T> hotspot_dest;  // nu_l
    FanoutPmf<T> hotspot_src;   // kappa_l

    int n_nodes() const noexcept { return uniform.n_nodes(); }

    const T& weight(TrafficClass c) const {
        switch (c) {
            case TrafficClass::uniform: return alpha;
            case TrafficClass::hotspot_dest: return beta;
            case TrafficClass::hotspot_src: return gamma;
        }
        throw std::logic_error("unknown traffic class");
    }

    const FanoutPmf<T>& fanout(TrafficClass c) const {
        switch (c) {
            case TrafficClass::uniform: return uniform;
            case TrafficClass::hotspot_dest: return hotspot_dest;
            case TrafficClass::hotspot_src: return hotspot_src;
        }
        throw std::logic_error("unknown traffic class");
    }

    void validate(int ring_nodes) const {
        if (alpha < 0 || beta < 0 || gamma < 0) {
            throw std::invalid_argument("traffic mix: alpha, beta, gamma must be non-negative");
        }
        if (!detail::sums_to_one(T(alpha + beta + gamma))) {
            throw std::invalid_argument("traffic mix: alpha + beta + gamma = " +
                                        std::to_string(to_double(T(alpha + beta + gamma))) +
                                        ", expected 1");
        }
        validate_fanout(uniform, ring_nodes, "uniform fanout (mu)");
        validate_fanout(hotspot_dest, ring_nodes, "hotspot-destination fanout (nu)");
        validate_fanout(hotspot_src, ring_nodes, "hotspot-source fanout (kappa)");
    }
};

using TrafficModel = BasicTrafficModel<double>;
using ExactTrafficModel = BasicTrafficModel<Rational>;

template <class To, class From>
FanoutPmf<To> convert_fanout(const FanoutPmf<From>& in) {
    FanoutPmf<To> out(in.n_nodes());
    for (int l = 1; l < in.n_nodes(); ++l) {
        if constexpr (std::is_same_v<To, From>) {
            out.set(l, in[l]);
        } else if constexpr (is_rational_v<To>) {
            out.set(l, from_double<To>(static_cast<double>(in[l])));
        } else {
            out.set(l, static_cast<To>(to_double(in[l])));
        }
    }
    return out;
}

template <class To, class From>
BasicTrafficModel<To> convert_traffic(const BasicTrafficModel<From>& in) {
    auto conv = [](const From& x) -> To {
        if constexpr (std::is_same_v<To, From>) {
            return x;
        } else if constexpr (is_rational_v<To>) {
            return from_double<To>(static_cast<double>(x));
        } else {
            return static_cast<To>(to_double(x));
        }
    };
    return {conv(in.alpha),
            conv(in.beta),
            conv(in.gamma),
            convert_fanout<To>(in.uniform),
            convert_fanout<To>(in.hotspot_dest),
            convert_fanout<To>(in.hotspot_src)};
}

// Named fanout distributions used in the evaluation scenarios.
//   unicast    (UC): l = 1
//   mixed      (MI): l = 1 w.p. 1/2, otherwise uniform on {2..N-1}
//   multicast  (MC): uniform on {1..N-1}
//   broadcast  (BC): l = N-1
//   paper_fig2     : l = 1 w.p. 1/4, otherwise uniform on {2..N-1}
enum class FanoutPreset { unicast, mixed, multicast, broadcast, paper_fig2 };

FanoutPreset parse_fanout_preset(std::string_view name);
const char* to_string(FanoutPreset p);

template <class T>
FanoutPmf<T> make_fanout(FanoutPreset preset, int n_nodes) {
    FanoutPmf<T> pmf(n_nodes);
    const int N = n_nodes;
    auto need_three = [&] {
        if (N < 3) throw std::invalid_argument("fanout preset needs at least 3 nodes");
    };
    switch (preset) {
        case FanoutPreset::unicast:
            pmf.set(1, make_scalar<T>(1));
            break;
        case FanoutPreset::broadcast:
            pmf.set(N - 1, make_scalar<T>(1));
            break;
        case FanoutPreset::multicast:
            for (int l = 1; l < N; ++l) pmf.set(l, make_scalar<T>(1, N - 1));
            break;
        case FanoutPreset::mixed:
            need_three();
            pmf.set(1, make_scalar<T>(1, 2));
            for (int l = 2; l < N; ++l) pmf.set(l, make_scalar<T>(1, 2 * (N - 2)));
            break;
        case FanoutPreset::paper_fig2:
            need_three();
            pmf.set(1, make_scalar<T>(1, 4));
            for (int l = 2; l < N; ++l) pmf.set(l, make_scalar<T>(3, 4 * (N - 2)));
            break;
    }
    return pmf;
}

template <class T>
FanoutPmf<T> point_fanout(int fanout, int n_nodes) {
    FanoutPmf<T> pmf(n_nodes);
    pmf.set(fanout, make_scalar<T>(1));
    return pmf;
}

// Uniform on {1..max_fanout}.
template <class T>
FanoutPmf<T> uniform_fanout_upto(int max_fanout, int n_nodes) {
    if (max_fanout < 1 || max_fanout >= n_nodes) {
        throw std::invalid_argument("uniform fanout bound " + std::to_string(max_fanout) +
                                    " outside {1.." + std::to_string(n_nodes - 1) + "}");
    }
    FanoutPmf<T> pmf(n_nodes);
    for (int l = 1; l <= max_fanout; ++l) pmf.set(l, make_scalar<T>(1, max_fanout));
    return pmf;
}

// Same preset for all three classes.
template <class T>
BasicTrafficModel<T> make_traffic(T alpha, T beta, T gamma, FanoutPreset preset, int n_nodes) {
    auto pmf = make_fanout<T>(preset, n_nodes);
    return {std::move(alpha), std::move(beta), std::move(gamma), pmf, pmf, pmf};
}

}  // namespace ringcap
