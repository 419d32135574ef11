#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ringcap/ring.hpp"
#include "ringcap/scalar.hpp"
#include "ringcap/traffic.hpp"

namespace ringcap {

// Pascal triangle, grown on demand. C(n, k) is 0 whenever k < 0, k > n or n < 0.
template <class T>
class BinomialTable {
public:
    explicit BinomialTable(int max_n = 64) { grow(max_n); }

    T operator()(int n, int k) const {
        if (n < 0 || k < 0 || k > n) return T{0};
        std::lock_guard lock(mutex_);
        if (n >= static_cast<int>(rows_.size())) grow(n);
        return rows_[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
    }

private:
    void grow(int max_n) const {
        for (int n = static_cast<int>(rows_.size()); n <= max_n; ++n) {
            std::vector<T> row(static_cast<std::size_t>(n) + 1, T{1});
            for (int k = 1; k < n; ++k) {
                const auto& prev = rows_[static_cast<std::size_t>(n) - 1];
                row[static_cast<std::size_t>(k)] =
                    prev[static_cast<std::size_t>(k) - 1] + prev[static_cast<std::size_t>(k)];
            }
            rows_.push_back(std::move(row));
        }
    }

    mutable std::mutex mutex_;
    mutable std::vector<std::vector<T>> rows_;
};

// Distribution of the largest gap length when l+1 of N ring nodes are active,
// the active set being a uniform random subset.
template <class T>
struct LargestGapPmf {
    int n_nodes = 0;
    int n_active_minus_one = 0;
    std::vector<T> pmf;  // pmf[k] for k in 0..N; pmf[0] = 0

    T operator()(int k) const {
        if (k < 0 || k >= static_cast<int>(pmf.size())) return T{0};
        return pmf[static_cast<std::size_t>(k)];
    }
};

// Memoized gap statistics p_{l,N}, q_{l,N} and g(l,N).
//
// q_{l,N}(k) = p_{l,N}(k) * sum_{m<=k} q_{l-1,N-k}(m)
//            + sum_{m<k} p_{l,N}(m) * q_{l-1,N-m}(k),
// started from q_{0,N} = delta_N and q_{N-1,N} = delta_1. Safe for concurrent
// use; every entry is written once.
template <class T>
class GapDistributions {
public:
    GapDistributions() = default;
    GapDistributions(const GapDistributions&) = delete;
    GapDistributions& operator=(const GapDistributions&) = delete;

    const BinomialTable<T>& binomials() const noexcept { return binom_; }

    // Probability that a given gap has k hops, C(N-k-1, l-1) / C(N-1, l).
    T gap_pmf(int l, int n, int k) const {
        check_domain(l, n);
        if (k < 1 || k > n) return T{0};
        if (l == 0) return k == n ? T{1} : T{0};
        return T(binom_(n - k - 1, l - 1) / binom_(n - 1, l));
    }

    LargestGapPmf<T> largest_gap(int l, int n) const {
        check_domain(l, n);
        std::lock_guard lock(mutex_);
        return {n, l, *table(l, n)};
    }

    // g(l, N); zero for l >= N.
    T expected_largest_gap(int l, int n) const {
        if (l < 0 || n < 0) {
            throw std::domain_error("expected_largest_gap: negative argument (l=" +
                                    std::to_string(l) + ", N=" + std::to_string(n) + ")");
        }
        if (l >= n) return T{0};
        {
            std::lock_guard lock(mutex_);
            auto it = mean_.find({l, n});
            if (it != mean_.end()) return it->second;
        }
        const auto q = largest_gap(l, n);
        T mean{0};
        for (int k = 1; k <= n; ++k) mean += T(k) * q(k);
        std::lock_guard lock(mutex_);
        mean_.emplace(std::make_pair(l, n), mean);
        return mean;
    }

private:
    static void check_domain(int l, int n) {
        if (n < 1 || l < 0 || l > n - 1) {
            throw std::domain_error("gap distribution needs 0 <= l <= N-1 (l=" + std::to_string(l) +
                                    ", N=" + std::to_string(n) + ")");
        }
    }

    using Row = std::vector<T>;

    // Caller holds mutex_.
    std::shared_ptr<const Row> table(int l, int n) const {
        auto key = std::make_pair(l, n);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;

        Row q(static_cast<std::size_t>(n) + 1, T{0});
        if (l == 0) {
            q[static_cast<std::size_t>(n)] = T{1};
        } else if (l == n - 1) {
            q[1] = T{1};
        } else {
            std::vector<T> p(static_cast<std::size_t>(n) + 1, T{0});
            for (int k = 1; k <= n; ++k) p[static_cast<std::size_t>(k)] = gap_pmf(l, n, k);

            // first gap is the largest (ties broken in favour of it)
            for (int k = 1; k < n; ++k) {
                const int rest = n - k;
                if (is_zero(p[static_cast<std::size_t>(k)]) || l - 1 > rest - 1) continue;
                const auto& sub = *table(l - 1, rest);
                T cdf{0};
                for (int m = 1; m <= std::min(k, rest); ++m) cdf += sub[static_cast<std::size_t>(m)];
                q[static_cast<std::size_t>(k)] += p[static_cast<std::size_t>(k)] * cdf;
            }
            // first gap has m < k hops and the rest of the ring holds the largest gap k
            for (int m = 1; m < n; ++m) {
                const int rest = n - m;
                if (is_zero(p[static_cast<std::size_t>(m)]) || l - 1 > rest - 1) continue;
                const auto& sub = *table(l - 1, rest);
                for (int k = m + 1; k <= rest; ++k) {
                    q[static_cast<std::size_t>(k)] +=
                        p[static_cast<std::size_t>(m)] * sub[static_cast<std::size_t>(k)];
                }
            }
        }
        auto row = std::make_shared<const Row>(std::move(q));
        memo_.emplace(key, row);
        return row;
    }

    BinomialTable<T> binom_{64};
    mutable std::mutex mutex_;
    mutable std::map<std::pair<int, int>, std::shared_ptr<const Row>> memo_;
    mutable std::map<std::pair<int, int>, T> mean_;
};

// Process-wide caches.
const GapDistributions<double>& gap_distributions();
const GapDistributions<Rational>& exact_gap_distributions();

double gap_pmf(int l, int n, int k);
LargestGapPmf<double> largest_gap_pmf(int l, int n);
LargestGapPmf<Rational> largest_gap_pmf_exact(int l, int n);
double expected_largest_gap(int l, int n);
Rational expected_largest_gap_exact(int l, int n);

// Distribution of the number of destinations homed on one wavelength
// (mu_{lambda,l}, nu_{lambda,l}, kappa_{lambda,l}).
template <class T>
struct WavelengthFanoutPmf {
    int wavelength = 1;
    TrafficClass traffic_class = TrafficClass::uniform;
    std::vector<T> pmf;  // index l in 0..eta

    T operator[](int count) const {
        if (count < 0 || count >= static_cast<int>(pmf.size())) return T{0};
        return pmf[static_cast<std::size_t>(count)];
    }
    int max_count() const noexcept { return static_cast<int>(pmf.size()) - 1; }
};

template <class T>
WavelengthFanoutPmf<T> wavelength_fanout_pmf(const RingTopology& ring, int wavelength,
                                             TrafficClass cls, const FanoutPmf<T>& base,
                                             const BinomialTable<T>& C) {
    ring.check_wavelength(wavelength);
    validate_fanout(base, ring.n_nodes(), "wavelength_fanout_pmf");
    const int N = ring.n_nodes();
    const int eta = ring.nodes_per_wavelength();
    const bool hotspot_wl = wavelength == ring.n_wavelengths();

    WavelengthFanoutPmf<T> out{wavelength, cls, std::vector<T>(static_cast<std::size_t>(eta) + 1, T{0})};
    for (int c = 0; c <= eta; ++c) {
        T acc{0};
        for (int l = 1; l < N; ++l) {
            const T& w = base[l];
            if (is_zero(w)) continue;
            T num{0};
            T den{1};
            switch (cls) {
                case TrafficClass::uniform:
                    num = C(eta, c) * C(N - eta, l - c);
                    den = C(N, l);
                    break;
                case TrafficClass::hotspot_dest:
                    if (hotspot_wl) {
                        num = C(eta - 1, c - 1) * C(N - eta, l - c);
                    } else {
                        num = C(eta, c) * C(N - eta - 1, l - c - 1);
                    }
                    den = C(N - 1, l - 1);
                    break;
                case TrafficClass::hotspot_src:
                    if (hotspot_wl) {
                        num = C(eta - 1, c) * C(N - eta, l - c);
                    } else {
                        num = C(eta, c) * C(N - 1 - eta, l - c);
                    }
                    den = C(N - 1, l);
                    break;
            }
            if (is_zero(num)) continue;
            acc += T(num / den) * w;
        }
        out.pmf[static_cast<std::size_t>(c)] = acc;
    }
    return out;
}

WavelengthFanoutPmf<double> wavelength_fanout_pmf(const RingTopology& ring, int wavelength,
                                                  TrafficClass cls, const FanoutPmf<double>& base);

}  // namespace ringcap
