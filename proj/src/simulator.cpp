#include "ringcap/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

namespace ringcap {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    return splitmix64(splitmix64(seed) ^ (stream * 0xd1b54a32d192ed03ULL + 1));
}

void StopRule::validate() const {
    auto fail = [](const std::string& m) { throw std::invalid_argument("stop rule: " + m); };
    if (!(relative_halfwidth > 0)) fail("relative_halfwidth must be positive");
    if (!(floor >= 0 && floor < 1)) fail("floor must be in [0, 1)");
    if (batch_size == 0) fail("batch_size must be positive");
    if (max_samples == 0) fail("max_samples must be positive");
    if (min_samples > max_samples) fail("min_samples exceeds max_samples");
    if (threads < 1) fail("threads must be at least 1");
}

UtilizationMatrix::UtilizationMatrix(int n_nodes, int n_wavelengths)
    : n_nodes_(n_nodes),
      n_wavelengths_(n_wavelengths),
      counts_(2 * static_cast<std::size_t>(n_nodes) * static_cast<std::size_t>(n_wavelengths), 0),
      senders_(static_cast<std::size_t>(n_nodes) + 1, 0),
      gap_starts_((static_cast<std::size_t>(n_wavelengths) + 1) * (static_cast<std::size_t>(n_nodes) + 1), 0) {}

std::size_t UtilizationMatrix::index(const SegmentId& s) const {
    if (s.index < 1 || s.index > n_nodes_ || s.wavelength < 1 || s.wavelength > n_wavelengths_) {
        throw std::out_of_range("segment " + to_string(s) + " outside the ring");
    }
    const std::size_t dir = s.direction == Direction::clockwise ? 0 : 1;
    return (dir * static_cast<std::size_t>(n_wavelengths_) + static_cast<std::size_t>(s.wavelength - 1)) *
               static_cast<std::size_t>(n_nodes_) +
           static_cast<std::size_t>(s.index - 1);
}

double UtilizationMatrix::estimate(const SegmentId& s) const {
    if (samples_ == 0) return 0;
    return static_cast<double>(count(s)) / static_cast<double>(samples_);
}

double UtilizationMatrix::ci_halfwidth(const SegmentId& s) const {
    if (samples_ == 0) return 1;
    const double p = estimate(s);
    return z99 * std::sqrt(p * (1 - p) / static_cast<double>(samples_));
}

double UtilizationMatrix::sender_frequency(int node) const {
    if (node < 1 || node > n_nodes_) throw std::out_of_range("node out of range");
    if (samples_ == 0) return 0;
    return static_cast<double>(senders_[static_cast<std::size_t>(node)]) / static_cast<double>(samples_);
}

double UtilizationMatrix::gap_start_frequency(int wavelength, int node) const {
    if (node < 1 || node > n_nodes_ || wavelength < 1 || wavelength > n_wavelengths_) {
        throw std::out_of_range("gap start index out of range");
    }
    if (samples_ == 0) return 0;
    return static_cast<double>(
               gap_starts_[static_cast<std::size_t>(wavelength) * static_cast<std::size_t>(n_nodes_ + 1) +
                           static_cast<std::size_t>(node)]) /
           static_cast<double>(samples_);
}

std::vector<SegmentId> UtilizationMatrix::all_segments() const {
    std::vector<SegmentId> out;
    out.reserve(counts_.size());
    for (Direction d : {Direction::clockwise, Direction::counterclockwise}) {
        for (int wl = 1; wl <= n_wavelengths_; ++wl) {
            for (int n = 1; n <= n_nodes_; ++n) out.push_back({d, n, wl});
        }
    }
    return out;
}

void UtilizationMatrix::merge(const UtilizationMatrix& other) {
    if (other.n_nodes_ != n_nodes_ || other.n_wavelengths_ != n_wavelengths_) {
        throw std::invalid_argument("cannot merge matrices of different rings");
    }
    samples_ += other.samples_;
    for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
    for (std::size_t i = 0; i < senders_.size(); ++i) senders_[i] += other.senders_[i];
    for (std::size_t i = 0; i < gap_starts_.size(); ++i) gap_starts_[i] += other.gap_starts_[i];
}

PacketSampler::PacketSampler(const RingTopology& ring, const TrafficModel& traffic)
    : ring_(ring), mark_(static_cast<std::size_t>(ring.n_nodes()) + 2, 0) {
    traffic.validate(ring.n_nodes());
    cls_ = std::discrete_distribution<int>({traffic.alpha, traffic.beta, traffic.gamma});
    int i = 0;
    for (TrafficClass c : all_traffic_classes) {
        const auto& pmf = traffic.fanout(c);
        std::vector<double> w(pmf.raw().begin() + 1, pmf.raw().end());
        fanout_[i++] = std::discrete_distribution<int>(w.begin(), w.end());
    }
}

// `count` distinct indices out of {1..pool}, each mapped past `skip`
// (index i becomes i+1 once i >= skip), appended in increasing order.
void PacketSampler::draw_subset(Rng& rng, int pool, int count, int skip, std::vector<int>& out) {
    const bool complement = count > pool / 2;
    const int pick = complement ? pool - count : count;
    const std::size_t base = out.size();
    for (int j = pool - pick + 1; j <= pool; ++j) {
        const int t = std::uniform_int_distribution<int>(1, j)(rng);
        const int chosen = mark_[static_cast<std::size_t>(t)] ? j : t;
        mark_[static_cast<std::size_t>(chosen)] = 1;
        if (!complement) out.push_back(chosen);
    }
    auto map = [skip](int i) { return i >= skip ? i + 1 : i; };
    if (complement) {
        for (int i = 1; i <= pool; ++i) {
            if (mark_[static_cast<std::size_t>(i)]) {
                mark_[static_cast<std::size_t>(i)] = 0;
            } else {
                out.push_back(map(i));
            }
        }
    } else {
        std::sort(out.begin() + static_cast<std::ptrdiff_t>(base), out.end());
        for (std::size_t k = base; k < out.size(); ++k) {
            mark_[static_cast<std::size_t>(out[k])] = 0;
            out[k] = map(out[k]);
        }
    }
}

void PacketSampler::sample(Rng& rng, Packet& p) {
    const int N = ring_.n_nodes();
    const int c = cls_(rng);
    p.traffic_class = all_traffic_classes[c];
    const int l = fanout_[c](rng) + 1;
    p.destinations.clear();
    switch (p.traffic_class) {
        case TrafficClass::uniform:
            p.sender = std::uniform_int_distribution<int>(1, N)(rng);
            draw_subset(rng, N - 1, l, p.sender, p.destinations);
            break;
        case TrafficClass::hotspot_dest:
            p.sender = std::uniform_int_distribution<int>(1, N - 1)(rng);
            draw_subset(rng, N - 2, l - 1, p.sender, p.destinations);
            p.destinations.push_back(N);
            break;
        case TrafficClass::hotspot_src:
            p.sender = N;
            draw_subset(rng, N - 1, l, N, p.destinations);
            break;
    }
}

Packet sample_packet(const RingTopology& ring, const TrafficModel& traffic, Rng& rng) {
    PacketSampler s(ring, traffic);
    return s.sample(rng);
}

// Per-block tallies; segment usage goes through circular difference arrays.
class UtilizationAccumulator {
public:
    UtilizationAccumulator(const RingTopology& ring, const TrafficModel& traffic, RoutingStrategy strategy)
        : ring_(ring),
          strategy_(strategy),
          sampler_(ring, traffic),
          N_(ring.n_nodes()),
          L_(ring.n_wavelengths()),
          diff_(2 * static_cast<std::size_t>(L_) * static_cast<std::size_t>(N_ + 2), 0),
          buckets_(static_cast<std::size_t>(L_) + 1) {}

    UtilizationMatrix run(std::uint64_t seed, std::uint64_t packets) {
        UtilizationMatrix m(N_, L_);
        std::fill(diff_.begin(), diff_.end(), 0);
        Rng rng(seed);
        Packet p;
        for (std::uint64_t i = 0; i < packets; ++i) {
            sampler_.sample(rng, p);
            step(rng, p, m);
        }
        m.samples_ = packets;
        for (int dir = 0; dir < 2; ++dir) {
            for (int wl = 1; wl <= L_; ++wl) {
                std::int64_t run = 0;
                const std::size_t row = static_cast<std::size_t>(dir * L_ + wl - 1);
                for (int n = 1; n <= N_; ++n) {
                    run += diff_[row * static_cast<std::size_t>(N_ + 2) + static_cast<std::size_t>(n)];
                    m.counts_[row * static_cast<std::size_t>(N_) + static_cast<std::size_t>(n - 1)] +=
                        static_cast<std::uint64_t>(run);
                }
            }
        }
        return m;
    }

private:
    void add_range(int dir, int wl, int first, int hops) {
        if (hops <= 0) return;
        std::int64_t* d = diff_.data() + static_cast<std::size_t>(dir * L_ + wl - 1) * static_cast<std::size_t>(N_ + 2);
        first = ring_.wrap(first);
        const int last = first + hops - 1;
        d[first] += 1;
        if (last <= N_) {
            d[last + 1] -= 1;
        } else {
            d[N_ + 1] -= 1;
            d[1] += 1;
            d[last - N_ + 1] -= 1;
        }
    }

    void step(Rng& rng, const Packet& p, UtilizationMatrix& m) {
        const int S = p.sender;
        ++m.senders_[static_cast<std::size_t>(S)];
        for (auto& b : buckets_) b.clear();
        for (int d : p.destinations) buckets_[static_cast<std::size_t>((d - 1) % L_ + 1)].push_back(d);
        for (int wl = 1; wl <= L_; ++wl) {
            const auto& f = buckets_[static_cast<std::size_t>(wl)];
            int gap_start = S;
            if (!f.empty()) {
                route_choices(ring_, strategy_, p.traffic_class, S, wl, f, choices_);
                std::size_t pick = 0;
                if (choices_.size() > 1) {
                    pick = std::uniform_int_distribution<std::size_t>(0, choices_.size() - 1)(rng);
                }
                const ArcChoice& a = choices_[pick];
                add_range(0, wl, S + 1, a.cw_hops);
                add_range(1, wl, S - a.ccw_hops + 1, a.ccw_hops);
                gap_start = a.gap_start;
            }
            ++m.gap_starts_[static_cast<std::size_t>(wl) * static_cast<std::size_t>(N_ + 1) +
                            static_cast<std::size_t>(gap_start)];
        }
    }

    const RingTopology& ring_;
    RoutingStrategy strategy_;
    PacketSampler sampler_;
    int N_, L_;
    std::vector<std::int64_t> diff_;
    std::vector<std::vector<int>> buckets_;
    std::vector<ArcChoice> choices_;
};

namespace {

bool stop_reached(const RingTopology& ring, const UtilizationMatrix& m, const StopRule& rule) {
    if (m.samples() < rule.min_samples) return false;
    auto ok = [&](const SegmentId& s) {
        const double p = m.estimate(s);
        return p < rule.floor || m.ci_halfwidth(s) < rule.relative_halfwidth * p;
    };
    if (rule.scope == StopScope::all_segments) {
        for (const auto& s : m.all_segments()) {
            if (!ok(s)) return false;
        }
        return true;
    }
    for (int wl = 1; wl <= ring.n_wavelengths(); ++wl) {
        for (const auto& s : ring.critical_segments(wl)) {
            if (!ok(s)) return false;
        }
    }
    return true;
}

}  // namespace

UtilizationMatrix estimate_utilization(const RingTopology& ring, const TrafficModel& traffic,
                                       RoutingStrategy strategy, std::uint64_t seed,
                                       const StopRule& stop) {
    stop.validate();
    traffic.validate(ring.n_nodes());
    UtilizationMatrix total(ring.n_nodes(), ring.n_wavelengths());
    std::uint64_t next_block = 0;
    const std::uint64_t first_round =
        std::max<std::uint64_t>(1, (stop.min_samples + stop.batch_size - 1) / stop.batch_size);

    while (total.samples() < stop.max_samples) {
        // rounds grow with the work done so far; independent of the thread count
        std::uint64_t blocks = next_block == 0 ? first_round : std::clamp<std::uint64_t>(next_block / 4, 1, 64);
        struct Job {
            std::uint64_t block, packets;
        };
        std::vector<Job> jobs;
        std::uint64_t planned = total.samples();
        for (std::uint64_t b = 0; b < blocks && planned < stop.max_samples; ++b) {
            const std::uint64_t n = std::min(stop.batch_size, stop.max_samples - planned);
            jobs.push_back({next_block++, n});
            planned += n;
        }
        std::vector<UtilizationMatrix> results(jobs.size());
        const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(stop.threads), jobs.size());
        auto work = [&](std::size_t w) {
            UtilizationAccumulator acc(ring, traffic, strategy);
            for (std::size_t j = w; j < jobs.size(); j += workers) {
                results[j] = acc.run(stream_seed(seed, jobs[j].block), jobs[j].packets);
            }
        };
        if (workers <= 1) {
            work(0);
        } else {
            std::vector<std::thread> pool;
            for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
            for (auto& t : pool) t.join();
        }
        for (const auto& r : results) total.merge(r);
        if (stop_reached(ring, total, stop)) {
            total.converged_ = true;
            break;
        }
    }
    return total;
}

CapacityEstimate estimate_capacity(const UtilizationMatrix& m) {
    CapacityEstimate out;
    for (const auto& s : m.all_segments()) {
        const double p = m.estimate(s);
        if (p > out.max_util) {
            out.max_util = p;
            out.argmax = s;
        }
    }
    if (out.max_util <= 0) throw std::runtime_error("no utilization observed");
    out.ci_halfwidth = m.ci_halfwidth(out.argmax);
    out.capacity = 1.0 / out.max_util;
    return out;
}

}  // namespace ringcap
