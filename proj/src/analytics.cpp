#include "ringcap/analytics.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <stdexcept>
#include <vector>

#include "ringcap/combinatorics.hpp"

namespace ringcap {

double Threshold::value() const {
    if (!value_) throw std::logic_error("threshold is unbounded");
    return *value_;
}

double Threshold::as_double() const noexcept {
    return value_ ? *value_ : std::numeric_limits<double>::infinity();
}

std::string to_string(const Threshold& t) {
    if (t.is_unbounded()) return "inf";
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, t.value());
    return std::string(buf, res.ptr);
}

const char* to_string(Recommendation r) {
    switch (r) {
        case Recommendation::shortest_path: return "shortest_path";
        case Recommendation::one_copy: return "one_copy";
        case Recommendation::indeterminate: return "indeterminate";
    }
    return "?";
}

namespace {

// Everything the closed forms need, evaluated once.
struct Terms {
    int N, L, eta;
    double alpha, beta, gamma;
    WavelengthFanoutPmf<double> mu1, nu1, kappa1, muL, nuL, kappaL;
    std::vector<double> g_minus, g_mid, g_plus;  // g(l, eta-1), g(l, eta), g(l, eta+1)

    Terms(const RingTopology& ring, const TrafficModel& t)
        : N(ring.n_nodes()),
          L(ring.n_wavelengths()),
          eta(ring.nodes_per_wavelength()),
          alpha(t.alpha),
          beta(t.beta),
          gamma(t.gamma),
          mu1(wavelength_fanout_pmf(ring, 1, TrafficClass::uniform, t.uniform)),
          nu1(wavelength_fanout_pmf(ring, 1, TrafficClass::hotspot_dest, t.hotspot_dest)),
          kappa1(wavelength_fanout_pmf(ring, 1, TrafficClass::hotspot_src, t.hotspot_src)),
          muL(wavelength_fanout_pmf(ring, L, TrafficClass::uniform, t.uniform)),
          nuL(wavelength_fanout_pmf(ring, L, TrafficClass::hotspot_dest, t.hotspot_dest)),
          kappaL(wavelength_fanout_pmf(ring, L, TrafficClass::hotspot_src, t.hotspot_src)) {
        t.validate(N);
        for (int l = 0; l <= eta; ++l) {
            g_minus.push_back(expected_largest_gap(l, eta - 1));
            g_mid.push_back(expected_largest_gap(l, eta));
            g_plus.push_back(expected_largest_gap(l, eta + 1));
        }
    }

    double ratio() const { return double(N) / double(N - 1); }
    double slack() const { return 1.0 + double(L - 1) / double(N); }

    // sum_{l=0}^{eta} w(l) p[l]
    template <class F>
    double sum(const WavelengthFanoutPmf<double>& p, F w, int from = 0, int to = -1) const {
        if (to < 0) to = eta;
        double s = 0;
        for (int l = from; l <= to; ++l) s += w(l) * p[l];
        return s;
    }

    static double frac(int l) { return double(l) / double(l + 1); }

    // gamma-free parts of the two competing terms and their gamma slopes
    double first_beta_term() const {  // (beta / 2 eta) sum g(l,eta) nu_{1,l}
        return beta / (2.0 * eta) * sum(nu1, [&](int l) { return g_mid[std::size_t(l)]; });
    }
    double first_gamma_slope() const { return sum(kappa1, frac, 1); }
    double last_beta_term() const {
        return beta * sum(nuL, [](int l) { return 1.0 / (l + 1); }, 1);
    }
    double last_gamma_slope() const { return sum(kappaL, frac, 1, eta - 1); }
};

}  // namespace

CriticalBounds bounds_segment_1_1(const RingTopology& ring, const TrafficModel& traffic) {
    const Terms t(ring, traffic);
    const double r = t.ratio();
    auto mix = [&](const std::vector<double>& g) {
        double s = 0;
        for (int l = 0; l <= t.eta; ++l) {
            s += g[std::size_t(l)] * (t.alpha * t.mu1[l] + r * t.beta * t.nu1[l]);
        }
        return s / (2.0 * t.eta);
    };
    auto tail = [&](auto w) {
        double s = 0;
        for (int l = 0; l <= t.eta; ++l) {
            s += w(l) * (t.gamma * t.kappa1[l] - t.beta * t.nu1[l] / (t.N - 1));
        }
        return s;
    };
    CriticalBounds b;
    b.segment = ring.first_segment();
    b.lower = 0.5 * (t.alpha + r * t.beta) - mix(t.g_plus) + tail(Terms::frac);
    b.upper = 0.5 * t.slack() * (t.alpha + r * t.beta) - mix(t.g_minus) +
              tail([&](int l) { return double(l) * (t.eta + 1) / (double(l + 1) * t.eta); });
    double approx_gap = 0;
    for (int l = 0; l <= t.eta; ++l) {
        approx_gap += t.g_mid[std::size_t(l)] * (t.alpha * t.mu1[l] + t.beta * t.nu1[l]);
    }
    b.approx = 0.5 * (t.alpha + t.beta) - approx_gap / (2.0 * t.eta) +
               t.gamma * t.sum(t.kappa1, Terms::frac);
    return b;
}

namespace {

double alpha_part(const Terms& t, const std::vector<double>& g, double slack) {
    double s = 0;
    for (int l = 0; l <= t.eta; ++l) s += g[std::size_t(l)] * t.muL[l];
    return 0.5 * t.alpha * (slack - s / t.eta);
}

double gamma_part_L(const Terms& t) {
    return t.gamma * t.sum(t.kappaL, Terms::frac, 0, t.eta - 1);
}

}  // namespace

CriticalBounds bounds_segment_L_L(const RingTopology& ring, const TrafficModel& traffic) {
    const Terms t(ring, traffic);
    const double eta = t.eta;
    CriticalBounds b;
    b.segment = ring.last_wavelength_segment();
    b.lower = alpha_part(t, t.g_plus, 1.0) +
              0.5 * t.beta *
                  (1.0 - t.sum(t.nuL, [&](int l) { return 2.0 * (eta + 1) / ((l + 1) * eta); }, 1)) +
              gamma_part_L(t);
    b.upper = alpha_part(t, t.g_minus, t.slack()) +
              0.5 * t.beta *
                  (t.slack() - t.sum(t.nuL,
                                     [&](int l) {
                                         return 2.0 * (l * eta - 1) / (double(l + 1) * l * eta);
                                     },
                                     1)) +
              gamma_part_L(t);
    b.approx = 0.5 * (t.alpha + t.beta) -
               t.alpha / (2.0 * eta) * t.sum(t.muL, [&](int l) { return t.g_mid[std::size_t(l)]; }) -
               t.last_beta_term() + gamma_part_L(t);
    return b;
}

CriticalBounds bounds_segment_N_L(const RingTopology& ring, const TrafficModel& traffic) {
    const Terms t(ring, traffic);
    CriticalBounds b;
    b.segment = ring.hotspot_segment();
    b.lower = alpha_part(t, t.g_plus, 1.0) + 0.5 * t.beta;
    b.upper = alpha_part(t, t.g_minus, t.slack()) + 0.5 * t.beta;
    b.approx = 0.5 * (t.alpha + t.beta) -
               t.alpha / (2.0 * t.eta) *
                   t.sum(t.muL, [&](int l) { return t.g_mid[std::size_t(l)]; });
    return b;
}

Thresholds thresholds(const RingTopology& ring, const TrafficModel& traffic) {
    const Terms t(ring, traffic);
    auto th1 = [](double num, double den) {
        return den > 0 ? Threshold(num / den) : Threshold::unbounded();
    };
    auto th2 = [](double num, double den) {
        return den > 0.5 ? Threshold(num / (den - 0.5)) : Threshold::unbounded();
    };
    const double n1 = t.first_beta_term(), d1 = t.first_gamma_slope();
    const double nL = t.last_beta_term(), dL = t.last_gamma_slope();

    Thresholds out;
    out.th1_first = th1(n1, d1);
    out.th1_last = th1(nL, dL);
    out.th2_first = th2(n1, d1);
    out.th2_last = th2(nL, dL);
    out.gamma_th1 = out.th1_first.as_double() <= out.th1_last.as_double() ? out.th1_first
                                                                            : out.th1_last;
    out.gamma_th2 = out.th2_first.as_double() >= out.th2_last.as_double() ? out.th2_first
                                                                            : out.th2_last;
    return out;
}

double oc_upper_bound(const RingTopology& ring, const TrafficModel& traffic) {
    const Terms t(ring, traffic);
    return 0.5 * (t.alpha + t.beta + t.gamma) -
           t.alpha / (2.0 * t.eta) *
               t.sum(t.mu1, [&](int l) { return t.g_mid[std::size_t(l)]; }, 0, t.eta - 1);
}

Recommendation recommend_routing(const RingTopology& ring, const TrafficModel& traffic) {
    const auto th = thresholds(ring, traffic);
    if (traffic.gamma <= th.gamma_th1) return Recommendation::shortest_path;
    if (traffic.gamma >= th.gamma_th2) return Recommendation::one_copy;
    return Recommendation::indeterminate;
}

Recommendation coarse_recommendation(const RingTopology& ring, const TrafficModel& traffic) {
    const double a1 = bounds_segment_1_1(ring, traffic).approx;
    const double aL = bounds_segment_L_L(ring, traffic).approx;
    if (a1 < 0.5 && aL < 0.5) return Recommendation::shortest_path;
    if (a1 > 0.5 || aL > 0.5) return Recommendation::one_copy;
    return Recommendation::indeterminate;
}

CapacityReport max_utilization_sp(const RingTopology& ring, const TrafficModel& traffic) {
    CapacityReport r;
    r.critical = {bounds_segment_1_1(ring, traffic), bounds_segment_L_L(ring, traffic),
                  bounds_segment_N_L(ring, traffic)};
    r.max_util_approx = std::max({r.critical[0].approx, r.critical[1].approx, r.critical[2].approx});
    r.capacity = r.max_util_approx > 0 ? 1.0 / r.max_util_approx
                                       : std::numeric_limits<double>::infinity();
    r.thresholds = thresholds(ring, traffic);
    if (traffic.gamma <= r.thresholds.gamma_th1) {
        r.recommendation = Recommendation::shortest_path;
    } else if (traffic.gamma >= r.thresholds.gamma_th2) {
        r.recommendation = Recommendation::one_copy;
    }
    r.oc_bound = oc_upper_bound(ring, traffic);
    r.coarse_recommendation = coarse_recommendation(ring, traffic);
    return r;
}

}  // namespace ringcap
