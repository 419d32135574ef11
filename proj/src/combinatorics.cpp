#include "ringcap/combinatorics.hpp"

namespace ringcap {

const GapDistributions<double>& gap_distributions() {
    static const GapDistributions<double> instance;
    return instance;
}

const GapDistributions<Rational>& exact_gap_distributions() {
    static const GapDistributions<Rational> instance;
    return instance;
}

double gap_pmf(int l, int n, int k) { return gap_distributions().gap_pmf(l, n, k); }

LargestGapPmf<double> largest_gap_pmf(int l, int n) { return gap_distributions().largest_gap(l, n); }

LargestGapPmf<Rational> largest_gap_pmf_exact(int l, int n) {
    return exact_gap_distributions().largest_gap(l, n);
}

double expected_largest_gap(int l, int n) { return gap_distributions().expected_largest_gap(l, n); }

Rational expected_largest_gap_exact(int l, int n) {
    return exact_gap_distributions().expected_largest_gap(l, n);
}

WavelengthFanoutPmf<double> wavelength_fanout_pmf(const RingTopology& ring, int wavelength,
                                                  TrafficClass cls, const FanoutPmf<double>& base) {
    return wavelength_fanout_pmf(ring, wavelength, cls, base, gap_distributions().binomials());
}

}  // namespace ringcap
