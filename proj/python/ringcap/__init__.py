"""Segment utilization and multicast capacity of a WDM packet ring with a hotspot."""

from fractions import Fraction

from . import _core
from ._core import (
    Direction,
    RingTopology,
    RoutingStrategy,
    SegmentId,
    TrafficClass,
    TrafficModel,
    advise,
    bounds_segment_1_1,
    bounds_segment_L_L,
    bounds_segment_N_L,
    estimate_capacity,
    estimate_utilization,
    expected_largest_gap,
    gap_pmf,
    largest_gap_pmf,
    make_traffic,
    max_utilization_sp,
    oc_upper_bound,
    recommend_routing,
    run_sweep,
    thresholds,
    wavelength_fanout_pmf,
)


def _frac(s):
    return Fraction(s)


def expected_largest_gap_exact(l, n):
    return _frac(_core.expected_largest_gap_exact(l, n))


def largest_gap_pmf_exact(l, n):
    return {k: _frac(v) for k, v in _core.largest_gap_pmf_exact(l, n).items()}


def exact_utilization(topology, alpha, beta, gamma, mu, nu=None, kappa=None,
                      strategy=RoutingStrategy.shortest_path):
    """Exact utilization of every segment as {(direction, index, wavelength): Fraction}.

    Weights are anything Fraction() accepts. A fanout is a preset name ("MC") or a
    {fanout: probability} dict; nu and kappa default to mu.
    """
    nu = mu if nu is None else nu
    kappa = mu if kappa is None else kappa

    def fan(f):
        return f if isinstance(f, str) else {int(k): str(Fraction(v)) for k, v in f.items()}

    raw = _core.exact_utilization(topology, str(Fraction(alpha)), str(Fraction(beta)), str(Fraction(gamma)),
                                  fan(mu), fan(nu), fan(kappa), strategy)
    return {k: _frac(v) for k, v in raw.items()}


__all__ = [name for name in dir() if not name.startswith("_")]
