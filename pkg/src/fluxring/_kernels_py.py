"""NumPy implementations of the hot kernels.

Fallback backend used when the compiled extension is unavailable (or when
FLUXRING_PURE_PYTHON is set).  Results must agree with the compiled kernels
to floating-point roundoff; the mirror-folded first moment is required to
cancel *exactly* for state sets symmetric about phi, so both backends fold
contributions pairwise before summing.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"


def boltzmann_reduce(delta, beta):
    """Reduce Boltzmann weights w_n = exp(-beta*delta_n^2) over one flux point.

    delta holds n - phi for the truncated state set, in ascending order.
    The largest weight is shifted to 1 before exponentiating.

    Returns (z, s1, s2, edge) with
      z    = sum w
      s1   = sum w*delta, folded over the mirror pairing i <-> L-1-i so that
             a symmetric spectrum gives exactly 0.0
      s2   = sum w*delta^2
      edge = max(w[0], w[-1]) / max(w), the truncation residual
    """
    delta = np.asarray(delta, dtype=float)
    d2 = delta * delta
    w = np.exp(-beta * (d2 - d2.min()))
    c = w * delta
    s1 = 0.5 * float(np.sum(c + c[::-1]))
    z = float(np.sum(w))
    s2 = float(np.sum(w * d2))
    edge = float(max(w[0], w[-1]) / np.max(w))
    return z, s1, s2, edge


def decay_cycle_sums(closed_dur, open_dur, i_p, tau, r_b):
    """Exact per-cycle integrals of a pinned-then-decaying loop current.

    Cycle k holds the current at i_p for closed_dur[k] (zero segment
    voltage), then lets it decay with time constant tau through the normal
    segment for open_dur[k].

    Returns (int_vb, int_i, int_diss, sum_vb_sq):
      int_vb    = integral of the segment voltage r_b * I(t)
      int_i     = integral of I(t)
      int_diss  = integral of I(t)^2 * r_b (open intervals only)
      sum_vb_sq = sum over cycles of (per-cycle voltage integral)^2,
                  used for the Monte Carlo standard error
    """
    closed_dur = np.asarray(closed_dur, dtype=float)
    open_dur = np.asarray(open_dur, dtype=float)
    decay = -np.expm1(-open_dur / tau)          # 1 - exp(-d/tau)
    decay2 = -np.expm1(-2.0 * open_dur / tau)   # 1 - exp(-2d/tau)
    vb = r_b * i_p * tau * decay
    int_vb = float(np.sum(vb))
    int_i = float(np.sum(closed_dur) * i_p + np.sum(i_p * tau * decay))
    int_diss = float(np.sum(r_b * i_p * i_p * (tau / 2.0) * decay2))
    sum_vb_sq = float(np.sum(vb * vb))
    return int_vb, int_i, int_diss, sum_vb_sq


def sample_piecewise_decay(times, bounds, i_p, tau):
    """Evaluate I(t) on a sample grid for an alternating closed/open trajectory.

    bounds[0] = 0 starts a closed interval; even segments are closed
    (I = i_p), odd segments decay from i_p with time constant tau.
    times must be sorted ascending and lie within [bounds[0], end of run].
    """
    times = np.asarray(times, dtype=float)
    bounds = np.asarray(bounds, dtype=float)
    seg = np.searchsorted(bounds, times, side="right") - 1
    seg = np.clip(seg, 0, len(bounds) - 1)
    start = bounds[seg]
    current = np.where(
        seg % 2 == 0,
        i_p,
        i_p * np.exp(-(times - start) / tau),
    )
    return current
