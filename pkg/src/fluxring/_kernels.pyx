# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels.

Same contracts as _kernels_py; see that module for the full docstrings.
The mirror-folded first moment in boltzmann_reduce pairs contributions
i <-> L-1-i so symmetric spectra cancel exactly, bit for bit.
"""

from libc.math cimport exp, expm1
from libc.stdlib cimport free, malloc

BACKEND = "compiled"


def boltzmann_reduce(double[::1] delta, double beta):
    cdef Py_ssize_t i, n = delta.shape[0]
    cdef double d2min, d2, z, s1, s2, wmax, edge
    cdef double *w
    cdef double *c
    if n == 0:
        raise ValueError("empty state set")

    d2min = delta[0] * delta[0]
    for i in range(n):
        d2 = delta[i] * delta[i]
        if d2 < d2min:
            d2min = d2

    w = <double *> malloc(n * sizeof(double))
    c = <double *> malloc(n * sizeof(double))
    if w == NULL or c == NULL:
        free(w)
        free(c)
        raise MemoryError()
    try:
        z = 0.0
        s2 = 0.0
        wmax = 0.0
        for i in range(n):
            d2 = delta[i] * delta[i]
            w[i] = exp(-beta * (d2 - d2min))
            c[i] = w[i] * delta[i]
            z += w[i]
            s2 += w[i] * d2
            if w[i] > wmax:
                wmax = w[i]
        s1 = 0.0
        for i in range(n):
            s1 += 0.5 * (c[i] + c[n - 1 - i])
        edge = w[0] if w[0] > w[n - 1] else w[n - 1]
        edge /= wmax
    finally:
        free(w)
        free(c)
    return z, s1, s2, edge


def decay_cycle_sums(double[::1] closed_dur, double[::1] open_dur,
                     double i_p, double tau, double r_b):
    cdef Py_ssize_t k, n = open_dur.shape[0]
    cdef double int_vb = 0.0, int_i = 0.0, int_diss = 0.0, sum_vb_sq = 0.0
    cdef double decay, decay2, vb
    if closed_dur.shape[0] != n:
        raise ValueError("closed/open duration arrays must have equal length")
    for k in range(n):
        decay = -expm1(-open_dur[k] / tau)
        decay2 = -expm1(-2.0 * open_dur[k] / tau)
        vb = r_b * i_p * tau * decay
        int_vb += vb
        int_i += closed_dur[k] * i_p + i_p * tau * decay
        int_diss += r_b * i_p * i_p * (tau / 2.0) * decay2
        sum_vb_sq += vb * vb
    return int_vb, int_i, int_diss, sum_vb_sq


def sample_piecewise_decay(double[::1] times, double[::1] bounds,
                           double i_p, double tau):
    import numpy as np
    cdef Py_ssize_t i, j = 0, n = times.shape[0], m = bounds.shape[0]
    out_arr = np.empty(n, dtype=float)
    cdef double[::1] out = out_arr
    for i in range(n):
        while j + 1 < m and bounds[j + 1] <= times[i]:
            j += 1
        if j % 2 == 0:
            out[i] = i_p
        else:
            out[i] = i_p * exp(-(times[i] - bounds[j]) / tau)
    return out_arr
