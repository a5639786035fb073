# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the NumPy reference kernels.

Every arithmetic step mirrors ``reference.py`` operation for operation so
both backends stay bit-identical (IEEE doubles, same order of operations).
"""

from libc.math cimport floor, ceil

import numpy as np


def quantize_midrise(samples, double step, double full_scale):
    """Uniform mid-rise quantization with symmetric clipping."""
    cdef double[::1] x = np.ascontiguousarray(samples, dtype=np.float64)
    cdef Py_ssize_t n = x.shape[0]
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef double k_top = ceil(full_scale / step) - 1.0
    cdef double k_lo = -(k_top + 1.0)
    cdef double k
    cdef Py_ssize_t i
    for i in range(n):
        k = floor(x[i] / step)
        if k > k_top:
            k = k_top
        elif k < k_lo:
            k = k_lo
        out[i] = (k + 0.5) * step
    return out_arr


def unpack_symbols(raw, Py_ssize_t n_symbols, int bits_per_symbol):
    """Split a big-endian bit stream into unsigned integer symbols."""
    cdef const unsigned char[::1] buf = raw
    cdef Py_ssize_t total = n_symbols * bits_per_symbol
    if buf.shape[0] * 8 < total:
        raise ValueError("bit stream too short for requested symbol count")
    out_arr = np.empty(n_symbols, dtype=np.int64)
    cdef long long[::1] out = out_arr
    cdef Py_ssize_t i, pos
    cdef int j
    cdef long long u
    for i in range(n_symbols):
        u = 0
        pos = i * bits_per_symbol
        for j in range(bits_per_symbol):
            u = (u << 1) | ((buf[(pos + j) >> 3] >> (7 - ((pos + j) & 7))) & 1)
        out[i] = u
    return out_arr
