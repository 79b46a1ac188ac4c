# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: the bracket state sum and the Fourier Clausen sum."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sin

cnp.import_array()


from ._kernels_py import _crossing_order


cdef inline int _join(unsigned char* m, int x, int y) noexcept nogil:
    """Join the path ends at arcs x and y in the pairing ``m``; 1 if a loop closes.

    ``m[a]`` is one plus the arc at the other end of the open path ending at
    ``a``, or 0 when ``a`` is not an open end.
    """
    cdef int px, py
    if x == y:
        m[x] = 0
        return 1
    px = <int>m[x] - 1
    py = <int>m[y] - 1
    m[x] = 0
    m[y] = 0
    if px < 0 and py < 0:
        m[x] = y + 1
        m[y] = x + 1
        return 0
    if px < 0:
        m[py] = x + 1
        m[x] = py + 1
        return 0
    if py < 0:
        m[px] = y + 1
        m[y] = px + 1
        return 0
    if px == y:
        return 1
    m[px] = py + 1
    m[py] = px + 1
    return 0


cdef void _add_shifted(cnp.int64_t[::1] acc, cnp.int64_t[::1] tally, Py_ssize_t shift) noexcept nogil:
    cdef Py_ssize_t j, n = tally.shape[0] - shift
    for j in range(n):
        if tally[j]:
            acc[j + shift] += tally[j]


def bracket_histogram(cnp.int32_t[:, ::1] pd, int narcs):
    """Count smoothing states by (number of ab|cd smoothings, number of loops).

    Row ``i`` of ``pd`` holds the four arc labels of crossing ``i`` in
    counterclockwise order; labels run over ``0..narcs-1``.  Smoothing
    (0,1)(2,3) is the counted kind.  Crossings are contracted one at a time
    and partial states with the same open-end pairing are merged, as in the
    pure-Python version, with the pairing and tallies handled in C.
    """
    cdef int c = pd.shape[0]
    cdef int width = narcs + 2
    cdef Py_ssize_t size = (c + 1) * width
    cdef int i, bit, closed
    cdef int u1, v1, u2, v2
    cdef bytearray scratch
    cdef unsigned char* m
    if narcs > 254:
        raise ValueError("too many arcs")
    hist_np = np.zeros((c + 1, width), dtype=np.int64)
    if c == 0:
        hist_np[0, 0] = 1
        return hist_np
    rows = [tuple(int(pd[i, j]) for j in range(4)) for i in range(c)]
    start = np.zeros(size, dtype=np.int64)
    start[0] = 1
    states = {bytes(narcs): start}
    for i in _crossing_order(rows):
        a, b, cc, d = rows[i]
        nxt = {}
        for key, tally in states.items():
            for bit in (1, 0):
                if bit:
                    u1, v1, u2, v2 = a, b, cc, d
                else:
                    u1, v1, u2, v2 = a, d, b, cc
                scratch = bytearray(key)
                m = scratch
                closed = _join(m, u1, v1) + _join(m, u2, v2)
                newkey = bytes(scratch)
                acc = nxt.get(newkey)
                if acc is None:
                    acc = np.zeros(size, dtype=np.int64)
                    nxt[newkey] = acc
                _add_shifted(acc, tally, bit * width + closed)
        states = nxt
    final = states[bytes(narcs)]
    hist_np[:, :] = final.reshape(c + 1, width)
    return hist_np


def fourier_clausen(double x, long nterms):
    """Partial sum of sin(k x) / k**2 for k = 1..nterms."""
    cdef double s = 0.0
    cdef long k
    cdef double kd
    with nogil:
        # summed from the small terms up to limit cancellation error
        k = nterms
        while k >= 1:
            kd = <double>k
            s += sin(kd * x) / (kd * kd)
            k -= 1
    return s
