# cython: boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled scan kernels; see _kernels_py for the reference semantics."""

import numpy as np


def coset_affine_bits(const unsigned char[::1] f,
                      const unsigned short[:, ::1] spans,
                      const unsigned short[:, ::1] reps,
                      const unsigned char[::1] lut):
    cdef Py_ssize_t m_rows = spans.shape[0]
    cdef Py_ssize_t s = spans.shape[1]
    cdef Py_ssize_t c = reps.shape[1]
    cdef Py_ssize_t i, j, t
    cdef unsigned int pattern
    cdef unsigned short rep
    out_arr = np.empty((m_rows, c), dtype=np.uint8)
    cdef unsigned char[:, ::1] out = out_arr
    for i in range(m_rows):
        for j in range(c):
            rep = reps[i, j]
            pattern = 0
            for t in range(s):
                pattern |= (<unsigned int> (f[rep ^ spans[i, t]] & 1)) << t
            out[i, j] = lut[pattern]
    return out_arr


def coset_affine_all(const unsigned char[::1] f,
                     const unsigned short[:, ::1] spans,
                     const unsigned short[:, ::1] reps,
                     const unsigned char[::1] lut):
    cdef Py_ssize_t m_rows = spans.shape[0]
    cdef Py_ssize_t s = spans.shape[1]
    cdef Py_ssize_t c = reps.shape[1]
    cdef Py_ssize_t i, j, t
    cdef unsigned int pattern
    cdef unsigned short rep
    cdef unsigned char ok
    out_arr = np.zeros(m_rows, dtype=np.uint8)
    cdef unsigned char[::1] out = out_arr
    for i in range(m_rows):
        ok = 1
        for j in range(c):
            rep = reps[i, j]
            pattern = 0
            for t in range(s):
                pattern |= (<unsigned int> (f[rep ^ spans[i, t]] & 1)) << t
            if not lut[pattern]:
                ok = 0
                break
        out[i] = ok
    return out_arr
