# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: compression trials and the Singer power scan.

Every function here has a line-for-line twin in ``_pykernels``.
"""
import numpy as np

from libc.stdint cimport int32_t, int64_t, uint64_t

cdef extern from *:
    """
    typedef unsigned __int128 sx_u128;

    /* With r = a*u mod 2^128, returns floor(m*r / 2^128) and stores the low
       128 bits of m*r (the fractional numerator of a*m*u/2^128). */
    static inline uint64_t sx_phi(uint64_t a_lo, uint64_t a_hi,
                                  uint64_t u_lo, uint64_t u_hi, uint64_t m,
                                  uint64_t *f_hi, uint64_t *f_lo) {
        sx_u128 a = ((sx_u128)a_hi << 64) | a_lo;
        sx_u128 u = ((sx_u128)u_hi << 64) | u_lo;
        sx_u128 r = a * u;
        sx_u128 p0 = (sx_u128)m * (uint64_t)r;
        sx_u128 p1 = (sx_u128)m * (uint64_t)(r >> 64);
        sx_u128 low = p0 + (p1 << 64);
        uint64_t carry = low < p0;
        *f_hi = (uint64_t)(low >> 64);
        *f_lo = (uint64_t)low;
        return (uint64_t)(p1 >> 64) + carry;
    }
    """
    uint64_t sx_phi(uint64_t a_lo, uint64_t a_hi, uint64_t u_lo, uint64_t u_hi,
                    uint64_t m, uint64_t *f_hi, uint64_t *f_lo) nogil

BACKEND = "compiled"

cdef uint64_t MASK64 = 0xFFFFFFFFFFFFFFFF
_MASK64 = (1 << 64) - 1
_MASK128 = (1 << 128) - 1


cdef inline bint _below(uint64_t f_hi, uint64_t f_lo, uint64_t t_hi, uint64_t t_lo) nogil:
    return f_hi < t_hi or (f_hi == t_hi and f_lo <= t_lo)


def _limbs(values):
    try:
        arr = np.asarray(values, dtype=np.int64)
    except OverflowError:
        arr = None
    if arr is not None:
        lo = arr.view(np.uint64).copy()
        hi = np.where(arr < 0, np.uint64(MASK64), np.uint64(0)).astype(np.uint64)
        return lo, hi
    n = len(values)
    lo = np.empty(n, dtype=np.uint64)
    hi = np.empty(n, dtype=np.uint64)
    for i, a in enumerate(values):
        r = a & _MASK128
        lo[i] = r & _MASK64
        hi[i] = r >> 64
    return lo, hi


cdef class TrialKernel:
    """Scores and materializes compression trials for a fixed sorted input.

    ``threshold`` is the largest admissible fractional numerator, i.e.
    ``(2**128 - 1) // k`` for the 1/k membership test.
    """
    cdef readonly object values
    cdef readonly uint64_t m
    cdef readonly object threshold
    cdef uint64_t[::1] lo
    cdef uint64_t[::1] hi
    cdef uint64_t t_hi, t_lo

    def __init__(self, values, m, threshold):
        self.values = values
        self.m = m
        self.threshold = threshold
        lo, hi = _limbs(values)
        self.lo = lo
        self.hi = hi
        self.t_hi = threshold >> 64
        self.t_lo = threshold & _MASK64

    def stats(self, u):
        """Return ``(|B|, |C|, pair collisions)`` for theta = u / 2**128."""
        cdef uint64_t u_lo = u & _MASK64, u_hi = u >> 64
        cdef Py_ssize_t n = self.lo.shape[0], i
        cdef int32_t[::1] counts = np.zeros(self.m, dtype=np.int32)
        cdef int64_t b = 0, c = 0, pairs = 0
        cdef uint64_t phi, f_hi, f_lo
        with nogil:
            for i in range(n):
                phi = sx_phi(self.lo[i], self.hi[i], u_lo, u_hi, self.m, &f_hi, &f_lo)
                if _below(f_hi, f_lo, self.t_hi, self.t_lo):
                    b += 1
                    pairs += counts[phi]
                    if counts[phi] == 0:
                        c += 1
                    counts[phi] += 1
        return b, c, pairs

    def select(self, u):
        """Return ``(|B|, pairs, kept indices, images)``; first index wins each fiber."""
        cdef uint64_t u_lo = u & _MASK64, u_hi = u >> 64
        cdef Py_ssize_t n = self.lo.shape[0], i
        cdef int32_t[::1] counts = np.zeros(self.m, dtype=np.int32)
        idx_arr = np.empty(n, dtype=np.int64)
        img_arr = np.empty(n, dtype=np.int64)
        cdef int64_t[::1] idx = idx_arr
        cdef int64_t[::1] img = img_arr
        cdef int64_t b = 0, c = 0, pairs = 0
        cdef uint64_t phi, f_hi, f_lo
        with nogil:
            for i in range(n):
                phi = sx_phi(self.lo[i], self.hi[i], u_lo, u_hi, self.m, &f_hi, &f_lo)
                if _below(f_hi, f_lo, self.t_hi, self.t_lo):
                    b += 1
                    pairs += counts[phi]
                    if counts[phi] == 0:
                        idx[c] = i
                        img[c] = <int64_t>phi
                        c += 1
                    counts[phi] += 1
        return b, pairs, idx_arr[:c].tolist(), img_arr[:c].tolist()


def singer_scan(int64_t q, mod, prim, int64_t count):
    """Exponents j in [0, count) whose power prim**j has zero alpha^2 coefficient."""
    cdef int64_t m0 = mod[0], m1 = mod[1], m2 = mod[2]
    cdef int64_t p0 = prim[0], p1 = prim[1], p2 = prim[2]
    cdef int64_t x0 = 1, x1 = 0, x2 = 0
    cdef int64_t d0, d1, d2, d3, d4, c
    cdef int64_t j, k = 0
    out_arr = np.empty(count, dtype=np.int64)
    cdef int64_t[::1] out = out_arr
    with nogil:
        for j in range(count):
            if x2 == 0:
                out[k] = j
                k += 1
            d0 = x0 * p0
            d1 = x0 * p1 + x1 * p0
            d2 = x0 * p2 + x1 * p1 + x2 * p0
            d3 = x1 * p2 + x2 * p1
            d4 = x2 * p2
            c = d4 % q
            d3 -= c * m2
            d2 -= c * m1
            d1 -= c * m0
            c = d3 % q
            if c < 0:
                c += q
            d2 -= c * m2
            d1 -= c * m1
            d0 -= c * m0
            x0 = d0 % q
            x1 = d1 % q
            x2 = d2 % q
            if x0 < 0:
                x0 += q
            if x1 < 0:
                x1 += q
            if x2 < 0:
                x2 += q
    return out_arr[:k].tolist()
