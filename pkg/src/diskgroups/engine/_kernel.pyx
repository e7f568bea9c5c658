# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled backend for the orbit engine.

Same primitives and float semantics as the numpy fallback: plain double
arithmetic (the extension is compiled with fp contraction off), rint
grid keys, first-wins dedup in candidate order.
"""

import numpy as np

cimport numpy as cnp
from cpython.mem cimport PyMem_Free, PyMem_Malloc
from libc.math cimport floor, rint

cnp.import_array()

ctypedef cnp.int64_t i64
ctypedef cnp.int32_t i32
ctypedef cnp.uint64_t u64
ctypedef cnp.uint8_t u8

__all__ = ["KeyTable", "dedup_chunk", "expand_chunk", "word_cycle", "word_pixel_counts"]


cdef inline u64 _mix(i64 x, i64 y) nogil:
    cdef u64 h = (<u64>x) * <u64>0x9E3779B97F4A7C15
    h ^= (<u64>y) * <u64>0xC2B2AE3D27D4EB4F
    h ^= h >> 33
    h *= <u64>0xFF51AFD7ED558CCD
    h ^= h >> 33
    return h


cdef class KeyTable:
    """Open-addressing hash set of (kx, ky) int64 grid keys."""

    cdef i64* kx
    cdef i64* ky
    cdef u8* used
    cdef Py_ssize_t cap
    cdef Py_ssize_t n

    def __cinit__(self):
        self.cap = 1024
        self.n = 0
        self.kx = <i64*>PyMem_Malloc(self.cap * sizeof(i64))
        self.ky = <i64*>PyMem_Malloc(self.cap * sizeof(i64))
        self.used = <u8*>PyMem_Malloc(self.cap * sizeof(u8))
        if self.kx == NULL or self.ky == NULL or self.used == NULL:
            raise MemoryError()
        cdef Py_ssize_t i
        for i in range(self.cap):
            self.used[i] = 0

    def __dealloc__(self):
        PyMem_Free(self.kx)
        PyMem_Free(self.ky)
        PyMem_Free(self.used)

    def __len__(self):
        return self.n

    cdef bint _contains(self, i64 x, i64 y) nogil:
        cdef u64 mask = <u64>(self.cap - 1)
        cdef u64 i = _mix(x, y) & mask
        while self.used[i]:
            if self.kx[i] == x and self.ky[i] == y:
                return 1
            i = (i + 1) & mask
        return 0

    cdef int _grow(self) except -1:
        cdef Py_ssize_t old_cap = self.cap
        cdef i64* okx = self.kx
        cdef i64* oky = self.ky
        cdef u8* oused = self.used
        cdef Py_ssize_t new_cap = old_cap * 2
        cdef i64* nkx = <i64*>PyMem_Malloc(new_cap * sizeof(i64))
        cdef i64* nky = <i64*>PyMem_Malloc(new_cap * sizeof(i64))
        cdef u8* nused = <u8*>PyMem_Malloc(new_cap * sizeof(u8))
        if nkx == NULL or nky == NULL or nused == NULL:
            PyMem_Free(nkx)
            PyMem_Free(nky)
            PyMem_Free(nused)
            raise MemoryError()
        cdef Py_ssize_t i
        cdef u64 mask = <u64>(new_cap - 1)
        cdef u64 j
        for i in range(new_cap):
            nused[i] = 0
        for i in range(old_cap):
            if oused[i]:
                j = _mix(okx[i], oky[i]) & mask
                while nused[j]:
                    j = (j + 1) & mask
                nkx[j] = okx[i]
                nky[j] = oky[i]
                nused[j] = 1
        self.kx = nkx
        self.ky = nky
        self.used = nused
        self.cap = new_cap
        PyMem_Free(okx)
        PyMem_Free(oky)
        PyMem_Free(oused)
        return 0

    cdef int _insert_new(self, i64 x, i64 y) except -1:
        # Caller guarantees the key is absent.
        if 2 * (self.n + 1) > self.cap:
            self._grow()
        cdef u64 mask = <u64>(self.cap - 1)
        cdef u64 i = _mix(x, y) & mask
        while self.used[i]:
            i = (i + 1) & mask
        self.kx[i] = x
        self.ky[i] = y
        self.used[i] = 1
        self.n += 1
        return 0


def expand_chunk(double[::1] xs, double[::1] ys,
                 double[::1] gcx, double[::1] gcy, double[::1] grr,
                 double[::1] grc, double[::1] grs):
    """In-disk generator images of a frontier chunk, point-major order."""
    cdef Py_ssize_t p = xs.shape[0]
    cdef Py_ssize_t g = gcx.shape[0]
    out_x = np.empty(p * g)
    out_y = np.empty(p * g)
    cdef double[::1] ox = out_x
    cdef double[::1] oy = out_y
    cdef Py_ssize_t i, j, n = 0
    cdef double x, y, dx, dy
    with nogil:
        for i in range(p):
            x = xs[i]
            y = ys[i]
            for j in range(g):
                dx = x - gcx[j]
                dy = y - gcy[j]
                if dx * dx + dy * dy <= grr[j]:
                    ox[n] = gcx[j] + (dx * grc[j] - dy * grs[j])
                    oy[n] = gcy[j] + (dx * grs[j] + dy * grc[j])
                    n += 1
    return out_x[:n], out_y[:n]


def dedup_chunk(double[::1] cx, double[::1] cy, double inv_q,
                checks, KeyTable insert, limit):
    """First-wins dedup of candidates against the check tables.

    Mirrors the fallback exactly: new points are kept in candidate
    order up to limit; exceeded is set only when a genuinely new point
    lies beyond the cutoff.  The insert table must be one of checks.
    """
    cdef KeyTable t0 = checks[0]
    cdef KeyTable t1 = checks[1]
    cdef KeyTable t2 = checks[2]
    cdef bint d1 = t1 is not t0
    cdef bint d2 = t2 is not t0 and t2 is not t1
    cdef Py_ssize_t ncand = cx.shape[0]
    cdef Py_ssize_t lim = limit
    out_x = np.empty(ncand)
    out_y = np.empty(ncand)
    cdef double[::1] ox = out_x
    cdef double[::1] oy = out_y
    cdef Py_ssize_t i, nout = 0
    cdef bint exceeded = 0
    cdef i64 kx, ky
    for i in range(ncand):
        kx = <i64>rint(cx[i] * inv_q)
        ky = <i64>rint(cy[i] * inv_q)
        if t0._contains(kx, ky):
            continue
        if d1 and t1._contains(kx, ky):
            continue
        if d2 and t2._contains(kx, ky):
            continue
        if nout >= lim:
            exceeded = 1
            break
        insert._insert_new(kx, ky)
        ox[nout] = cx[i]
        oy[nout] = cy[i]
        nout += 1
    return out_x[:nout], out_y[:nout], bool(exceeded)


def word_pixel_counts(double x, double y,
                      double[::1] wcx, double[::1] wcy, double[::1] wrr,
                      double[::1] wrc, double[::1] wrs,
                      Py_ssize_t iters, i32[:, ::1] counts,
                      double left, double top, double inv_pw, double inv_ph):
    """Iterate a word, bumping the pixel count of each visited point."""
    cdef Py_ssize_t h = counts.shape[0]
    cdef Py_ssize_t w = counts.shape[1]
    cdef Py_ssize_t m = wcx.shape[0]
    cdef Py_ssize_t t, j, col, row
    cdef double dx, dy
    with nogil:
        for t in range(iters):
            col = <Py_ssize_t>floor((x - left) * inv_pw)
            row = <Py_ssize_t>floor((top - y) * inv_ph)
            if 0 <= col < w and 0 <= row < h:
                counts[row, col] += 1
            for j in range(m):
                dx = x - wcx[j]
                dy = y - wcy[j]
                if dx * dx + dy * dy <= wrr[j]:
                    x = wcx[j] + (dx * wrc[j] - dy * wrs[j])
                    y = wcy[j] + (dx * wrs[j] + dy * wrc[j])
    return x, y


def word_cycle(double x, double y,
               double[::1] wcx, double[::1] wcy, double[::1] wrr,
               double[::1] wrc, double[::1] wrs,
               Py_ssize_t max_iter, double inv_q):
    """Steps until the iterate returns to the seed's grid cell, else 0."""
    cdef Py_ssize_t m = wcx.shape[0]
    cdef i64 k0x = <i64>rint(x * inv_q)
    cdef i64 k0y = <i64>rint(y * inv_q)
    cdef Py_ssize_t t, j
    cdef double dx, dy
    cdef Py_ssize_t hit = 0
    with nogil:
        for t in range(1, max_iter + 1):
            for j in range(m):
                dx = x - wcx[j]
                dy = y - wcy[j]
                if dx * dx + dy * dy <= wrr[j]:
                    x = wcx[j] + (dx * wrc[j] - dy * wrs[j])
                    y = wcy[j] + (dx * wrs[j] + dy * wrc[j])
            if (<i64>rint(x * inv_q)) == k0x and (<i64>rint(y * inv_q)) == k0y:
                hit = t
                break
    return hit
