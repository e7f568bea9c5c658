"""Numpy backend for the orbit engine.

Implements the same primitives as the compiled kernel with identical
float semantics: plain elementwise double arithmetic (numpy never fuses
multiply-add), np.rint for grid keys (round half to even, matching C
rint), and first-occurrence dedup in candidate order.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = ["KeyTable", "dedup_chunk", "expand_chunk", "word_cycle", "word_pixel_counts"]

_CONSOLIDATE_MIN = 1024


class KeyTable:
    """Set of quantized grid keys packed as complex128 (kx + i*ky).

    Cell indices stay far below 2**53, so the packing is exact.  Keys
    live in a sorted main array plus small unsorted overflow blocks that
    are merged geometrically, keeping inserts amortized linear.
    """

    __slots__ = ("_main", "_extra", "_extra_n")

    def __init__(self):
        self._main = np.empty(0, dtype=np.complex128)
        self._extra = []
        self._extra_n = 0

    def __len__(self):
        return self._main.size + self._extra_n

    def contains(self, keys):
        """Boolean mask of which keys are already present."""
        if self._main.size:
            idx = np.searchsorted(self._main, keys)
            np.clip(idx, 0, self._main.size - 1, out=idx)
            mask = self._main[idx] == keys
        else:
            mask = np.zeros(keys.size, dtype=bool)
        for block in self._extra:
            mask |= np.isin(keys, block)
        return mask

    def add(self, keys):
        """Insert keys assumed distinct from each other and the table."""
        if keys.size == 0:
            return
        self._extra.append(keys)
        self._extra_n += keys.size
        if self._extra_n >= max(self._main.size, _CONSOLIDATE_MIN):
            self._main = np.sort(np.concatenate([self._main, *self._extra]))
            self._extra = []
            self._extra_n = 0


def expand_chunk(xs, ys, gcx, gcy, grr, grc, grs):
    """In-disk generator images of a frontier chunk.

    Candidate order is point-major, generator-minor, the same order the
    compiled kernel produces with its nested loops.
    """
    dx = xs[:, None] - gcx[None, :]
    dy = ys[:, None] - gcy[None, :]
    inside = (dx * dx + dy * dy) <= grr
    nx = gcx + (dx * grc - dy * grs)
    ny = gcy + (dx * grs + dy * grc)
    m = inside.ravel()
    return nx.ravel()[m], ny.ravel()[m]


def dedup_chunk(cx, cy, inv_q, checks, insert, limit):
    """First-wins dedup of candidates against key tables.

    Keeps the first candidate of each unseen grid cell, in candidate
    order, up to limit; returns (xs, ys, exceeded) where exceeded means
    the limit cut off at least one genuinely new point.  Inserted keys
    go into the insert table (which is also one of the check tables).
    """
    kx = np.rint(cx * inv_q)
    ky = np.rint(cy * inv_q)
    keys = kx + 1j * ky
    uniq, first = np.unique(keys, return_index=True)
    mask = np.ones(uniq.size, dtype=bool)
    seen_ids = set()
    for table in checks:
        if id(table) in seen_ids:
            continue
        seen_ids.add(id(table))
        mask &= ~table.contains(uniq)
    sel = np.sort(first[mask])
    exceeded = False
    if sel.size > limit:
        sel = sel[: max(limit, 0)]
        exceeded = True
    insert.add(keys[sel])
    return cx[sel].copy(), cy[sel].copy(), exceeded


def word_pixel_counts(x, y, wcx, wcy, wrr, wrc, wrs, iters, counts, left, top, inv_pw, inv_ph):
    """Iterate a word, bumping the pixel count of each visited point."""
    h, w = counts.shape
    cxs = wcx.tolist()
    cys = wcy.tolist()
    rrs = wrr.tolist()
    rcs = wrc.tolist()
    rss = wrs.tolist()
    m = len(cxs)
    for _ in range(iters):
        col = int(math.floor((x - left) * inv_pw))
        row = int(math.floor((top - y) * inv_ph))
        if 0 <= col < w and 0 <= row < h:
            counts[row, col] += 1
        for j in range(m):
            dx = x - cxs[j]
            dy = y - cys[j]
            if dx * dx + dy * dy <= rrs[j]:
                x = cxs[j] + (dx * rcs[j] - dy * rss[j])
                y = cys[j] + (dx * rss[j] + dy * rcs[j])
    return x, y


def word_cycle(x, y, wcx, wcy, wrr, wrc, wrs, max_iter, inv_q):
    """Steps until the iterate returns to the seed's grid cell, else 0."""
    cxs = wcx.tolist()
    cys = wcy.tolist()
    rrs = wrr.tolist()
    rcs = wrc.tolist()
    rss = wrs.tolist()
    m = len(cxs)
    k0x = round(x * inv_q)
    k0y = round(y * inv_q)
    for t in range(1, max_iter + 1):
        for j in range(m):
            dx = x - cxs[j]
            dy = y - cys[j]
            if dx * dx + dy * dy <= rrs[j]:
                x = cxs[j] + (dx * rcs[j] - dy * rss[j])
                y = cys[j] + (dx * rss[j] + dy * rcs[j])
        if round(x * inv_q) == k0x and round(y * inv_q) == k0y:
            return t
    return 0
