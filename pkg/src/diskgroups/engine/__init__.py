"""Orbit enumeration engine with interchangeable compiled and numpy backends.

The driver here owns the breadth-first search; backends supply three
primitives (candidate expansion, first-wins dedup against key tables,
and single-word iteration).  Both backends use the same float expressions
and the same chunk boundaries, so every mode, backend, and thread count
produces bit-identical results.

Backend choice: the DISKGROUPS_KERNEL environment variable may be
"auto" (default; compiled if built), "compiled", or "python".
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..geometry import DiskSystem

__all__ = [
    "BACKEND",
    "CHUNK",
    "OrbitParams",
    "OrbitResult",
    "frontier_bfs",
    "generator_arrays",
    "orbit_bfs",
    "orbit_stream",
    "word_arrays",
    "word_cycle",
    "word_pixel_counts",
]

CHUNK = 131072

_ENV_KERNEL = "DISKGROUPS_KERNEL"


def _select_backend():
    choice = os.environ.get(_ENV_KERNEL, "auto").strip().lower() or "auto"
    if choice not in ("auto", "compiled", "python"):
        raise ValueError(f"{_ENV_KERNEL} must be auto, compiled or python, not {choice!r}")
    if choice == "python":
        from . import _fallback

        return _fallback, "python"
    try:
        from . import _kernel

        return _kernel, "compiled"
    except ImportError:
        if choice == "compiled":
            raise RuntimeError(
                "compiled kernel requested via DISKGROUPS_KERNEL but the "
                "extension is not built; install the package or use auto/python"
            ) from None
        from . import _fallback

        return _fallback, "python"


_impl, BACKEND = _select_backend()


@dataclass(frozen=True)
class OrbitParams:
    """Knobs shared by all orbit operations.

    budget caps the number of distinct points; the search stops exactly
    at the cap, keeping a deterministic prefix of the offending level.
    max_depth, when set, caps completed BFS levels; hitting it with a
    nonempty frontier reports BudgetExceeded.  quantum is the dedup grid
    spacing.  emit_points asks for the visited points in discovery order.
    threads parallelizes candidate expansion without changing results.
    """

    budget: int = 10_000_000
    max_depth: int | None = None
    quantum: float = 1e-9
    emit_points: bool = False
    threads: int = 1

    def __post_init__(self):
        if self.budget < 1:
            raise ValueError("budget must be at least 1")
        if self.max_depth is not None and self.max_depth < 0:
            raise ValueError("max_depth must be nonnegative")
        if not self.quantum > 0:
            raise ValueError("quantum must be positive")
        if self.threads < 1:
            raise ValueError("threads must be at least 1")


@dataclass
class OrbitResult:
    """Outcome of one orbit enumeration."""

    status: str
    size: int
    depth: int
    peak_memory_points: int
    points: np.ndarray | None = None

    def summary(self):
        return {
            "status": self.status,
            "size": self.size,
            "depth": self.depth,
            "peak_memory_points": self.peak_memory_points,
        }


def generator_arrays(system):
    """Flat per-generator arrays: center, squared radius, rotation root.

    Generators are ordered disk-major with the +1 step before the -1
    step.  Every backend consumes exactly these values.
    """
    if not isinstance(system, DiskSystem):
        raise TypeError("expected a DiskSystem")
    k = len(system)
    gcx = np.empty(2 * k)
    gcy = np.empty(2 * k)
    grr = np.empty(2 * k)
    grc = np.empty(2 * k)
    grs = np.empty(2 * k)
    for i, d in enumerate(system.disks):
        for col, step in ((2 * i, 1), (2 * i + 1, -1)):
            gcx[col] = d.center[0]
            gcy[col] = d.center[1]
            grr[col] = system.membership_radius_squared(i)
            grc[col], grs[col] = system.unit_root(i, step)
    return gcx, gcy, grr, grc, grs


def word_arrays(system, word):
    """Per-factor disk data and rotation roots for a word.

    An empty word yields empty arrays; the iteration kernels then act
    as the identity, plotting without moving.
    """
    k = len(system)
    m = len(word.factors)
    wcx = np.empty(m)
    wcy = np.empty(m)
    wrr = np.empty(m)
    wrc = np.empty(m)
    wrs = np.empty(m)
    for pos, (i, e) in enumerate(word.factors):
        if not 0 <= i < k:
            raise ValueError(f"factor {pos}: disk index {i} out of range for {k} disks")
        d = system.disks[i]
        wcx[pos] = d.center[0]
        wcy[pos] = d.center[1]
        wrr[pos] = system.membership_radius_squared(i)
        wrc[pos], wrs[pos] = system.unit_root(i, e)
    return wcx, wcy, wrr, wrc, wrs


def _expand_level(impl, arrs, fx, fy, threads):
    gcx, gcy, grr, grc, grs = arrs
    n = fx.size
    if n <= CHUNK or threads == 1:
        spans = [(s, min(s + CHUNK, n)) for s in range(0, n, CHUNK)]
        return [impl.expand_chunk(fx[a:b], fy[a:b], gcx, gcy, grr, grc, grs) for a, b in spans]
    spans = [(s, min(s + CHUNK, n)) for s in range(0, n, CHUNK)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(
            pool.map(
                lambda ab: impl.expand_chunk(fx[ab[0] : ab[1]], fy[ab[0] : ab[1]], gcx, gcy, grr, grc, grs),
                spans,
            )
        )


def _drive(system, seed, params, frontier_mode, sink, impl=None):
    be = impl if impl is not None else _impl
    arrs = generator_arrays(system)
    inv_q = 1.0 / params.quantum

    if frontier_mode:
        prev, curr, nxt = be.KeyTable(), be.KeyTable(), be.KeyTable()
        checks0, insert0 = (prev, curr, nxt), curr
    else:
        seen = be.KeyTable()
        prev = curr = nxt = seen
        checks0, insert0 = (seen, seen, seen), seen

    sx = np.array([float(seed[0])])
    sy = np.array([float(seed[1])])
    fx, fy, _ = be.dedup_chunk(sx, sy, inv_q, checks0, insert0, 1)

    size = 1
    depth = 0
    peak = 1
    collected_x = [fx] if params.emit_points else None
    collected_y = [fy] if params.emit_points else None
    if sink is not None:
        sink(0, fx.copy(), fy.copy())

    status = None
    while True:
        if fx.size == 0:
            status = "Closed"
            break
        if params.max_depth is not None and depth >= params.max_depth:
            status = "BudgetExceeded"
            break
        checks = (prev, curr, nxt)
        new_parts = []
        produced = 0
        exceeded = False
        for part_x, part_y in _expand_level(be, arrs, fx, fy, params.threads):
            limit = params.budget - size - produced
            nx_, ny_, exc = be.dedup_chunk(part_x, part_y, inv_q, checks, nxt, limit)
            if nx_.size:
                new_parts.append((nx_, ny_))
                produced += nx_.size
            if exc:
                exceeded = True
                break
        if new_parts:
            new_x = np.concatenate([p[0] for p in new_parts])
            new_y = np.concatenate([p[1] for p in new_parts])
        else:
            new_x = np.empty(0)
            new_y = np.empty(0)
        size += produced
        if frontier_mode:
            peak = max(peak, len(prev) + len(curr) + len(nxt))
        else:
            peak = size
        if produced:
            if collected_x is not None:
                collected_x.append(new_x)
                collected_y.append(new_y)
            if sink is not None:
                sink(depth + 1, new_x.copy(), new_y.copy())
        if exceeded:
            status = "BudgetExceeded"
            break
        if produced == 0:
            status = "Closed"
            break
        depth += 1
        if frontier_mode:
            prev, curr, nxt = curr, nxt, be.KeyTable()
        fx, fy = new_x, new_y

    points = None
    if params.emit_points:
        points = np.column_stack(
            (np.concatenate(collected_x), np.concatenate(collected_y))
        )
    return OrbitResult(status, size, depth, peak, points)


def orbit_bfs(system, seed, params=None, _impl_override=None):
    """Full breadth-first orbit closure of one seed point.

    Deduplicates against the entire visited set.  Returns status Closed
    when no generator image leaves the visited set, else BudgetExceeded.
    """
    params = params or OrbitParams()
    return _drive(system, seed, params, False, None, impl=_impl_override)


def frontier_bfs(system, seed, params=None, _impl_override=None):
    """Orbit closure keeping only the last three BFS levels in memory.

    Generator sets are closed under inverses, so a candidate can only
    collide with the previous, current, or next level; results are
    identical to orbit_bfs while peak_memory_points tracks frontiers.
    """
    params = params or OrbitParams()
    return _drive(system, seed, params, True, None, impl=_impl_override)


def orbit_stream(system, seed, params=None, sink=None, _impl_override=None):
    """Frontier search delivering each BFS level to sink(level, xs, ys).

    Every visited point is delivered exactly once, in discovery order;
    exceptions raised by the sink propagate to the caller.
    """
    params = params or OrbitParams()
    if sink is not None and not callable(sink):
        raise TypeError("sink must be callable")
    return _drive(system, seed, params, True, sink, impl=_impl_override)


def word_pixel_counts(system, word, seed, iterations, counts, left, top, inv_pw, inv_ph, _impl_override=None):
    """Iterate a word from seed, accumulating visit counts per pixel.

    Plots the current point (seed first) before each of the given
    iterations; the point after the final application is returned but
    not plotted.  counts is a C-contiguous int32 (H, W) array updated
    in place; pixels are col = floor((x-left)*inv_pw) and
    row = floor((top-y)*inv_ph).
    """
    be = _impl_override if _impl_override is not None else _impl
    wcx, wcy, wrr, wrc, wrs = word_arrays(system, word)
    if iterations < 0:
        raise ValueError("iterations must be nonnegative")
    if counts.dtype != np.int32 or not counts.flags.c_contiguous:
        raise TypeError("counts must be a C-contiguous int32 array")
    return be.word_pixel_counts(
        float(seed[0]), float(seed[1]), wcx, wcy, wrr, wrc, wrs,
        int(iterations), counts, float(left), float(top), float(inv_pw), float(inv_ph),
    )


def word_cycle(system, word, seed, max_iter, quantum=1e-9, _impl_override=None):
    """Smallest k in 1..max_iter with word^k(seed) on the seed's grid cell.

    Returns 0 when the iteration does not return within max_iter.
    """
    be = _impl_override if _impl_override is not None else _impl
    wcx, wcy, wrr, wrc, wrs = word_arrays(system, word)
    if max_iter < 1:
        raise ValueError("max_iter must be at least 1")
    return be.word_cycle(
        float(seed[0]), float(seed[1]), wcx, wcy, wrr, wrc, wrs,
        int(max_iter), 1.0 / float(quantum),
    )
