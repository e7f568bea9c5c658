"""Rasterization: orbit plots, boundary arrangements, word-iteration images.

All three renderers share one affine y-up viewport and write binary PPM.
Palettes are fixed tables and the plane-to-pixel map matches the
iteration kernels bit for bit, so identical inputs give byte-identical
files regardless of backend or thread count.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .engine import OrbitParams, orbit_stream, word_cycle, word_pixel_counts

__all__ = [
    "BoundaryStats",
    "DENSITY_PALETTE",
    "ORDER_PALETTE",
    "REGION_PALETTE",
    "RasterImage",
    "Viewport",
    "render_boundary",
    "render_orbit",
    "render_single_generator",
    "write_ppm",
]


@dataclass(frozen=True)
class Viewport:
    """Aspect-preserving y-up window onto the plane.

    Plane height is width*H/W, so pixels are square; column
    floor((x-left)*W/width) and row floor((top-y)*W/width) locate a
    point, matching the iteration kernels exactly.
    """

    center: tuple
    width: float
    W: int
    H: int

    def __post_init__(self):
        if self.W < 1 or self.H < 1:
            raise ValueError("pixel dimensions must be at least 1x1")
        if not (self.width > 0 and math.isfinite(self.width)):
            raise ValueError("viewport width must be positive and finite")

    @classmethod
    def from_system(cls, system, W, H, center=(0.0, 0.0), width=None):
        if width is None:
            width = 2.0 * (max(d.radius for d in system.disks) + 1.0)
        return cls((float(center[0]), float(center[1])), float(width), int(W), int(H))

    @property
    def height_plane(self):
        return self.width * self.H / self.W

    @property
    def pixel_size(self):
        return self.width / self.W

    @property
    def left(self):
        return self.center[0] - 0.5 * self.width

    @property
    def top(self):
        return self.center[1] + 0.5 * self.height_plane

    @property
    def inv_pixel(self):
        return self.W / self.width

    def to_pixel(self, x, y):
        col = math.floor((x - self.left) * self.inv_pixel)
        row = math.floor((self.top - y) * self.inv_pixel)
        return col, row


@dataclass
class RasterImage:
    viewport: Viewport
    pixels: np.ndarray
    counts: np.ndarray = None
    partial: bool = False

    def to_ppm_bytes(self):
        h, w, _ = self.pixels.shape
        return b"P6\n%d %d\n255\n" % (w, h) + self.pixels.tobytes()


def write_ppm(img, path):
    """Binary PPM: header then RGB triples, row-major, top row first."""
    with open(path, "wb") as fh:
        fh.write(img.to_ppm_bytes())


def _blank(viewport):
    return np.full((viewport.H, viewport.W, 3), 255, dtype=np.uint8)


# Fixed palettes; the exact byte values are part of the determinism
# contract, so renders can be compared as files.
DENSITY_PALETTE = (
    (12, 16, 64), (24, 28, 96), (32, 44, 128), (36, 64, 152),
    (40, 88, 168), (44, 112, 176), (48, 136, 176), (56, 160, 168),
    (72, 180, 152), (104, 196, 132), (144, 208, 112), (184, 216, 96),
    (216, 222, 88), (240, 224, 96), (252, 232, 136), (255, 244, 192),
)

ORDER_PALETTE = (
    (68, 119, 170), (102, 204, 238), (34, 136, 51), (204, 187, 68),
    (238, 102, 119), (170, 51, 119), (187, 187, 187), (153, 34, 136),
    (221, 170, 51), (0, 68, 136), (187, 85, 102), (34, 85, 85),
)

REGION_PALETTE = (
    (141, 211, 199), (255, 255, 179), (190, 186, 218), (251, 128, 114),
    (128, 177, 211), (253, 180, 98), (179, 222, 105), (252, 205, 229),
    (217, 217, 217), (188, 128, 189), (204, 235, 197), (255, 237, 111),
)


def _bin_counts(counts, viewport, xs, ys):
    cols = np.floor((xs - viewport.left) * viewport.inv_pixel).astype(np.int64)
    rows = np.floor((viewport.top - ys) * viewport.inv_pixel).astype(np.int64)
    keep = (cols >= 0) & (cols < viewport.W) & (rows >= 0) & (rows < viewport.H)
    np.add.at(counts, (rows[keep], cols[keep]), 1)


def _apply_density(pixels, counts, palette):
    hit = counts > 0
    if not hit.any():
        return
    buckets = np.zeros_like(counts)
    buckets[hit] = np.minimum(
        len(palette) - 1, np.log2(counts[hit]).astype(np.int64)
    )
    table = np.array(palette, dtype=np.uint8)
    pixels[hit] = table[buckets[hit]]


def render_orbit(system, seeds, budget, viewport, coloring="binary",
                 quantum=1e-9, threads=1):
    """Plot every orbit point reached within budget from each seed.

    binary marks hit pixels black; hit-density maps per-pixel visit
    counts through the logarithmic DENSITY_PALETTE.  An empty seed
    list gives a blank image.  The budget applies per seed.
    """
    if coloring not in ("binary", "hit-density"):
        raise ValueError(f"unknown coloring {coloring!r}")
    counts = np.zeros((viewport.H, viewport.W), dtype=np.int32)
    params = OrbitParams(budget=budget, quantum=quantum, threads=threads)

    def sink(depth, xs, ys):
        _bin_counts(counts, viewport, xs, ys)

    for seed in seeds:
        orbit_stream(system, seed, params, sink)
    pixels = _blank(viewport)
    if coloring == "binary":
        pixels[counts > 0] = (0, 0, 0)
    else:
        _apply_density(pixels, counts, DENSITY_PALETTE)
    return RasterImage(viewport, pixels, counts)


# ---------------------------------------------------------------------------
# Boundary arrangements.


@dataclass(frozen=True)
class BoundaryStats:
    segments_drawn: int
    interior_regions: int
    total_regions: int
    partial: bool


def _supercover(walls, depths, viewport, x1, y1, x2, y2, depth):
    """Mark every pixel the segment passes through (4-connected chain).

    Records the minimum segment depth per wall pixel for the
    orbit-order coloring rule.
    """
    inv = viewport.inv_pixel
    fx1 = (x1 - viewport.left) * inv
    fy1 = (viewport.top - y1) * inv
    fx2 = (x2 - viewport.left) * inv
    fy2 = (viewport.top - y2) * inv
    h, w = walls.shape

    cx, cy = math.floor(fx1), math.floor(fy1)
    ex, ey = math.floor(fx2), math.floor(fy2)
    dx = fx2 - fx1
    dy = fy2 - fy1
    sx = 1 if dx > 0 else -1
    sy = 1 if dy > 0 else -1
    # parametric distance to the next vertical / horizontal cell line
    if dx != 0:
        tdx = abs(1.0 / dx)
        nb = (cx + 1) if sx > 0 else cx
        tmx = abs((nb - fx1) / dx)
    else:
        tdx = math.inf
        tmx = math.inf
    if dy != 0:
        tdy = abs(1.0 / dy)
        nb = (cy + 1) if sy > 0 else cy
        tmy = abs((nb - fy1) / dy)
    else:
        tdy = math.inf
        tmy = math.inf

    steps = abs(ex - cx) + abs(ey - cy)
    for _ in range(steps + 1):
        if 0 <= cx < w and 0 <= cy < h:
            walls[cy, cx] = 1
            if depth < depths[cy, cx]:
                depths[cy, cx] = depth
        if cx == ex and cy == ey:
            break
        if tmx <= tmy:
            tmx += tdx
            cx += sx
        else:
            tmy += tdy
            cy += sy
    else:
        # numerical fallback: stamp the far endpoint
        if 0 <= ex < w and 0 <= ey < h:
            walls[ey, ex] = 1
            if depth < depths[ey, ex]:
                depths[ey, ex] = depth


def _segment_key(x1, y1, x2, y2, inv_q):
    a = (int(round(x1 * inv_q)), int(round(y1 * inv_q)))
    b = (int(round(x2 * inv_q)), int(round(y2 * inv_q)))
    return (a, b) if a <= b else (b, a)


def render_boundary(system, segment_count, depth_budget, viewport=None,
                    coloring="region-size", W=512, H=512, quantum=1e-9,
                    min_region_px=4):
    """Image of all disk-boundary segments under the group, regions filled.

    Each circle is discretized into chords: the smallest multiple of
    its rotation order that is at least segment_count, so the circle's
    own rotation permutes its chords exactly instead of leaving sliver
    artifacts.  A segment moves under a generator iff its midpoint is
    inside that disk; a segment whose endpoints lie on opposite sides
    of some disk boundary is split in half recursively until shorter
    than one pixel, so the piecewise images stay faithful.  Search is breadth-first over
    distinct segments (quantized endpoints) and stops after
    depth_budget of them, flagging the image partial.  Closed white
    regions of the rasterized arrangement are 4-connected components;
    components touching the image border count as background.

    Components smaller than min_region_px pixels are counted as wall,
    not regions: where two wall curves meet at a cusp, rasterization
    pinches off O(1)-pixel islands that are not faces of the true
    arrangement.  The resolution must be high enough that real regions
    exceed the threshold.

    region-size colors interior regions by area rank; orbit-order
    colors them by the smallest depth among adjacent wall segments.
    Returns (RasterImage, BoundaryStats).
    """
    if segment_count < 8:
        raise ValueError("segment_count must be at least 8")
    if depth_budget < 1:
        raise ValueError("depth_budget must be at least 1")
    if coloring not in ("region-size", "orbit-order"):
        raise ValueError(f"unknown coloring {coloring!r}")
    if viewport is None:
        viewport = Viewport.from_system(system, W, H)
    inv_q = 1.0 / quantum
    px = viewport.pixel_size

    walls = np.zeros((viewport.H, viewport.W), dtype=np.uint8)
    depths = np.full((viewport.H, viewport.W), np.iinfo(np.int32).max, dtype=np.int32)

    queue = deque()
    seen = set()
    partial = False
    drawn = 0

    def enqueue(x1, y1, x2, y2, depth):
        nonlocal partial
        key = _segment_key(x1, y1, x2, y2, inv_q)
        if key in seen:
            return
        if len(seen) >= depth_budget:
            partial = True
            return
        seen.add(key)
        queue.append((x1, y1, x2, y2, depth))

    for d in system.disks:
        cx, cy = d.center
        m = ((segment_count + d.order - 1) // d.order) * d.order
        pts = [
            (cx + d.radius * math.cos(2.0 * math.pi * k / m),
             cy + d.radius * math.sin(2.0 * math.pi * k / m))
            for k in range(m)
        ]
        for k in range(m):
            a = pts[k]
            b = pts[(k + 1) % m]
            enqueue(a[0], a[1], b[0], b[1], 0)

    ndisk = len(system.disks)
    while queue:
        x1, y1, x2, y2, depth = queue.popleft()
        length = math.hypot(x2 - x1, y2 - y1)
        split_at = -1
        if length >= px:
            for i in range(ndisk):
                if system.contains(i, (x1, y1)) != system.contains(i, (x2, y2)):
                    split_at = i
                    break
        if split_at >= 0:
            mx, my = 0.5 * (x1 + x2), 0.5 * (y1 + y2)
            enqueue(x1, y1, mx, my, depth)
            enqueue(mx, my, x2, y2, depth)
            continue
        _supercover(walls, depths, viewport, x1, y1, x2, y2, depth)
        drawn += 1
        mx, my = 0.5 * (x1 + x2), 0.5 * (y1 + y2)
        for i in range(ndisk):
            if not system.contains(i, (mx, my)):
                continue
            for e in (1, -1):
                ax, ay = system.rotate(i, (x1, y1), e)
                bx, by = system.rotate(i, (x2, y2), e)
                enqueue(ax, ay, bx, by, depth + 1)

    free = walls == 0
    labels, nlab = ndimage.label(free)
    border = set(np.unique(labels[0, :])) | set(np.unique(labels[-1, :])) \
        | set(np.unique(labels[:, 0])) | set(np.unique(labels[:, -1]))
    border.discard(0)
    all_areas = np.bincount(labels.ravel(), minlength=nlab + 1)
    interior = []
    for lab in range(1, nlab + 1):
        if lab in border:
            continue
        if all_areas[lab] < min_region_px:
            walls[labels == lab] = 1
            labels[labels == lab] = 0
            continue
        interior.append(lab)
    total = len(interior) + (1 if border else 0)

    pixels = _blank(viewport)
    pixels[walls == 1] = (0, 0, 0)
    if interior:
        table = np.array(REGION_PALETTE, dtype=np.uint8)
        if coloring == "region-size":
            flat = labels.ravel()
            areas = np.bincount(flat, minlength=nlab + 1)
            first = np.full(nlab + 1, flat.size, dtype=np.int64)
            idx = np.arange(flat.size)
            np.minimum.at(first, flat, idx)
            ranked = sorted(interior, key=lambda lab: (-areas[lab], first[lab]))
            for pos, lab in enumerate(ranked):
                pixels[labels == lab] = table[pos % len(table)]
        else:
            # minimum neighbouring wall depth per region
            big = np.iinfo(np.int32).max
            shifted = [np.full_like(depths, big) for _ in range(4)]
            shifted[0][1:, :] = depths[:-1, :]
            shifted[1][:-1, :] = depths[1:, :]
            shifted[2][:, 1:] = depths[:, :-1]
            shifted[3][:, :-1] = depths[:, 1:]
            nbr = np.minimum.reduce(shifted)
            for lab in interior:
                mask = labels == lab
                d = nbr[mask].min()
                d = 0 if d == big else int(d)
                pixels[mask] = table[d % len(table)]
    img = RasterImage(viewport, pixels, None, partial)
    return img, BoundaryStats(drawn, len(interior), total, partial)


# ---------------------------------------------------------------------------
# Single-word iteration images.


def render_single_generator(system, word, iterations, seeds,
                            coloring="density", viewport=None,
                            W=512, H=512, quantum=1e-9):
    """Image of repeated application of one word to each seed.

    density accumulates per-pixel visit counts over all seeds and maps
    them through the logarithmic palette.  orbit-order finds each
    seed's return time (first k <= iterations with word^k back on the
    seed's quantum cell), replays that many steps, and colors the
    visited pixels by the rank of the return time among all seeds;
    non-returning seeds rank last.  Later seeds overwrite earlier ones.
    """
    if iterations < 1:
        raise ValueError("iterations must be at least 1")
    if coloring not in ("density", "orbit-order"):
        raise ValueError(f"unknown coloring {coloring!r}")
    if viewport is None:
        viewport = Viewport.from_system(system, W, H)
    inv = viewport.inv_pixel
    pixels = _blank(viewport)

    if coloring == "density":
        counts = np.zeros((viewport.H, viewport.W), dtype=np.int32)
        for seed in seeds:
            word_pixel_counts(system, word, seed, iterations, counts,
                              viewport.left, viewport.top, inv, inv)
        _apply_density(pixels, counts, DENSITY_PALETTE)
        return RasterImage(viewport, pixels, counts)

    order_plane = np.full((viewport.H, viewport.W), -1, dtype=np.int64)
    returns = []
    for seed in seeds:
        k = word_cycle(system, word, seed, iterations, quantum)
        returns.append(k)
        steps = k if k >= 1 else iterations
        local = np.zeros((viewport.H, viewport.W), dtype=np.int32)
        word_pixel_counts(system, word, seed, steps, local,
                          viewport.left, viewport.top, inv, inv)
        order_plane[local > 0] = k
    distinct = sorted({k for k in returns}, key=lambda k: (k == 0, k))
    rank = {k: i for i, k in enumerate(distinct)}
    table = np.array(ORDER_PALETTE, dtype=np.uint8)
    for k in distinct:
        pixels[order_plane == k] = table[rank[k] % len(table)]
    return RasterImage(viewport, pixels, None)
