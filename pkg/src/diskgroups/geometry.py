"""Disk systems, words over disk rotations, and their piecewise action.

A disk system is a finite list of closed disks, each carrying a rotation
order n.  The generator attached to disk i rotates points of that disk
clockwise by 2*pi/n about its center and leaves every other point fixed.
Raising the generator to an exponent e rotates by -2*pi*e/n; membership
is decided once per factor (points inside a disk stay inside under its
own rotation, so stepping or jumping are the same map).

Membership uses the closed disk with an absolute slack of 1e-12 so that
boundary points, intersection points in particular, count as inside.

All backends share the trigonometric tables and the squared radii
computed here, and must combine them with the exact expression

    nx = cx + (dx*rc - dy*rs)
    ny = cy + (dx*rs + dy*rc)

so that results are bit-identical across implementations.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

__all__ = [
    "BOUNDARY_TOL",
    "DiskSpec",
    "DiskSystem",
    "Word",
    "apply_word_checked",
    "upper_intersection",
]

BOUNDARY_TOL = 1e-12

_WORD_TOKEN = re.compile(r"([a-z])(-?\d+)?")


@dataclass(frozen=True)
class DiskSpec:
    """One closed disk with a rotation order."""

    center: tuple
    radius: float
    order: int

    def __post_init__(self):
        if len(self.center) != 2:
            raise ValueError("disk center must be a 2-tuple")
        object.__setattr__(self, "center", (float(self.center[0]), float(self.center[1])))
        object.__setattr__(self, "radius", float(self.radius))
        if not math.isfinite(self.radius) or self.radius <= 0:
            raise ValueError(f"disk radius must be positive and finite, got {self.radius}")
        if not isinstance(self.order, int) or self.order < 2:
            raise ValueError(f"rotation order must be an integer >= 2, got {self.order}")


class DiskSystem:
    """A list of disks with precomputed rotation tables."""

    def __init__(self, disks):
        disks = tuple(disks)
        if not disks:
            raise ValueError("disk system needs at least one disk")
        for d in disks:
            if not isinstance(d, DiskSpec):
                raise TypeError("disks must be DiskSpec instances")
        self.disks = disks
        self._rr = tuple((d.radius + BOUNDARY_TOL) ** 2 for d in disks)
        self._roots = tuple(
            tuple(
                (math.cos(2.0 * math.pi * j / d.order), math.sin(2.0 * math.pi * j / d.order))
                for j in range(d.order)
            )
            for d in disks
        )

    @classmethod
    def two_disk(cls, n1, n2, r1, r2=None, centers=((-1.0, 0.0), (1.0, 0.0))):
        """The standard pair of disks centered at (-1, 0) and (1, 0)."""
        if r2 is None:
            r2 = r1
        c1, c2 = centers
        return cls((DiskSpec(c1, r1, n1), DiskSpec(c2, r2, n2)))

    @classmethod
    def symmetric(cls, n, r):
        """Two disks of equal order and equal radius."""
        return cls.two_disk(n, n, r)

    def __len__(self):
        return len(self.disks)

    def __repr__(self):
        parts = ", ".join(
            f"({d.center[0]:g},{d.center[1]:g}) r={d.radius:g} n={d.order}" for d in self.disks
        )
        return f"DiskSystem[{parts}]"

    def membership_radius_squared(self, i):
        """Squared comparison radius including the boundary slack."""
        return self._rr[i]

    def unit_root(self, i, exponent):
        """(cos, sin) multiplier implementing rotation by -2*pi*e/n."""
        order = self.disks[i].order
        return self._roots[i][(-exponent) % order]

    def contains(self, i, p):
        cx, cy = self.disks[i].center
        dx = p[0] - cx
        dy = p[1] - cy
        return dx * dx + dy * dy <= self._rr[i]

    def rotate(self, i, p, exponent=1):
        """Rotate about disk i's center unconditionally."""
        cx, cy = self.disks[i].center
        rc, rs = self.unit_root(i, exponent)
        dx = p[0] - cx
        dy = p[1] - cy
        return (cx + (dx * rc - dy * rs), cy + (dx * rs + dy * rc))

    def apply_generator(self, i, p, exponent=1):
        """Piecewise action: rotate if p lies in disk i, else fix p."""
        if not self.contains(i, p):
            return p
        return self.rotate(i, p, exponent)

    def apply_word(self, word, p):
        """Apply factors left to right: the leftmost acts first."""
        k = len(self.disks)
        for pos, (i, e) in enumerate(word.factors):
            if not 0 <= i < k:
                raise ValueError(f"factor {pos}: disk index {i} out of range for {k} disks")
            p = self.apply_generator(i, p, e)
        return p

    def neighbors(self, p):
        """Images of p under each generator and its inverse.

        Returns ((disk, step), image) pairs in disk order, step +1 before
        -1, omitting images equal to p (points outside every disk have no
        neighbors; disk centers are fixed points).
        """
        out = []
        for i in range(len(self.disks)):
            if not self.contains(i, p):
                continue
            for step in (1, -1):
                q = self.rotate(i, p, step)
                if q != p:
                    out.append(((i, step), q))
        return out

    def intersection_points(self, i=0, j=1):
        """Boundary-circle intersections of disks i and j.

        Returns (), a single tangency point, or two points with the
        higher-y point first.
        """
        (x1, y1), r1 = self.disks[i].center, self.disks[i].radius
        (x2, y2), r2 = self.disks[j].center, self.disks[j].radius
        dx = x2 - x1
        dy = y2 - y1
        d2 = dx * dx + dy * dy
        if d2 == 0.0:
            return ()
        d = math.sqrt(d2)
        a = (d2 + r1 * r1 - r2 * r2) / (2.0 * d)
        h2 = r1 * r1 - a * a
        tol = 1e-12 * max(r1 * r1, 1.0)
        if h2 < -tol:
            return ()
        mx = x1 + a * dx / d
        my = y1 + a * dy / d
        if h2 <= tol:
            return ((mx, my),)
        h = math.sqrt(h2)
        px = -dy / d * h
        py = dx / d * h
        p1 = (mx + px, my + py)
        p2 = (mx - px, my - py)
        if p1[1] >= p2[1]:
            return (p1, p2)
        return (p2, p1)


def upper_intersection(system, i=0, j=1):
    """The intersection point of two disk boundaries with the largest y."""
    pts = system.intersection_points(i, j)
    if not pts:
        raise ValueError("disks do not intersect")
    return pts[0]


@dataclass(frozen=True)
class Word:
    """A product of generator powers, applied left to right.

    factors is a tuple of (disk index, signed exponent) pairs.  The text
    form writes disk 0 as 'a', disk 1 as 'b', and so on, with an optional
    signed exponent after each letter: "a2b-1" means a^2 then b^-1.
    """

    factors: tuple

    def __post_init__(self):
        fs = tuple((int(i), int(e)) for i, e in self.factors)
        for i, e in fs:
            if i < 0:
                raise ValueError(f"negative disk index {i}")
        object.__setattr__(self, "factors", fs)

    @classmethod
    def parse(cls, text):
        text = text.strip()
        if not text:
            raise ValueError("empty word")
        pos = 0
        factors = []
        while pos < len(text):
            m = _WORD_TOKEN.match(text, pos)
            if m is None:
                raise ValueError(f"bad word syntax at position {pos}: {text[pos:]!r}")
            letter, exp = m.groups()
            factors.append((ord(letter) - ord("a"), 1 if exp is None else int(exp)))
            pos = m.end()
        return cls(tuple(factors))

    def __str__(self):
        return "".join(
            chr(ord("a") + i) + ("" if e == 1 else str(e)) for i, e in self.factors
        )

    def __len__(self):
        return len(self.factors)

    def __mul__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return Word(self.factors + other.factors)

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("word powers take nonnegative integer exponents")
        return Word(self.factors * k)

    def inverse(self):
        return Word(tuple((i, -e) for i, e in reversed(self.factors)))

    def normalized(self, orders):
        """Merge adjacent same-disk factors and center exponents.

        orders gives the rotation order per disk index.  Exponents are
        reduced into (-n/2, n/2]; zero factors are dropped.  The result
        is a new Word for reporting; the raw word is kept for replay.
        """
        stack = []
        for i, e in self.factors:
            if stack and stack[-1][0] == i:
                e += stack.pop()[1]
            n = orders[i]
            if e % n == 0:
                continue
            stack.append((i, e))
        out = []
        for i, e in stack:
            n = orders[i]
            m = e % n
            if 2 * m > n:
                m -= n
            out.append((i, m))
        return Word(tuple(out))


def apply_word_checked(system, word, p, tol=BOUNDARY_TOL):
    """Apply a word insisting each factor's point lies in its disk.

    Raises ValueError naming the first factor whose disk does not contain
    the current point, which certifies that a claimed translation word
    genuinely acts by rotations the whole way through.
    """
    for pos, (i, e) in enumerate(word.factors):
        cx, cy = system.disks[i].center
        dx = p[0] - cx
        dy = p[1] - cy
        rr = (system.disks[i].radius + tol) ** 2
        if dx * dx + dy * dy > rr:
            raise ValueError(
                f"factor {pos} (disk {i}, exponent {e}): point {p} outside disk"
            )
        p = system.rotate(i, p, e)
    return p
