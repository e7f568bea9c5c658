"""Finite/infinite classification at a budget and critical-radius bisection.

A system is classified by orbiting a set of witness seeds: any seed
whose orbit exceeds the point budget makes the verdict InfinitePresumed,
an explicitly budget-relative statement, never a claim of mathematical
infiniteness.  Bisection on the radius maintains a (Finite,
InfinitePresumed) bracket until it is narrower than the tolerance.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .engine import OrbitParams, orbit_bfs
from .geometry import DiskSystem

__all__ = [
    "AlwaysFiniteError",
    "BracketError",
    "Classification",
    "DEFAULT_BRACKET",
    "NUMERIC_RC_TABLE",
    "RcEstimate",
    "SEED_RNG_CONSTANT",
    "classify",
    "default_seeds",
    "estimate_rc",
    "family_can_be_infinite",
    "radius_table",
    "write_radius_csv",
]

# Fixed generator seed for the lens-point sampler; part of the
# determinism contract for classification and estimation.
SEED_RNG_CONSTANT = 0xD15C

DEFAULT_BRACKET = (1.001, 4.0)

_EXCLUDED_LCMS = frozenset({2, 3, 4, 6})

# Published numerical critical-radius estimates for the symmetric
# two-disk family, by rotation order (6-decimal reference values).
NUMERIC_RC_TABLE = {
    5: 2.148961,
    7: 1.623574,
    8: 1.711411,
    9: 1.408482,
    10: 1.543357,
    11: 1.290582,
    12: 1.376547,
}


class AlwaysFiniteError(ValueError):
    """The family is finite at every radius; estimation is meaningless."""


class BracketError(ValueError):
    """Bisection endpoints do not classify as (Finite, InfinitePresumed)."""


def family_can_be_infinite(n1, n2):
    """True iff some radius makes the two-disk family infinite.

    The symmetric criterion: the group can be infinite exactly when
    lcm(n1, n2) is not one of 2, 3, 4, 6 (the crystallographic orders).
    """
    if n1 < 2 or n2 < 2:
        raise ValueError("rotation orders must be at least 2")
    return math.lcm(n1, n2) not in _EXCLUDED_LCMS


@dataclass(frozen=True)
class Classification:
    """Budget-relative verdict with per-seed orbit evidence."""

    verdict: str
    evidence: tuple
    budget: int
    seeds: tuple


@dataclass(frozen=True)
class RcEstimate:
    """Bisection bracket for the critical radius of one symmetric family."""

    n: int
    bracket_lo: float
    bracket_hi: float
    budget: int
    tol: float
    seeds_used: tuple
    iterations: int
    history: tuple

    @property
    def estimate(self):
        return 0.5 * (self.bracket_lo + self.bracket_hi)


def _lens_box(d1, d2):
    lo_x = max(d1.center[0] - d1.radius, d2.center[0] - d2.radius)
    hi_x = min(d1.center[0] + d1.radius, d2.center[0] + d2.radius)
    lo_y = max(d1.center[1] - d1.radius, d2.center[1] - d2.radius)
    hi_y = min(d1.center[1] + d1.radius, d2.center[1] + d2.radius)
    return lo_x, hi_x, lo_y, hi_y


def default_seeds(system, count=8, rng_constant=SEED_RNG_CONSTANT):
    """Witness seeds: pair intersection points plus sampled lens points.

    For each overlapping disk pair, the upper intersection point is
    followed by `count` rejection-sampled points of that lens, drawn
    from a fresh fixed-seed generator, so the seed list is a pure
    function of the system.  Non-overlapping systems yield no seeds.
    """
    rng = random.Random(rng_constant)
    seeds = []
    k = len(system)
    for i in range(k):
        for j in range(i + 1, k):
            pts = system.intersection_points(i, j)
            if not pts:
                continue
            seeds.append(pts[0])
            if len(pts) == 1:
                continue
            d1, d2 = system.disks[i], system.disks[j]
            lo_x, hi_x, lo_y, hi_y = _lens_box(d1, d2)
            got = 0
            attempts = 0
            while got < count and attempts < 10000 * count:
                attempts += 1
                p = (rng.uniform(lo_x, hi_x), rng.uniform(lo_y, hi_y))
                if system.contains(i, p) and system.contains(j, p):
                    seeds.append(p)
                    got += 1
    return tuple(seeds)


def classify(system, budget, seeds=None, quantum=1e-9, threads=1):
    """Finite/InfinitePresumed verdict for one system at a budget.

    Searches breadth-first from each seed with a full duplicate table
    and stops early at the first budget overrun; InfinitePresumed iff
    at least one seed exceeded.  The full table (rather than the
    memory-lean frontier window) makes closure detection immune to
    re-floods from rare quantization mismatches on reverse edges,
    which matters for large coordinate scales.  A system with no seeds
    (disjoint disks) is Finite with empty evidence: every orbit then
    stays inside a single disk and is cyclic.
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    if seeds is None:
        seeds = default_seeds(system)
    seeds = tuple((float(p[0]), float(p[1])) for p in seeds)
    params = OrbitParams(budget=budget, quantum=quantum, threads=threads)
    evidence = []
    verdict = "Finite"
    for seed in seeds:
        res = orbit_bfs(system, seed, params)
        evidence.append({"seed": seed, **res.summary()})
        if res.status == "BudgetExceeded":
            verdict = "InfinitePresumed"
            break
    return Classification(verdict, tuple(evidence), int(budget), seeds)


def estimate_rc(n, budget, tol, bracket=None, quantum=1e-9, threads=1, seed_count=8):
    """Bisection bracket for the critical radius of the symmetric family.

    Maintains classify(lo) = Finite and classify(hi) = InfinitePresumed
    at the given budget, halving until hi - lo <= tol.  Seeds are the
    radius-dependent defaults; seeds_used records the final midpoint's
    list.  The arithmetic-mean midpoint keeps steps deterministic.
    """
    if not family_can_be_infinite(n, n):
        raise AlwaysFiniteError(f"order {n} family is finite at every radius")
    if not tol > 0:
        raise ValueError("tol must be positive")
    lo, hi = bracket if bracket is not None else DEFAULT_BRACKET
    lo = float(lo)
    hi = float(hi)
    if not lo < hi:
        raise BracketError(f"bracket must satisfy lo < hi, got ({lo}, {hi})")

    def run(r):
        system = DiskSystem.symmetric(n, r)
        seeds = default_seeds(system, count=seed_count)
        return classify(system, budget, seeds, quantum=quantum, threads=threads)

    c_lo = run(lo)
    if c_lo.verdict != "Finite":
        raise BracketError(f"lower endpoint r={lo} classifies {c_lo.verdict}")
    c_hi = run(hi)
    if c_hi.verdict != "InfinitePresumed":
        raise BracketError(f"upper endpoint r={hi} classifies {c_hi.verdict}")

    history = []
    iterations = 0
    seeds_used = c_hi.seeds
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        c_mid = run(mid)
        history.append((mid, c_mid.verdict))
        seeds_used = c_mid.seeds
        if c_mid.verdict == "Finite":
            lo = mid
        else:
            hi = mid
        iterations += 1
    return RcEstimate(
        n=int(n),
        bracket_lo=lo,
        bracket_hi=hi,
        budget=int(budget),
        tol=float(tol),
        seeds_used=seeds_used,
        iterations=iterations,
        history=tuple(history),
    )


def radius_table(n_list, budget, tol, bracket=None, quantum=1e-9, threads=1):
    """Estimate rows for several orders; excluded families get markers."""
    rows = []
    for n in n_list:
        if not family_can_be_infinite(n, n):
            rows.append({
                "n": int(n),
                "estimate": None,
                "lo": None,
                "hi": None,
                "budget": int(budget),
                "tol": float(tol),
                "verdict_basis": "AlwaysFinite",
            })
            continue
        est = estimate_rc(n, budget, tol, bracket=bracket, quantum=quantum, threads=threads)
        rows.append({
            "n": int(n),
            "estimate": est.estimate,
            "lo": est.bracket_lo,
            "hi": est.bracket_hi,
            "budget": int(budget),
            "tol": float(tol),
            "verdict_basis": "bisection",
        })
    return rows


def write_radius_csv(rows, out):
    """CSV with header n,estimate,lo,hi,budget,tol,verdict_basis."""
    out.write("n,estimate,lo,hi,budget,tol,verdict_basis\n")
    for row in rows:
        if row["verdict_basis"] == "AlwaysFinite":
            out.write(f"{row['n']},,,,{row['budget']},{row['tol']:g},AlwaysFinite\n")
        else:
            out.write(
                f"{row['n']},{row['estimate']:.6f},{row['lo']:.6f},{row['hi']:.6f},"
                f"{row['budget']},{row['tol']:g},bisection\n"
            )
