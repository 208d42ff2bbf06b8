"""Exact counts of integral points of bounded height, two independent ways.

The counting path enumerates canonical Cox tuples (a1..a4 > 0, a12 = 1, all
coordinates nonzero, Pluecker relations, full coprimality, height <= B) and
relies on the bijection with integral points off the lines.  The oracle path
scans a finite box in P^2 directly.  Both produce bit-exact counts and are
cross-checked against each other in the test suite.

Search-space bounds.  Write x = a23, y = a34, kB = kappa * B where kappa is
the comparison constant of the height set.  For any counted tuple the four
reference monomials m1 = a1*a2*x*a14, m2 = a1*a2*a13*a24, m3 = a2*a3*x*y,
m4 = a1*a3*a13*y satisfy |m_i| <= kB.  The Pluecker relations give the other
six monomials of the same degree as integer combinations:

    a2*a2*x*a24   = m3 + m1,    a1*a1*a13*a14 = m2 - m4,
    a3*a4*y*y     = m3 - m4,    a1*a2*y       = m2 - m1,
    a2*a4*a24*y   = m3 - m2 + m1,   a1*a4*a14*y = m4 - m2 + m1,

so those are bounded by 2kB, 2kB, 2kB, 2kB, 3kB, 3kB respectively.  With all
coordinates nonzero integers this bounds every loop:

    a1, a2 <= sqrt(2kB);  a1*a2, a1*a3, a2*a3 <= kB;
    |x| <= kB / (a2 * max(a1, a3));  a4 <= min(2kB/a3, 3kB/a1, 3kB/a2);
    |y| <= min(kB/(a2*a3*|x|), kB/(a1*a3), 2kB/(a1*a2), sqrt(2kB/(a3*a4)),
               3kB/(a2*a4*|a24|), 3kB/(a1*a4)).

Congruence structure (the spec's loop order): x runs over one residue class
mod a4 (from a3*x = a1 mod a4) and y over one class mod a1 (from
a4*y = a2*x mod a1); the dependent coordinates a24, a13, a14 are exact
quotients.  Scanning every a4 up to its box bound is quadratic in B, so for
a4 above an adaptive threshold the same congruence is enumerated backwards:
a4 then runs over the divisors of a3*x - a1 (smallest-prime-factor table).

Coprimality is enforced by a minimal sufficient set of gcd tests; the
remaining schema pairs are implied through the Pluecker relations (see
_emit_candidates for the derivation).
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from math import gcd, isqrt
from typing import Iterator, Optional, Sequence

import numpy as np

from .heights import HeightSet, p1_combination, swap_symmetric
from .torsor import CoxTuple

__all__ = ["CountRecord", "count_torsor", "count_direct", "count_series", "iter_torsor_tuples"]

# Above this many candidates the direct box scan is refused (it is the small-B
# oracle, quadratic in B by design).
_DIRECT_BOUND_LIMIT = 5000

# int64 safety margin for the compiled kernels: all intermediates stay below
# 2^62 provided kappa * Bmax does not exceed this.
_KERNEL_KB_LIMIT = 16_000_000


@dataclass(frozen=True)
class CountRecord:
    """One row of the empirical series: exact N(bound) for one method."""

    bound: int
    count: int
    height_set_id: str
    method: str
    elapsed_seconds: float

    def csv_row(self) -> str:
        return f"{self.bound},{self.count},{self.height_set_id},{self.method},{self.elapsed_seconds:.3f}"

    CSV_HEADER = "B,count,height_set,method,seconds"


def _check_bounds(bounds: Sequence[int]) -> list[int]:
    bs = [int(b) for b in bounds]
    if not bs:
        raise ValueError("need at least one height bound")
    if any(b < 1 for b in bs):
        raise ValueError("height bounds must be positive integers")
    if any(b2 <= b1 for b1, b2 in zip(bs, bs[1:])):
        raise ValueError("height bounds must be strictly ascending")
    return bs


def _comb_matrix(ps: HeightSet) -> list[tuple[int, int, int, int]]:
    return [p1_combination(f) for f in ps.forms]


def _spf_table(limit: int) -> np.ndarray:
    """Smallest prime factor for every integer in [0, limit]."""
    spf = np.zeros(limit + 1, dtype=np.int32)
    for p in range(2, isqrt(limit) + 1):
        if spf[p] == 0:
            view = spf[p * p :: p]
            view[view == 0] = p
    rest = np.nonzero(spf == 0)[0]
    spf[rest] = rest.astype(np.int32)
    spf[0] = 0
    if limit >= 1:
        spf[1] = 1
    return spf


def _divisors_from_spf(n: int, spf: np.ndarray) -> list[int]:
    divs = [1]
    while n > 1:
        p = int(spf[n])
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return divs


def _emit_candidates(
    bmax: int,
    ps: HeightSet,
    spf: Optional[np.ndarray] = None,
) -> Iterator[tuple[int, ...]]:
    """Yield (a1,a2,a3,a4,x,a24,y,a13,a14,h) for every canonical counted tuple.

    Reference implementation in exact Python integers; the compiled kernel in
    _kernels mirrors it statement by statement.

    Sufficiency of the explicit gcd tests (C1 = pairs among a1..a4, C2 = pairs
    (a_i, a_jk) with i outside {j,k}, C3 = pairs (a_ij, a_ik)): with a12 = 1
    the relations read a4*a14 = a3*a13 - a2, a4*a24 = a3*x - a1,
    a1*a13 = a2*x - a4*y, a3*y = a2*a24 - a1*a14, y = a13*a24 - x*a14.
    Checking C1, gcd(x,a1), gcd(d,a2) for the a4 candidate d, and per point
    gcd(y,a2), gcd(y,x), gcd(y,a24) forces every other schema pair: a prime
    dividing both members of any remaining pair propagates through one of the
    relations into an already-checked pair.  (Example: p | x and p | a4
    divides a3*x - a1*1, hence a1, contradicting gcd(x, a1) = 1; the full case
    list is exercised against coprimality_check in the tests.)
    """
    kappa = ps.kappa
    kB = kappa * bmax
    comb = _comb_matrix(ps)
    if spf is None:
        spf = _spf_table(max(2 * kB, 4))
    a1a2cap = isqrt(2 * kB)

    for a1 in range(1, a1a2cap + 1):
        for a2 in range(1, min(kB // a1, a1a2cap) + 1):
            if gcd(a1, a2) != 1:
                continue
            a12prod = a1 * a2
            for a3 in range(1, kB // max(a1, a2) + 1):
                if gcd(a3, a1) != 1 or gcd(a3, a2) != 1:
                    continue
                lx = min(kB // (a2 * max(a1, a3)), (2 * kB) // (a2 * a2))
                if lx < 1:
                    break
                a4max = min((2 * kB) // a3, (3 * kB) // a1, (3 * kB) // a2)
                if a4max < 1:
                    break
                a4scan = min(a4max, max(4 * lx, 16))
                coprod = a1 * a2 * a3
                for a4 in range(1, a4scan + 1):
                    if gcd(a4, coprod) != 1:
                        continue
                    r = (a1 * pow(a3, -1, a4)) % a4 if a4 > 1 else 0
                    x = r - ((r + lx) // a4) * a4
                    while x <= lx:
                        if x != 0 and gcd(x, a1) == 1:
                            yield from _process_column(
                                a1, a2, a3, a4, x, kB, bmax, comb
                            )
                        x += a4
                if a4max > a4scan:
                    for x in range(-lx, lx + 1):
                        if x == 0 or gcd(x, a1) != 1:
                            continue
                        ak = abs(a3 * x - a1)
                        if ak <= a4scan:
                            continue
                        for d in _divisors_from_spf(ak, spf):
                            if a4scan < d <= a4max and gcd(d, a2) == 1:
                                yield from _process_column(
                                    a1, a2, a3, d, x, kB, bmax, comb
                                )


def _process_column(a1, a2, a3, a4, x, kB, bmax, comb):
    """All counted points with the given free coordinates and x = a23."""
    k = a3 * x - a1
    if k == 0:
        return
    a24 = k // a4  # exact: a4 | k by construction in both phases
    absx = abs(x)
    abs24 = abs(a24)
    ymax = min(
        kB // (a2 * a3 * absx),
        kB // (a1 * a3),
        (2 * kB) // (a1 * a2),
        isqrt((2 * kB) // (a3 * a4)),
        (3 * kB) // (a2 * a4 * abs24),
        (3 * kB) // (a1 * a4),
    )
    if ymax < 1:
        return
    if a1 == 1:
        y0, step = -ymax, 1
    else:
        c = (a2 * x * pow(a4, -1, a1)) % a1
        step = a1
        y0 = c - ((c + ymax) // a1) * a1
    y = y0
    while y <= ymax:
        if y == 0:
            y += step
            continue
        a13 = (a2 * x - a4 * y) // a1  # exact: y is in the right class mod a1
        if a13 == 0:
            y += step
            continue
        abs13 = abs(a13)
        if abs13 > kB or a1 * a2 * abs13 * abs24 > kB or a1 * a3 * abs13 * abs(y) > kB:
            y += step
            continue
        num14 = a3 * a13 - a2
        a14 = num14 // a4
        if a14 * a4 != num14:
            raise AssertionError("a14 division not exact; congruence logic broken")
        if a14 == 0:
            y += step
            continue
        abs14 = abs(a14)
        if abs14 > kB or a1 * a2 * absx * abs14 > kB:
            y += step
            continue
        mu1 = a1 * a2 * x * a14
        mu2 = a1 * a2 * a13 * a24
        mu3 = a2 * a3 * x * y
        mu4 = a1 * a3 * a13 * y
        h = 0
        for (c1, c2, c3, c4) in comb:
            v = abs(c1 * mu1 + c2 * mu2 + c3 * mu3 + c4 * mu4)
            if v > h:
                h = v
        if h <= bmax and gcd(y, a2) == 1 and gcd(y, x) == 1 and gcd(y, a24) == 1:
            yield (a1, a2, a3, a4, x, a24, y, a13, a14, h)
        y += step


def iter_torsor_tuples(bound: int, ps: HeightSet) -> Iterator[tuple[CoxTuple, int]]:
    """Yield (canonical CoxTuple, exact height) for every counted point, height <= bound.

    Pure-Python reference path; intended for invariant checking and small
    bounds.  The order of tuples is deterministic.
    """
    if bound < 1:
        raise ValueError("bound must be a positive integer")
    for a1, a2, a3, a4, x, a24, y, a13, a14, h in _emit_candidates(bound, ps):
        yield CoxTuple(a1, a2, a3, a4, 1, a13, a14, x, a24, y), h


def _series_python(bounds: list[int], ps: HeightSet) -> list[int]:
    hist = [0] * len(bounds)
    for _, h in iter_torsor_tuples(bounds[-1], ps):
        for j, b in enumerate(bounds):
            if h <= b:
                hist[j] += 1
                break
    counts, acc = [], 0
    for v in hist:
        acc += v
        counts.append(acc)
    return counts


def _series_kernel(bounds: list[int], ps: HeightSet, threads: Optional[int]) -> Optional[list[int]]:
    kB = ps.kappa * bounds[-1]
    if kB > _KERNEL_KB_LIMIT:
        return None
    try:
        from . import _kernels
    except ImportError:
        return None
    comb = np.array(_comb_matrix(ps), dtype=np.int64)
    if int(np.abs(comb).sum(axis=1).max()) * kB >= 2**62:
        return None
    import numba

    if threads:
        numba.set_num_threads(max(1, threads))
    numba.set_parallel_chunksize(1)  # dynamic scheduling over pair chunks
    spf = _kernels.spf_sieve(max(2 * kB, 4))
    sym = swap_symmetric(ps)
    a1s, a2s = _kernels.build_pairs(np.int64(kB), np.int64(isqrt(2 * kB)), sym)
    hist = _kernels.torsor_series(
        np.int64(bounds[-1]),
        np.int64(ps.kappa),
        np.asarray(bounds, dtype=np.int64),
        comb,
        spf,
        a1s,
        a2s,
        sym,
    )
    counts, acc = [], 0
    for v in hist.tolist():
        acc += v
        counts.append(acc)
    return counts


def count_series(
    bounds: Sequence[int],
    ps: HeightSet,
    threads: Optional[int] = None,
    force_python: bool = False,
) -> list[CountRecord]:
    """Exact N(B) for each bound, in one torsor enumeration pass."""
    bs = _check_bounds(bounds)
    t0 = time.perf_counter()
    counts = None
    if not force_python:
        counts = _series_kernel(bs, ps, threads)
    if counts is None:
        counts = _series_python(bs, ps)
    dt = time.perf_counter() - t0
    return [
        CountRecord(b, n, ps.id, "torsor", dt) for b, n in zip(bs, counts)
    ]


def count_torsor(bound: int, ps: HeightSet, threads: Optional[int] = None) -> CountRecord:
    """Exact number of integral points off the lines with height <= bound."""
    return count_series([bound], ps, threads=threads)[0]


def _direct_python(bounds: list[int], ps: HeightSet) -> list[int]:
    kB = ps.kappa * bounds[-1]
    rows = [f.monomial_vector() for f in ps.forms]
    hist = [0] * len(bounds)
    for y1 in range(1, kB + 1):
        for y2 in range(-kB, kB + 1):
            if y2 == 0 or y2 == y1:
                continue
            g12 = gcd(y1, abs(y2))
            d12 = y1 - y2
            for y3 in range(-kB, kB + 1):
                if y3 == 0 or y3 == y1 or y3 == y2:
                    continue
                g13 = gcd(y1, abs(y3))
                g23 = gcd(abs(y2), abs(y3))
                if abs(y3) != g13 * g23:  # not integral
                    continue
                if gcd(g12, abs(y3)) != 1:  # not primitive
                    continue
                g2 = gcd(abs(d12), abs(y1 - y3))
                m = 0
                for (c11, c22, c12, c13, c23) in rows:
                    v = abs(
                        c11 * y1 * y1 + c22 * y2 * y2 + c12 * y1 * y2
                        + y3 * (c13 * y1 + c23 * y2)
                    )
                    if v > m:
                        m = v
                den = g12 * g2
                for j, b in enumerate(bounds):
                    if m <= b * den:
                        hist[j] += 1
                        break
    counts, acc = [], 0
    for v in hist:
        acc += v
        counts.append(acc)
    return counts


def _direct_series(bounds: list[int], ps: HeightSet, threads: Optional[int]) -> list[int]:
    try:
        from . import _kernels
    except ImportError:
        return _direct_python(bounds, ps)
    if threads:
        import numba

        numba.set_num_threads(max(1, threads))
    rows = np.array([f.monomial_vector() for f in ps.forms], dtype=np.int64)
    hist = _kernels.direct_series(
        np.int64(bounds[-1]), np.int64(ps.kappa), np.asarray(bounds, dtype=np.int64), rows
    )
    counts, acc = [], 0
    for v in hist.tolist():
        acc += v
        counts.append(acc)
    return counts


def count_direct(bound: int, ps: HeightSet, threads: Optional[int] = None) -> CountRecord:
    """Oracle count: exhaustive primitive box scan in P^2 (small bounds only)."""
    bs = _check_bounds([bound])
    if bs[0] > _DIRECT_BOUND_LIMIT:
        raise ValueError(
            f"direct search is the small-B oracle; bound {bound} exceeds {_DIRECT_BOUND_LIMIT}"
        )
    t0 = time.perf_counter()
    n = _direct_series(bs, ps, threads)[0]
    dt = time.perf_counter() - t0
    return CountRecord(bs[0], n, ps.id, "direct", dt)
