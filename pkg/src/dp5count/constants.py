"""Factors of the predicted leading constant for the integral-point count.

The prediction has the shape

    N(B) ~ c * B * (log B)^4,
    c = alpha * omega_inf * prod_p (1 - 1/p)^4 (1 + 4/p),

where alpha = 17/576 is an exact rational polytope volume, omega_inf is twice
the area of the region where all height forms restricted to the boundary line
are at most 1, and the Euler product runs over all primes.  alpha is computed
exactly; the two analytic factors are returned as honest enclosing intervals
(outward-rounded float endpoints), so the assembled constant is an interval
that provably contains the true value.

The finite-field point counts double as independent oracles: the brute-force
torsor count over F_p divided by (p-1)^5 must reproduce p^2 + 5p + 1 points on
the surface and p^2 + 4p off the boundary, which is exactly the local density
(1 + 4/p) after normalization.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import isqrt
from typing import Iterable, Sequence

import numpy as np

from .heights import HeightSet
from .torsor import COPRIMALITY_SCHEMA, CoxTuple

__all__ = [
    "Halfspace",
    "Interval",
    "ConstantReport",
    "polytope_volume",
    "alpha_halfspaces",
    "alpha_exact",
    "monte_carlo_alpha",
    "euler_local_factor",
    "euler_partial_exact",
    "euler_product",
    "ff_surface_count",
    "padic_density_check",
    "archimedean_density",
    "monte_carlo_archimedean",
    "leading_constant",
]


def _down(v: float) -> float:
    return math.nextafter(v, -math.inf)


def _up(v: float) -> float:
    return math.nextafter(v, math.inf)


@dataclass(frozen=True)
class Interval:
    """A closed float interval certified to contain an exact real value."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        if not self.lo <= self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def contains(self, value) -> bool:
        return self.lo <= value <= self.hi

    def encloses(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def __mul__(self, other):
        if isinstance(other, Interval):
            if self.lo < 0 or other.lo < 0:
                raise ValueError("interval product only implemented for nonnegative intervals")
            return Interval(_down(self.lo * other.lo), _up(self.hi * other.hi))
        f = Fraction(other)
        if f < 0:
            raise ValueError("scalar must be nonnegative")
        return Interval(_down(float(f.numerator) * self.lo / float(f.denominator)),
                        _up(float(f.numerator) * self.hi / float(f.denominator)))

    __rmul__ = __mul__


@dataclass(frozen=True)
class Halfspace:
    """Constraint normal . t <= offset on R^4 (exact rationals)."""

    normal: tuple[Fraction, Fraction, Fraction, Fraction]
    offset: Fraction

    def __post_init__(self) -> None:
        normal = tuple(Fraction(v) for v in self.normal)
        if not any(normal):
            raise ValueError("halfspace normal must be nonzero")
        object.__setattr__(self, "normal", normal)
        object.__setattr__(self, "offset", Fraction(self.offset))


def _solve_square(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    n = len(rhs)
    m = [row[:] + [r] for row, r in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [v * inv for v in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


def _nullvector(rows: list[list[Fraction]], dim: int) -> list[Fraction] | None:
    """A nonzero vector orthogonal to dim-1 independent rows, or None."""
    m = [row[:] for row in rows]
    piv_cols: list[int] = []
    rank = 0
    for col in range(dim):
        piv = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        m[rank] = [v / m[rank][col] for v in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        piv_cols.append(col)
        rank += 1
    if rank != dim - 1:
        return None
    free = next(c for c in range(dim) if c not in piv_cols)
    vec = [Fraction(0)] * dim
    vec[free] = Fraction(1)
    for r, col in enumerate(piv_cols):
        vec[col] = -m[r][free]
    return vec


def _canonical_constraints(
    constraints: Iterable[tuple[Sequence[Fraction], Fraction]], dim: int
) -> list[tuple[tuple[Fraction, ...], Fraction]]:
    seen = {}
    for normal, offset in constraints:
        normal = tuple(Fraction(v) for v in normal)
        lead = next((v for v in normal if v != 0), None)
        if lead is None:
            continue
        scale = abs(lead)
        key = (tuple(v / scale for v in normal), Fraction(offset) / scale)
        seen[key] = key
    return list(seen)


def _vertices(cons, dim) -> list[tuple[Fraction, ...]]:
    verts = set()
    for subset in combinations(range(len(cons)), dim):
        rows = [list(cons[i][0]) for i in subset]
        rhs = [cons[i][1] for i in subset]
        v = _solve_square(rows, rhs)
        if v is None:
            continue
        if all(sum(n * x for n, x in zip(normal, v)) <= off for normal, off in cons):
            verts.add(tuple(v))
    return sorted(verts)


def _assert_bounded(cons, dim) -> None:
    # recession cone {A r <= 0}: nontrivial extreme ray <=> unbounded
    for subset in combinations(range(len(cons)), dim - 1):
        rows = [list(cons[i][0]) for i in subset]
        r = _nullvector(rows, dim)
        if r is None:
            continue
        for direction in (r, [-v for v in r]):
            if all(sum(n * x for n, x in zip(normal, direction)) <= 0 for normal, _ in cons):
                raise ValueError("polyhedron is unbounded")


def _volume_rec(cons, verts, dim) -> Fraction:
    if len(verts) <= dim:
        return Fraction(0)
    if dim == 1:
        xs = [v[0] for v in verts]
        return max(xs) - min(xs)
    center = [sum(v[i] for v in verts) / len(verts) for i in range(dim)]
    total = Fraction(0)
    for normal, offset in cons:
        face = [v for v in verts if sum(n * x for n, x in zip(normal, v)) == offset]
        if len(face) < dim:
            continue
        k = next(i for i in range(dim) if normal[i] != 0)
        nk = normal[k]
        sub_cons = []
        for n2, b2 in cons:
            if (n2, b2) == (normal, offset):
                continue
            f = n2[k] / nk
            new_n = tuple(n2[j] - f * normal[j] for j in range(dim) if j != k)
            new_b = b2 - f * offset
            if any(new_n):
                sub_cons.append((new_n, new_b))
        sub_verts = sorted({tuple(v[j] for j in range(dim) if j != k) for v in face})
        dist_scaled = abs(sum(n * c for n, c in zip(normal, center)) - offset) / abs(nk)
        if dist_scaled == 0:
            continue
        total += dist_scaled * _volume_rec(_canonical_constraints(sub_cons, dim - 1),
                                           sub_verts, dim - 1)
    return total / dim


def polytope_volume(halfspaces: Sequence[Halfspace]) -> Fraction:
    """Exact Lebesgue volume of {t in R^4, t >= 0, constraints} (must be bounded).

    Vertex enumeration over exact rationals, then a recursive pyramid
    decomposition over facets; no floating point anywhere.
    """
    dim = 4
    cons = [(hs.normal, hs.offset) for hs in halfspaces]
    for i in range(dim):
        normal = tuple(Fraction(-1 if j == i else 0) for j in range(dim))
        cons.append((normal, Fraction(0)))
    cons = _canonical_constraints(cons, dim)
    _assert_bounded(cons, dim)
    verts = _vertices(cons, dim)
    return _volume_rec(cons, verts, dim)


def alpha_halfspaces() -> list[Halfspace]:
    """The six constraints 2t_i + 2t_j - t_3 - t_4 <= 1 over unordered pairs."""
    out = []
    for i, j in combinations(range(4), 2):
        coeff = [Fraction(0)] * 4
        coeff[i] += 2
        coeff[j] += 2
        coeff[2] -= 1
        coeff[3] -= 1
        out.append(Halfspace(tuple(coeff), Fraction(1)))
    return out


def alpha_exact() -> Fraction:
    """The rational volume factor of the leading constant: exactly 17/576 over Q."""
    return Fraction(1, 2) * polytope_volume(alpha_halfspaces())


def monte_carlo_alpha(samples: int = 10**7, seed: int = 20250515) -> tuple[float, float]:
    """(estimate, standard error) for alpha by uniform sampling of [0,1/2]^2 x [0,1]^2.

    The sample box provably contains the polytope: adding the (i,4) and (i,3)
    constraints gives 4t_i <= 2 for i = 1, 2, and t_3 + t_4 <= 1 bounds the
    rest.  Estimates (1/2) * volume.
    """
    rng = np.random.default_rng(seed)
    box_volume = 0.25
    hits = 0
    chunk = 10**6
    done = 0
    while done < samples:
        n = min(chunk, samples - done)
        t = rng.random((n, 4))
        t[:, 0] *= 0.5
        t[:, 1] *= 0.5
        ok = np.ones(n, dtype=bool)
        for i, j in combinations(range(4), 2):
            ok &= 2 * t[:, i] + 2 * t[:, j] - t[:, 2] - t[:, 3] <= 1.0
        hits += int(ok.sum())
        done += n
    p = hits / samples
    est = 0.5 * p * box_volume
    sigma = 0.5 * box_volume * math.sqrt(max(p * (1 - p), 1e-12) / samples)
    return est, sigma


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in range(2, isqrt(n) + 1):
        if n % q == 0:
            return False
    return True


def euler_local_factor(p: int) -> Fraction:
    """(1 - 1/p)^4 * (1 + 4/p), exactly."""
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    return Fraction((p - 1) ** 4 * (p + 4), p**5)


def _primes_up_to(n: int) -> np.ndarray:
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.nonzero(sieve)[0]


def euler_partial_exact(cutoff: int) -> Fraction:
    """Exact rational product of the local factors over p <= cutoff (small cutoffs)."""
    if cutoff > 10**4:
        raise ValueError("exact partial product is intended for cutoffs <= 10^4")
    out = Fraction(1)
    for p in _primes_up_to(cutoff):
        out *= euler_local_factor(int(p))
    return out


def euler_product(prime_cutoff: int) -> Interval:
    """Enclosure of prod_p (1 - 1/p)^4 (1 + 4/p) over all primes.

    Partial product over p <= cutoff with per-factor outward rounding, times
    the rigorous tail enclosure exp(+-11/cutoff): the factor satisfies
    |log((1-1/p)^4(1+4/p))| <= 11/p^2 for p >= 11 (the factor is 1 - eps with
    0 < eps < 10/p^2 and -log(1-eps) <= eps + eps^2/(2(1-eps)) < 11/p^2), and
    sum_{n > cutoff} 11/n^2 <= 11/cutoff.
    """
    if prime_cutoff < 11:
        raise ValueError("prime cutoff must be at least 11 for the tail bound")
    lo, hi = 1.0, 1.0
    for p in _primes_up_to(prime_cutoff):
        p = int(p)
        num = float((p - 1) ** 4 * (p + 4))
        den = float(p**5)
        q = num / den
        # float(int) and the division each round once; 4 ulps cover it
        flo = _down(_down(_down(_down(q))))
        fhi = _up(_up(_up(_up(q))))
        lo = _down(lo * flo)
        hi = _up(hi * fhi)
    t = 11.0 / prime_cutoff
    tail_lo = _down(_down(math.exp(_down(-t))))
    tail_hi = _up(_up(math.exp(_up(t))))
    return Interval(_down(lo * tail_lo), _up(hi * tail_hi))


_FIELD_INDEX = {name: i for i, name in enumerate(CoxTuple._fields)}
_PAIR_INDICES = np.array(
    [[_FIELD_INDEX[a], _FIELD_INDEX[b]] for a, b in COPRIMALITY_SCHEMA], dtype=np.int64
)


def ff_surface_count(p: int, brute_force: bool = False) -> tuple[int, int]:
    """(#X(F_p), #U(F_p)) by brute-force counting on the torsor over F_p.

    Counts the tuples satisfying the five torsor equations minus the
    irrelevant locus (some coprimality-schema pair entirely zero), divides by
    the free (p-1)^5 torus action for the surface count, and removes the
    a12 = 0 boundary locus for the open-surface count.  Must equal
    (p^2 + 5p + 1, p^2 + 4p).
    """
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p > 13:
        raise ValueError("brute-force field counting is limited to p <= 13")
    from . import _kernels

    if brute_force:
        kept, kept12 = _kernels.ff_brute_count(np.int64(p), _PAIR_INDICES)
    else:
        kept, kept12 = _kernels.ff_torsor_count(np.int64(p), _PAIR_INDICES)
    torus = (p - 1) ** 5
    x_count, rx = divmod(int(kept), torus)
    u_count, ru = divmod(int(kept) - int(kept12), torus)
    if rx or ru:
        raise AssertionError(f"torsor count over F_{p} not divisible by (p-1)^5")
    return x_count, u_count


def padic_density_check(p: int) -> bool:
    """Whether (1 - 1/p)^4 * #U(F_p)/p^2 equals the predicted local factor."""
    _, u_count = ff_surface_count(p)
    lhs = Fraction(p - 1, p) ** 4 * Fraction(u_count, p**2)
    return lhs == euler_local_factor(p)


def _boundary_rows(ps: HeightSet) -> list[tuple[int, int, int]]:
    """(c11, c22, c12) of each form restricted to the boundary y3 = 0."""
    return [(f.c11, f.c22, f.c12) for f in ps.forms]


def _containment_halfwidth(ps: HeightSet) -> float:
    """Dyadic R with the region {max |P(u,v,0)| <= 1} inside [-R, R]^2.

    On the region, the reference forms give |uv|, |u(u-v)|, |v(u-v)| <= kappa,
    hence u^2 <= |u(u-v)| + |uv| <= 2*kappa and likewise v^2.
    """
    r = 1.0
    while r * r < 2 * ps.kappa:
        r *= 2.0
    return r


def archimedean_density(ps: HeightSet, tol: float = 1e-4, threshold: int = 1,
                        max_level: int = 24) -> Interval:
    """Enclosure of 2 * area{(u,v) : max_P |P(u,v,0)| <= threshold}, width <= tol.

    Adaptive quadtree subdivision with exact interval evaluation of the forms:
    cell corners are dyadic, so every float operation below is exact; cells
    entirely inside count toward both endpoints, straddling cells only toward
    the upper one.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    rows = _boundary_rows(ps)
    r = _containment_halfwidth(ps) * math.sqrt(threshold) if threshold != 1 else _containment_halfwidth(ps)
    if threshold != 1:
        # scale to a power of two that still contains the region
        v = _containment_halfwidth(ps)
        s = math.sqrt(threshold)
        r = v
        while r < v * s:
            r *= 2.0
    xs = np.array([-r, 0.0])
    xs, ys = np.meshgrid(xs, xs)
    xs = xs.ravel()
    ys = ys.ravel()
    size = r
    inside_area = Fraction(0)
    level = 1
    thr = float(threshold)
    while True:
        u_lo, u_hi = xs, xs + size
        v_lo, v_hi = ys, ys + size
        inside = np.ones(xs.shape, dtype=bool)
        outside = np.zeros(xs.shape, dtype=bool)
        uu_lo, uu_hi = _sq_interval(u_lo, u_hi)
        vv_lo, vv_hi = _sq_interval(v_lo, v_hi)
        uv_lo, uv_hi = _prod_interval(u_lo, u_hi, v_lo, v_hi)
        for (c11, c22, c12) in rows:
            p_lo = c11 * (uu_lo if c11 >= 0 else uu_hi) + c22 * (vv_lo if c22 >= 0 else vv_hi) \
                + c12 * (uv_lo if c12 >= 0 else uv_hi)
            p_hi = c11 * (uu_hi if c11 >= 0 else uu_lo) + c22 * (vv_hi if c22 >= 0 else vv_lo) \
                + c12 * (uv_hi if c12 >= 0 else uv_lo)
            inside &= (p_hi <= thr) & (p_lo >= -thr)
            outside |= (p_lo > thr) | (p_hi < -thr)
        n_in = int(inside.sum())
        if n_in:
            inside_area += n_in * Fraction(size) ** 2
        straddle = ~inside & ~outside
        n_str = int(straddle.sum())
        straddle_area = n_str * Fraction(size) ** 2
        if 2 * straddle_area <= Fraction(tol):
            lo = 2 * inside_area
            hi = 2 * (inside_area + straddle_area)
            return Interval(_down(lo.numerator / lo.denominator),
                            _up(hi.numerator / hi.denominator))
        if level >= max_level:
            raise ValueError(f"tolerance {tol} not reached within {max_level} levels")
        xs = xs[straddle]
        ys = ys[straddle]
        size *= 0.5
        xs = np.concatenate([xs, xs + size, xs, xs + size])
        ys = np.concatenate([ys, ys, ys + size, ys + size])
        level += 1


def _sq_interval(lo: np.ndarray, hi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    straddles = (lo < 0) & (hi > 0)
    a = lo * lo
    b = hi * hi
    out_hi = np.maximum(a, b)
    out_lo = np.where(straddles, 0.0, np.minimum(a, b))
    return out_lo, out_hi


def _prod_interval(alo, ahi, blo, bhi):
    p1 = alo * blo
    p2 = alo * bhi
    p3 = ahi * blo
    p4 = ahi * bhi
    return (np.minimum(np.minimum(p1, p2), np.minimum(p3, p4)),
            np.maximum(np.maximum(p1, p2), np.maximum(p3, p4)))


def monte_carlo_archimedean(ps: HeightSet, samples: int = 10**7,
                            seed: int = 20250515) -> tuple[float, float]:
    """(estimate, standard error) for the archimedean density by sampling."""
    rng = np.random.default_rng(seed)
    r = _containment_halfwidth(ps)
    rows = _boundary_rows(ps)
    hits = 0
    chunk = 10**6
    done = 0
    while done < samples:
        n = min(chunk, samples - done)
        u = rng.uniform(-r, r, n)
        v = rng.uniform(-r, r, n)
        ok = np.ones(n, dtype=bool)
        for (c11, c22, c12) in rows:
            ok &= np.abs(c11 * u * u + c22 * v * v + c12 * u * v) <= 1.0
        hits += int(ok.sum())
        done += n
    box = (2 * r) ** 2
    p = hits / samples
    est = 2 * p * box
    sigma = 2 * box * math.sqrt(max(p * (1 - p), 1e-12) / samples)
    return est, sigma


@dataclass(frozen=True)
class ConstantReport:
    """Every factor of the predicted leading constant, with honest enclosures."""

    alpha: Fraction
    omega_archimedean: Interval
    euler_value: Interval
    c: Interval
    log_exponent: int
    prime_cutoff: int
    quadrature_tolerance: float
    height_set_id: str

    def to_json_obj(self) -> dict:
        return {
            "height_set": self.height_set_id,
            "alpha": f"{self.alpha.numerator}/{self.alpha.denominator}",
            "omega_archimedean": [repr(self.omega_archimedean.lo), repr(self.omega_archimedean.hi)],
            "euler_product": [repr(self.euler_value.lo), repr(self.euler_value.hi)],
            "c": [repr(self.c.lo), repr(self.c.hi)],
            "log_exponent": self.log_exponent,
            "prime_cutoff": self.prime_cutoff,
            "quadrature_tolerance": self.quadrature_tolerance,
            "interval_precision": "endpoints are exact shortest-repr doubles; true values lie within",
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), indent=2)


def leading_constant(ps: HeightSet, prime_cutoff: int = 10**6,
                     tol: float = 1e-6) -> ConstantReport:
    """Assemble c = alpha * omega_inf * euler as an enclosing interval."""
    alpha = alpha_exact()
    omega = archimedean_density(ps, tol=tol)
    euler = euler_product(prime_cutoff)
    c = alpha * omega * euler
    return ConstantReport(
        alpha=alpha,
        omega_archimedean=omega,
        euler_value=euler,
        c=c,
        log_exponent=4,
        prime_cutoff=prime_cutoff,
        quadrature_tolerance=tol,
        height_set_id=ps.id,
    )
