"""Cox-coordinate model of the quintic del Pezzo surface over Q.

Ten coordinates (a1, a2, a3, a4, a12, a13, a14, a23, a24, a34) indexed by the
ten lines, subject to five Pluecker relations.  This module provides the
relations, the coprimality schema that makes the parameterization bijective,
the blow-down map to P^2, its inverse chart via gcds, the sign-orbit
normalization, and the integrality test for the boundary divisor A12.
"""

from __future__ import annotations

from math import gcd
from typing import NamedTuple, Optional

from .heights import ProjectivePoint

__all__ = [
    "CoxTuple",
    "COPRIMALITY_SCHEMA",
    "pluecker_residuals",
    "dependent_coordinates",
    "blow_down",
    "chart_lift",
    "is_integral",
    "canonicalize_orbit",
    "coprimality_check",
]


class CoxTuple(NamedTuple):
    """Integer Cox coordinates, serialization order (a1,a2,a3,a4,a12,a13,a14,a23,a24,a34)."""

    a1: int
    a2: int
    a3: int
    a4: int
    a12: int
    a13: int
    a14: int
    a23: int
    a24: int
    a34: int

    def all_nonzero(self) -> bool:
        """On V: off all ten lines upstairs."""
        for v in self:
            if v == 0:
                return False
        return True

    def is_canonical(self) -> bool:
        return self.a1 > 0 and self.a2 > 0 and self.a3 > 0 and self.a4 > 0 and self.a12 > 0

    def is_integral(self) -> bool:
        """Integrality off the boundary divisor A12: a12 is a unit."""
        return abs(self.a12) == 1

    def to_json_list(self) -> list[int]:
        return list(self)

    @staticmethod
    def from_json_list(values) -> "CoxTuple":
        if len(values) != 10:
            raise ValueError("CoxTuple needs exactly 10 integers")
        return CoxTuple(*(int(v) for v in values))


def _schema() -> tuple[tuple[str, str], ...]:
    single = ["a1", "a2", "a3", "a4"]
    double = ["a12", "a13", "a14", "a23", "a24", "a34"]
    idx = {name: set(name[1:]) for name in double}
    pairs: list[tuple[str, str]] = []
    for i in range(4):
        for j in range(i + 1, 4):
            pairs.append((single[i], single[j]))
    for s in single:
        for d in double:
            if s[1] not in idx[d]:
                pairs.append((s, d))
    for i in range(len(double)):
        for j in range(i + 1, len(double)):
            if idx[double[i]] & idx[double[j]]:
                pairs.append((double[i], double[j]))
    return tuple(pairs)


#: The pairs of Cox coordinates constrained to be coprime: (a_i, a_j) for
#: i != j, (a_i, a_jk) for i not in {j, k}, and (a_ij, a_ik) for j != k.
#: Pairs (a_ij, a_kl) with disjoint index sets are deliberately absent.
COPRIMALITY_SCHEMA: tuple[tuple[str, str], ...] = _schema()


def pluecker_residuals(a: CoxTuple) -> tuple[int, int, int, int, int]:
    """The five torsor equation residuals; all zero on the torsor."""
    return (
        a.a4 * a.a14 - a.a3 * a.a13 + a.a2 * a.a12,
        a.a4 * a.a24 - a.a3 * a.a23 + a.a1 * a.a12,
        a.a4 * a.a34 - a.a2 * a.a23 + a.a1 * a.a13,
        a.a3 * a.a34 - a.a2 * a.a24 + a.a1 * a.a14,
        a.a12 * a.a34 - a.a13 * a.a24 + a.a23 * a.a14,
    )


def coprimality_check(a: CoxTuple) -> bool:
    """True iff every constrained pair of coordinates is coprime."""
    vals = a._asdict()
    for left, right in COPRIMALITY_SCHEMA:
        if gcd(vals[left], vals[right]) != 1:
            return False
    return True


def dependent_coordinates(
    a1: int, a2: int, a3: int, a4: int, a12: int, a23: int, a34: int
) -> Optional[tuple[int, int, int]]:
    """Solve the torsor equations for (a13, a14, a24) given the other seven.

    Returns the unique integer solution, or None when the two congruences

        a3*a23 = a1*a12  (mod a4)      and      a4*a34 = a2*a23  (mod a1)

    fail (then the equations have no integral solution).  Requires a1, a4
    nonzero and coprime.
    """
    if a1 == 0 or a4 == 0:
        raise ValueError("dependent coordinates require a1 != 0 and a4 != 0")
    if gcd(a1, a4) != 1:
        raise ValueError("dependent coordinates require gcd(a1, a4) = 1")
    if (a3 * a23 - a1 * a12) % a4 != 0:
        return None
    if (a4 * a34 - a2 * a23) % a1 != 0:
        return None
    a13 = (a2 * a23 - a4 * a34) // a1
    a24 = (a3 * a23 - a1 * a12) // a4
    num14 = a2 * a3 * a23 - a3 * a4 * a34 - a1 * a2 * a12
    if num14 % (a1 * a4) != 0:
        raise AssertionError("a14 not integral despite congruences; gcd(a1,a4)=1 violated?")
    a14 = num14 // (a1 * a4)
    return (a13, a14, a24)


def blow_down(a: CoxTuple) -> ProjectivePoint:
    """pi(a) = (a2*a3*a23 : a1*a3*a13 : a1*a2*a12) as a canonical point of P^2.

    Requires all coordinates nonzero and zero Pluecker residuals.  When the
    coprimality schema holds the raw triple is already primitive; this is
    asserted rather than re-normalized, to surface schema bugs.
    """
    if not a.all_nonzero():
        raise ValueError(f"blow_down needs all coordinates nonzero, got {a}")
    if any(pluecker_residuals(a)):
        raise ValueError(f"blow_down needs zero Pluecker residuals, got {a}")
    y1 = a.a2 * a.a3 * a.a23
    y2 = a.a1 * a.a3 * a.a13
    y3 = a.a1 * a.a2 * a.a12
    if coprimality_check(a):
        if gcd(gcd(abs(y1), abs(y2)), abs(y3)) != 1:
            raise AssertionError(f"blow_down image of coprime tuple not primitive: {a}")
    return ProjectivePoint(y1, y2, y3)


def chart_lift(y: ProjectivePoint) -> CoxTuple:
    """The gcd chart inverting blow_down on points off the six lines.

    a1 = gcd(x2,x3), a2 = gcd(x1,x3), a3 = gcd(x1,x2), a4 = gcd(x1-x2, x1-x3),
    and the a_jk are the exact quotients x3/(a1*a2), x2/(a1*a3), x1/(a2*a3),
    (x2-x3)/(a1*a4), (x1-x3)/(a2*a4), (x1-x2)/(a3*a4).
    """
    if not y.off_lines():
        raise ValueError(f"chart lift needs a point off the six lines, got {y}")
    x1, x2, x3 = y.coords
    a1 = gcd(abs(x2), abs(x3))
    a2 = gcd(abs(x1), abs(x3))
    a3 = gcd(abs(x1), abs(x2))
    a4 = gcd(abs(x1 - x2), abs(x1 - x3))
    quotients = (
        (x3, a1 * a2),
        (x2, a1 * a3),
        (x1, a2 * a3),
        (x2 - x3, a1 * a4),
        (x1 - x3, a2 * a4),
        (x1 - x2, a3 * a4),
    )
    out = []
    for num, den in quotients:
        q, r = divmod(num, den)
        if r != 0:
            raise AssertionError(f"chart division {num}/{den} not exact at {y}")
        out.append(q)
    a12, a13, a23, a14, a24, a34 = out
    a = CoxTuple(a1, a2, a3, a4, a12, a13, a14, a23, a24, a34)
    if any(pluecker_residuals(a)):
        raise AssertionError(f"chart lift of {y} violates Pluecker relations: {a}")
    return a


def is_integral(y: ProjectivePoint) -> bool:
    """Integrality of y off the boundary A12: |y3| = gcd(y2,y3)*gcd(y1,y3).

    Equivalent to v_p(y3) <= max(v_p(y1), v_p(y2)) for every prime p, and to
    |a12| = 1 in chart_lift(y).
    """
    if not y.off_lines():
        raise ValueError(f"integrality test needs a point off the six lines, got {y}")
    return abs(y.y3) == gcd(abs(y.y2), abs(y.y3)) * gcd(abs(y.y1), abs(y.y3))


def canonicalize_orbit(a: CoxTuple) -> CoxTuple:
    """The unique tuple in the {+-1}^5 sign orbit with a1..a4 > 0 and a12 > 0.

    The torus component lam = (lam0, lam1..lam4) acts by a_i -> lam_i * a_i and
    a_jk -> lam0 * lam_j * lam_k * a_jk; on all-nonzero tuples the action is
    free, so the representative is unique.
    """
    if not a.all_nonzero():
        raise ValueError(f"orbit normalization needs all coordinates nonzero, got {a}")
    l1 = 1 if a.a1 > 0 else -1
    l2 = 1 if a.a2 > 0 else -1
    l3 = 1 if a.a3 > 0 else -1
    l4 = 1 if a.a4 > 0 else -1
    l0 = 1 if l1 * l2 * a.a12 > 0 else -1
    return CoxTuple(
        a1=l1 * a.a1,
        a2=l2 * a.a2,
        a3=l3 * a.a3,
        a4=l4 * a.a4,
        a12=l0 * l1 * l2 * a.a12,
        a13=l0 * l1 * l3 * a.a13,
        a14=l0 * l1 * l4 * a.a14,
        a23=l0 * l2 * l3 * a.a23,
        a24=l0 * l2 * l4 * a.a24,
        a34=l0 * l3 * l4 * a.a34,
    )
