"""Log-anticanonical heights on P^2 cut out by quadratic forms.

The height of a rational point y = (y1:y2:y3) is measured by a finite set of
integer quadratic forms that vanish at (0:0:1) and (1:1:1) and span the full
4-dimensional space of such forms.  On a primitive integer representative the
finite places contribute the reciprocal of

    gcd(y1, y2) * gcd(y1 - y2, y1 - y3),

so the height is max_P |P(y)| divided by that product.  The same height can be
evaluated on Cox coordinates of the degree-5 del Pezzo surface through the
lifted forms Pt(a) = P(a2*a3*a23, a1*a3*a13, a1*a2*a12) / (a3*a4), whose
division is exact whenever the Pluecker relations hold.

All arithmetic is exact (int / Fraction); no floats appear on counting paths.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import ceil, gcd
from typing import Iterable, Sequence

__all__ = [
    "QuadraticForm",
    "HeightSet",
    "ProjectivePoint",
    "P1",
    "P2",
    "P3",
    "BUILTIN_HEIGHT_SETS",
    "eval_form",
    "gcd_identity_check",
    "height_projective",
    "lift_ptilde",
    "height_cox",
    "comparison_constant",
    "p1_combination",
    "load_height_set",
]

# Monomial order used for all linear algebra on forms: Y1^2, Y2^2, Y1Y2, Y1Y3, Y2Y3.
# (Y3^2 is excluded: vanishing at (0:0:1) forces its coefficient to zero.)
_MONOMIALS = ("Y1^2", "Y2^2", "Y1*Y2", "Y1*Y3", "Y2*Y3")


@dataclass(frozen=True)
class QuadraticForm:
    """Integer quadratic form c11*Y1^2 + c22*Y2^2 + c33*Y3^2 + c12*Y1Y2 + c13*Y1Y3 + c23*Y2Y3.

    Must vanish at the blown-up points p3 = (0:0:1) and p4 = (1:1:1), i.e.
    c33 = 0 and the coefficients sum to zero.
    """

    c11: int
    c22: int
    c33: int
    c12: int
    c13: int
    c23: int

    def __post_init__(self) -> None:
        if self.c33 != 0:
            raise ValueError(f"form does not vanish at (0:0:1): c33 = {self.c33}")
        if self.c11 + self.c22 + self.c33 + self.c12 + self.c13 + self.c23 != 0:
            raise ValueError("form does not vanish at (1:1:1): coefficients must sum to 0")

    def __call__(self, y1: int, y2: int, y3: int) -> int:
        return (
            self.c11 * y1 * y1
            + self.c22 * y2 * y2
            + self.c33 * y3 * y3
            + self.c12 * y1 * y2
            + self.c13 * y1 * y3
            + self.c23 * y2 * y3
        )

    @property
    def coefficients(self) -> tuple[int, int, int, int, int, int]:
        return (self.c11, self.c22, self.c33, self.c12, self.c13, self.c23)

    def monomial_vector(self) -> tuple[int, int, int, int, int]:
        """Coefficients in the ambient 5-dim space (Y3^2 dropped)."""
        return (self.c11, self.c22, self.c12, self.c13, self.c23)


def _linear_product(l1: tuple[int, int, int], l2: tuple[int, int, int]) -> QuadraticForm:
    """Product of two linear forms given as (coeff of Y1, Y2, Y3)."""
    a1, a2, a3 = l1
    b1, b2, b3 = l2
    return QuadraticForm(
        c11=a1 * b1,
        c22=a2 * b2,
        c33=a3 * b3,
        c12=a1 * b2 + a2 * b1,
        c13=a1 * b3 + a3 * b1,
        c23=a2 * b3 + a3 * b2,
    )


_Y1 = (1, 0, 0)
_Y2 = (0, 1, 0)
_Y3 = (0, 0, 1)
_Y1mY2 = (1, -1, 0)
_Y1mY3 = (1, 0, -1)
_Y2mY3 = (0, 1, -1)

# The four reference forms; every integer form in the space is a unique
# integer combination of these (they are a Z-basis of the lattice of integer
# forms vanishing at p3, p4).
_F1 = _linear_product(_Y1, _Y2mY3)  # Y1*(Y2-Y3)
_F2 = _linear_product(_Y2, _Y1mY3)  # Y2*(Y1-Y3)
_F3 = _linear_product(_Y1, _Y1mY2)  # Y1*(Y1-Y2)
_F4 = _linear_product(_Y2, _Y1mY2)  # Y2*(Y1-Y2)


def p1_combination(form: QuadraticForm) -> tuple[int, int, int, int]:
    """Integer coordinates of `form` in the Z-basis (F1, F2, F3, F4).

    F1 = Y1(Y2-Y3), F2 = Y2(Y1-Y3), F3 = Y1(Y1-Y2), F4 = Y2(Y1-Y2).
    Exact for every valid QuadraticForm; the enumerator uses this to evaluate
    lifted forms as integer combinations of the four basis monomials.
    """
    x1 = -form.c13
    x2 = -form.c23
    x3 = form.c11
    x4 = -form.c22
    # Y1Y2 coefficient is forced by the vanishing conditions; verify anyway.
    if x1 + x2 - x3 + x4 != form.c12:
        raise AssertionError(f"inconsistent decomposition for {form}")
    return (x1, x2, x3, x4)


def _rank(vectors: Sequence[Sequence[Fraction]]) -> int:
    rows = [list(map(Fraction, v)) for v in vectors]
    ncols = len(rows[0]) if rows else 0
    rank, col = 0, 0
    while rank < len(rows) and col < ncols:
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col] / rows[rank][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank


@dataclass(frozen=True)
class HeightSet:
    """A finite spanning set of height forms, with its comparison constant kappa."""

    id: str
    forms: tuple[QuadraticForm, ...]

    def __post_init__(self) -> None:
        if not self.forms:
            raise ValueError("height set needs at least one form")
        if _rank([f.monomial_vector() for f in self.forms]) != 4:
            raise ValueError(
                "height forms must span the 4-dimensional space of quadratics "
                "vanishing at (0:0:1) and (1:1:1)"
            )

    @cached_property
    def kappa(self) -> int:
        return comparison_constant(self)

    def to_json_obj(self) -> dict:
        return {"id": self.id, "forms": [list(f.coefficients) for f in self.forms]}

    @staticmethod
    def from_json_obj(obj: dict) -> "HeightSet":
        forms = tuple(QuadraticForm(*row) for row in obj["forms"])
        ident = obj.get("id", "custom")
        if ident in BUILTIN_HEIGHT_SETS:
            builtin = BUILTIN_HEIGHT_SETS[ident]
            if forms != builtin.forms:
                raise ValueError(f"forms do not match builtin height set {ident!r}")
            return builtin
        return HeightSet(ident, forms)


P1 = HeightSet("p1", (_F1, _F2, _F3, _F4))
P2 = HeightSet(
    "p2",
    (
        _linear_product(_Y1, _Y1mY3),  # Y1*(Y1-Y3)
        _linear_product(_Y2, _Y2mY3),  # Y2*(Y2-Y3)
        _linear_product(_Y1mY2, _Y1mY2),  # (Y1-Y2)^2
        _linear_product(_Y3, _Y1mY2),  # Y3*(Y1-Y2)
    ),
)
P3 = HeightSet(
    "p3",
    P1.forms
    + P2.forms
    + (
        _linear_product(_Y1mY2, _Y1mY3),  # (Y1-Y2)(Y1-Y3)
        _linear_product(_Y1mY2, _Y2mY3),  # (Y1-Y2)(Y2-Y3)
    ),
)

BUILTIN_HEIGHT_SETS = {"p1": P1, "p2": P2, "p3": P3}


def load_height_set(spec: str) -> HeightSet:
    """Resolve 'p1' | 'p2' | 'p3' | 'file:<path>' to a HeightSet."""
    if spec in BUILTIN_HEIGHT_SETS:
        return BUILTIN_HEIGHT_SETS[spec]
    if spec.startswith("file:"):
        with open(spec[5:], encoding="utf-8") as fh:
            return HeightSet.from_json_obj(json.load(fh))
    raise ValueError(f"unknown height set {spec!r} (expected p1|p2|p3|file:<path>)")


@dataclass(frozen=True)
class ProjectivePoint:
    """Primitive, sign-canonical integer representative of a point of P^2(Q).

    Canonical form: gcd(y1,y2,y3) = 1 and the first nonzero coordinate is
    positive.  The constructor normalizes any nonzero integer triple.
    """

    y1: int
    y2: int
    y3: int

    def __post_init__(self) -> None:
        g = gcd(gcd(abs(self.y1), abs(self.y2)), abs(self.y3))
        if g == 0:
            raise ValueError("(0, 0, 0) is not a projective point")
        lead = next(c for c in (self.y1, self.y2, self.y3) if c != 0)
        if lead < 0:
            g = -g
        if g != 1:
            object.__setattr__(self, "y1", self.y1 // g)
            object.__setattr__(self, "y2", self.y2 // g)
            object.__setattr__(self, "y3", self.y3 // g)

    @property
    def coords(self) -> tuple[int, int, int]:
        return (self.y1, self.y2, self.y3)

    def is_blown_up_point(self) -> bool:
        """True at p1 = (1:0:0), p2 = (0:1:0), p3 = (0:0:1) or p4 = (1:1:1)."""
        return self.coords in {(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)}

    def off_lines(self) -> bool:
        """True iff the point avoids the images of all ten lines."""
        y1, y2, y3 = self.coords
        return y1 * y2 * y3 * (y1 - y2) * (y1 - y3) * (y2 - y3) != 0

    def __str__(self) -> str:
        return f"({self.y1}:{self.y2}:{self.y3})"


def eval_form(form: QuadraticForm, y: ProjectivePoint) -> int:
    """P(y1, y2, y3), exactly."""
    return form(y.y1, y.y2, y.y3)


def _gcd_pair(y: ProjectivePoint) -> tuple[int, int]:
    g1 = gcd(abs(y.y1), abs(y.y2))
    g2 = gcd(abs(y.y1 - y.y2), abs(y.y1 - y.y3))
    return g1, g2


def gcd_identity_check(ps: HeightSet, y: ProjectivePoint) -> bool:
    """Whether gcd_P |P(y)| = gcd(y1,y2) * gcd(y1-y2, y1-y3) at this point."""
    if y.is_blown_up_point():
        raise ValueError(f"gcd identity is only defined off the blown-up points, got {y}")
    g = 0
    for form in ps.forms:
        g = gcd(g, abs(eval_form(form, y)))
    g1, g2 = _gcd_pair(y)
    return g == g1 * g2


def height_projective(ps: HeightSet, y: ProjectivePoint) -> Fraction:
    """The log-anticanonical height of y: max_P |P(y)| / (gcd(y1,y2)*gcd(y1-y2,y1-y3)).

    A positive integer for every height set satisfying the gcd identity
    (returned as a Fraction to keep the general contract exact).
    """
    if y.is_blown_up_point():
        raise ValueError(f"height is not defined at the blown-up point {y}")
    m = max(abs(eval_form(form, y)) for form in ps.forms)
    if m == 0:
        raise ValueError(f"all height forms vanish at {y}; spanning invariant violated")
    g1, g2 = _gcd_pair(y)
    return Fraction(m, g1 * g2)


def lift_ptilde(form: QuadraticForm, a) -> int:
    """Pt(a) = P(a2*a3*a23, a1*a3*a13, a1*a2*a12) / (a3*a4), exact on the torsor.

    `a` is a CoxTuple (any object with fields a1..a34).  A non-exact division
    means the Pluecker relations fail for `a`.
    """
    den = a.a3 * a.a4
    if den == 0:
        raise ValueError("lift requires a3*a4 != 0")
    val = form(a.a2 * a.a3 * a.a23, a.a1 * a.a3 * a.a13, a.a1 * a.a2 * a.a12)
    q, r = divmod(val, den)
    if r != 0:
        raise ValueError(f"P(..)/(a3*a4) not exact for {a}; Pluecker relations violated")
    return q


def height_cox(ps: HeightSet, a) -> int:
    """max_P |Pt(a)| on a torsor point; equals height_projective of its image."""
    m = max(abs(lift_ptilde(form, a)) for form in ps.forms)
    if m == 0:
        raise ValueError(f"all lifted forms vanish on {a}")
    return m


def _solve_in_span(
    basis: Sequence[tuple[int, ...]], target: tuple[int, ...]
) -> list[Fraction] | None:
    """One exact solution x of sum_i x_i * basis_i = target, or None."""
    ncols = len(basis)
    rows = [[Fraction(basis[j][i]) for j in range(ncols)] + [Fraction(target[i])]
            for i in range(len(target))]
    piv_cols: list[int] = []
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        rows[rank] = [v / rows[rank][col] for v in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        piv_cols.append(col)
        rank += 1
    for r in range(rank, len(rows)):
        if rows[r][-1] != 0:
            return None
    x = [Fraction(0)] * ncols
    for r, col in enumerate(piv_cols):
        x[col] = rows[r][-1]
    return x


def swap_symmetric(ps: HeightSet) -> bool:
    """Whether the height is invariant under exchanging Y1 and Y2.

    True iff the form set is stable (up to sign) under the coefficient swap
    (c11, c22, c12, c13, c23) -> (c22, c11, c12, c23, c13).  All built-in
    sets are symmetric; the enumerator halves its search space when this
    holds (the exchange lifts to a height-preserving, fixed-point-free
    involution of canonical torsor tuples).
    """

    def norm(vec: tuple[int, ...]) -> tuple[int, ...]:
        lead = next((v for v in vec if v != 0), 1)
        return tuple(-v for v in vec) if lead < 0 else vec

    forms = {norm(f.monomial_vector()) for f in ps.forms}
    swapped = {norm((f.c22, f.c11, f.c12, f.c23, f.c13)) for f in ps.forms}
    return forms == swapped


def comparison_constant(ps: HeightSet) -> int:
    """Smallest integer kappa from coefficient sums with
    max_{P in P1} |P(y)| <= kappa * max_{P in ps} |P(y)| for all y.

    Each reference form is written as an exact rational combination of
    ps.forms; kappa is the ceiling of the largest coefficient-abs-sum.  Loose
    but provably valid, which is all the search boxes need.
    """
    basis = [f.monomial_vector() for f in ps.forms]
    worst = Fraction(0)
    for ref in P1.forms:
        x = _solve_in_span(basis, ref.monomial_vector())
        if x is None:
            raise ValueError("height set does not span the form space (rank < 4)")
        worst = max(worst, sum(abs(c) for c in x))
    return max(1, ceil(worst))
